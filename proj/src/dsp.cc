// Copyright 2026 The ElectrodeNet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "electrodenet/dsp.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "electrodenet/errors.h"

namespace electrodenet {

ChannelAllocation ChannelAllocation::Default() {
  ChannelAllocation a;
  a.start_bin = 2;
  a.widths = {1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 5, 5, 6, 7, 8};
  a.gains.assign(a.widths.size(), 1.0);
  return a;
}

int ChannelAllocation::FirstBin(int channel) const {
  return start_bin + std::accumulate(widths.begin(), widths.begin() + channel, 0);
}

int ChannelAllocation::LastBin(int channel) const {
  return FirstBin(channel) + widths[channel] - 1;
}

void ChannelAllocation::Validate(int num_bins) const {
  if (widths.empty()) throw InvalidArgument("channel allocation has no channels");
  if (widths.size() != gains.size()) {
    throw InvalidArgument("channel allocation: widths and gains differ in length");
  }
  if (start_bin < 0) throw InvalidArgument("channel allocation: negative start bin");
  long total = start_bin;
  for (size_t m = 0; m < widths.size(); ++m) {
    if (widths[m] <= 0) throw InvalidArgument("channel allocation: non-positive width");
    if (!(gains[m] > 0.0)) throw InvalidArgument("channel allocation: non-positive gain");
    total += widths[m];
  }
  if (total > num_bins) {
    throw InvalidArgument("channel allocation covers bins up to " + std::to_string(total - 1) +
                          " but only " + std::to_string(num_bins) + " bins exist");
  }
}

ChannelAllocation ParseAllocation(std::istream& in) {
  ChannelAllocation a;
  a.widths.clear();
  a.gains.clear();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "start_bin") {
      if (!(ss >> a.start_bin)) {
        throw FormatError("allocation line " + std::to_string(line_no) + ": bad start_bin");
      }
      continue;
    }
    int width = 0;
    double gain = 0.0;
    try {
      width = std::stoi(first);
    } catch (const std::exception&) {
      throw FormatError("allocation line " + std::to_string(line_no) + ": expected a width");
    }
    if (!(ss >> gain)) {
      throw FormatError("allocation line " + std::to_string(line_no) + ": expected a gain");
    }
    a.widths.push_back(width);
    a.gains.push_back(gain);
  }
  return a;
}

ChannelAllocation LoadAllocation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open allocation file '" + path + "'");
  return ParseAllocation(in);
}

std::string FormatAllocation(const ChannelAllocation& allocation) {
  std::ostringstream out;
  out.precision(17);
  out << "start_bin " << allocation.start_bin << "\n";
  for (int m = 0; m < allocation.num_channels(); ++m) {
    out << allocation.widths[m] << " " << allocation.gains[m] << "\n";
  }
  return out.str();
}

void StrategyConfig::Validate() const {
  if (sample_rate != kSampleRate) {
    throw SampleRateError("strategy sample rate " + std::to_string(sample_rate) +
                          " Hz, expected 16000 Hz");
  }
  if (frame_len < 2 || !IsPowerOfTwo(frame_len)) {
    throw InvalidArgument("frame length must be a power of two");
  }
  if (hop < 1 || hop > frame_len) throw InvalidArgument("hop must be in [1, frame_len]");
  allocation.Validate(num_bins());
  if (num_maxima < 1 || num_maxima > num_channels()) {
    throw InvalidArgument("num_maxima must be in [1, M]");
  }
}

std::vector<double> HannWindow(int length) {
  std::vector<double> w(length);
  for (int n = 0; n < length; ++n) {
    w[n] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / length));
  }
  return w;
}

size_t FrameCount(size_t signal_length, int hop) {
  return (signal_length + hop - 1) / hop;
}

std::vector<std::vector<double>> FrameSignal(std::span<const double> signal,
                                             const StrategyConfig& cfg) {
  const size_t count = FrameCount(signal.size(), cfg.hop);
  std::vector<std::vector<double>> frames(count, std::vector<double>(cfg.frame_len, 0.0));
  for (size_t f = 0; f < count; ++f) {
    const size_t begin = f * cfg.hop;
    const size_t end = std::min(signal.size(), begin + cfg.frame_len);
    std::copy(signal.begin() + begin, signal.begin() + end, frames[f].begin());
  }
  return frames;
}

FrameAnalyzer::FrameAnalyzer(const StrategyConfig& cfg)
    : frame_len_(cfg.frame_len), window_(HannWindow(cfg.frame_len)), fft_(cfg.frame_len) {}

SpectralFrame FrameAnalyzer::Analyze(std::span<const double> frame) const {
  if (static_cast<int>(frame.size()) != frame_len_) {
    throw InvalidArgument("analysis frame has " + std::to_string(frame.size()) +
                          " samples, expected " + std::to_string(frame_len_));
  }
  std::vector<double> windowed(frame_len_);
  for (int n = 0; n < frame_len_; ++n) windowed[n] = frame[n] * window_[n];
  auto spectrum = fft_.ForwardReal(windowed);
  SpectralFrame out;
  out.magnitudes.resize(frame_len_ / 2 + 1);
  for (int k = 0; k <= frame_len_ / 2; ++k) out.magnitudes[k] = std::abs(spectrum[k]);
  return out;
}

SpectralFrame AnalyzeFrame(std::span<const double> frame, const StrategyConfig& cfg) {
  return FrameAnalyzer(cfg).Analyze(frame);
}

ChannelEnvelopeFrame DetectEnvelopes(const SpectralFrame& spectrum, const StrategyConfig& cfg) {
  const ChannelAllocation& a = cfg.allocation;
  if (static_cast<int>(spectrum.magnitudes.size()) != cfg.num_bins()) {
    throw InvalidArgument("spectral frame length does not match L");
  }
  ChannelEnvelopeFrame out;
  out.envelopes.resize(a.num_channels());
  int bin = a.start_bin;
  for (int m = 0; m < a.num_channels(); ++m) {
    double power = 0.0;
    for (int j = 0; j < a.widths[m]; ++j, ++bin) {
      power += spectrum.magnitudes[bin] * spectrum.magnitudes[bin];
    }
    out.envelopes[m] = a.gains[m] * std::sqrt(power);
  }
  return out;
}

EnvelopeStream EncodeEnvelopeStream(std::span<const double> signal, const StrategyConfig& cfg) {
  cfg.Validate();
  FrameAnalyzer analyzer(cfg);
  EnvelopeStream stream;
  const size_t count = FrameCount(signal.size(), cfg.hop);
  stream.spectra.reserve(count);
  stream.envelopes.reserve(count);
  std::vector<double> frame(cfg.frame_len);
  for (size_t f = 0; f < count; ++f) {
    const size_t begin = f * cfg.hop;
    const size_t end = std::min(signal.size(), begin + cfg.frame_len);
    std::fill(frame.begin(), frame.end(), 0.0);
    std::copy(signal.begin() + begin, signal.begin() + end, frame.begin());
    stream.spectra.push_back(analyzer.Analyze(frame));
    stream.envelopes.push_back(DetectEnvelopes(stream.spectra.back(), cfg));
  }
  return stream;
}

std::vector<double> ChannelLabelFrequencies(const ChannelAllocation& allocation,
                                            double bin_spacing_hz) {
  std::vector<double> freqs(allocation.num_channels());
  for (int m = 0; m < allocation.num_channels(); ++m) {
    const double low = allocation.FirstBin(m) * bin_spacing_hz;
    const double high = allocation.LastBin(m) * bin_spacing_hz;
    freqs[m] = std::sqrt(low * high);
  }
  return freqs;
}

}  // namespace electrodenet
