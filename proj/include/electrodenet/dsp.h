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

// FFT filterbank front end of the ACE strategy: framing, Hann-windowed
// K-point analysis into L = K/2 + 1 magnitude bins, and power-sum
// combination of those bins into M channel envelopes.

#ifndef ELECTRODENET_DSP_H_
#define ELECTRODENET_DSP_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "electrodenet/fft.h"

namespace electrodenet {

inline constexpr int kSampleRate = 16000;

// Contiguous FFT-bin ranges that make up each electrode channel.
// Channel m covers bins [FirstBin(m), LastBin(m)].
struct ChannelAllocation {
  int start_bin = 2;
  std::vector<int> widths;
  std::vector<double> gains;

  // 22 channels over bins 2..64: nine single-bin channels from 250 Hz,
  // then widths growing towards the top of the spectrum. Unit gains.
  static ChannelAllocation Default();

  int num_channels() const { return static_cast<int>(widths.size()); }
  int FirstBin(int channel) const;
  int LastBin(int channel) const;

  // Throws InvalidArgument unless widths/gains are positive, sized alike
  // and the bins fit in [0, num_bins).
  void Validate(int num_bins) const;
};

// Text form: optional "start_bin <n>" line, then one "<width> <gain>"
// line per channel. '#' starts a comment.
ChannelAllocation ParseAllocation(std::istream& in);
ChannelAllocation LoadAllocation(const std::string& path);
std::string FormatAllocation(const ChannelAllocation& allocation);

struct StrategyConfig {
  int sample_rate = kSampleRate;
  int frame_len = 128;  // K
  int num_maxima = 12;  // N
  int hop = 16;
  ChannelAllocation allocation = ChannelAllocation::Default();

  int num_bins() const { return frame_len / 2 + 1; }  // L
  int num_channels() const { return allocation.num_channels(); }  // M
  double bin_spacing_hz() const { return static_cast<double>(sample_rate) / frame_len; }

  void Validate() const;
};

struct SpectralFrame {
  std::vector<double> magnitudes;
};

struct ChannelEnvelopeFrame {
  std::vector<double> envelopes;
};

// Periodic Hann window 0.5 * (1 - cos(2 pi n / K)).
std::vector<double> HannWindow(int length);

// ceil(len / hop) frames of K samples starting every hop samples; the
// tail is zero padded.
std::vector<std::vector<double>> FrameSignal(std::span<const double> signal,
                                             const StrategyConfig& cfg);
size_t FrameCount(size_t signal_length, int hop);

// Holds the window and FFT plan for repeated analysis.
class FrameAnalyzer {
 public:
  explicit FrameAnalyzer(const StrategyConfig& cfg);

  SpectralFrame Analyze(std::span<const double> frame) const;

 private:
  int frame_len_;
  std::vector<double> window_;
  Fft fft_;
};

SpectralFrame AnalyzeFrame(std::span<const double> frame, const StrategyConfig& cfg);

// envelope[m] = gain[m] * sqrt(sum of squared magnitudes over channel m).
ChannelEnvelopeFrame DetectEnvelopes(const SpectralFrame& spectrum, const StrategyConfig& cfg);

struct EnvelopeStream {
  std::vector<SpectralFrame> spectra;
  std::vector<ChannelEnvelopeFrame> envelopes;

  size_t size() const { return spectra.size(); }
};

EnvelopeStream EncodeEnvelopeStream(std::span<const double> signal, const StrategyConfig& cfg);

// Label frequency of each channel: geometric mean of its first and last
// bin centre frequencies.
std::vector<double> ChannelLabelFrequencies(const ChannelAllocation& allocation,
                                            double bin_spacing_hz);

}  // namespace electrodenet

#endif  // ELECTRODENET_DSP_H_
