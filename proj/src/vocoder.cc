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

#include "electrodenet/vocoder.h"

#include <cmath>
#include <numbers>

#include "electrodenet/errors.h"

namespace electrodenet {

std::vector<double> CarrierDefaults(const ChannelAllocation& allocation, double bin_spacing_hz) {
  std::vector<double> carriers = ChannelLabelFrequencies(allocation, bin_spacing_hz);
  for (double& f : carriers) f = std::round(f * 10.0) / 10.0;
  return carriers;
}

VocoderConfig VocoderConfig::ForStrategy(const StrategyConfig& cfg) {
  VocoderConfig v;
  v.carrier_freqs = CarrierDefaults(cfg.allocation, cfg.bin_spacing_hz());
  v.frame_center_offset = cfg.frame_len / 2;
  return v;
}

void VocoderConfig::Validate(const StrategyConfig& cfg) const {
  if (static_cast<int>(carrier_freqs.size()) != cfg.num_channels()) {
    throw InvalidArgument("vocoder has " + std::to_string(carrier_freqs.size()) +
                          " carriers for " + std::to_string(cfg.num_channels()) + " channels");
  }
  const double spacing = cfg.bin_spacing_hz();
  for (size_t m = 0; m < carrier_freqs.size(); ++m) {
    const double f = carrier_freqs[m];
    if (m > 0 && !(f > carrier_freqs[m - 1])) {
      throw InvalidArgument("vocoder carriers must be strictly increasing");
    }
    if (!(f > 0.0 && f < cfg.sample_rate / 2.0)) {
      throw InvalidArgument("vocoder carrier outside (0, Nyquist)");
    }
    const double low = cfg.allocation.FirstBin(static_cast<int>(m)) * spacing;
    const double high = cfg.allocation.LastBin(static_cast<int>(m)) * spacing;
    // 0.05 Hz slack for the 0.1 Hz rounding of the defaults.
    if (f < low - 0.05 || f > high + 0.05) {
      throw InvalidArgument("vocoder carrier " + std::to_string(f) + " Hz outside channel " +
                            std::to_string(m + 1) + " band");
    }
  }
  if (rms_target <= 0.0 && normalization == OutputNormalization::kRmsTarget) {
    throw InvalidArgument("RMS target must be positive");
  }
}

double Rms(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return std::sqrt(sum / static_cast<double>(x.size()));
}

std::vector<double> Vocode(const Electrodogram& elgr, const VocoderConfig& cfg) {
  const int channels = elgr.num_channels;
  if (static_cast<int>(cfg.carrier_freqs.size()) != channels) {
    throw InvalidArgument("vocoder has " + std::to_string(cfg.carrier_freqs.size()) +
                          " carriers for an electrodogram with " + std::to_string(channels) +
                          " channels");
  }
  const bool pre_lgf = cfg.envelope_source == EnvelopeSource::kPreLgf;
  if (pre_lgf && !elgr.has_envelopes() && elgr.frame_count() > 0) {
    throw InvalidArgument(
        "pre-LGF envelopes are not stored in this electrodogram; vocode from audio or use "
        "post-LGF amplitudes");
  }
  auto level = [&](size_t frame, int m) {
    return pre_lgf ? elgr.envelopes[frame].envelopes[m] : elgr.frames[frame].amplitudes[m];
  };

  const size_t frames = elgr.frame_count();
  const size_t hop = static_cast<size_t>(elgr.hop);
  std::vector<double> out(frames * hop, 0.0);
  if (frames == 0) return out;

  const double fs = elgr.sample_rate;
  const double offset = cfg.frame_center_offset;
  std::vector<double> envelope(out.size());
  for (int m = 0; m < channels; ++m) {
    bool active = false;
    size_t frame = 0;
    for (size_t n = 0; n < out.size(); ++n) {
      const double pos = (static_cast<double>(n) - offset) / static_cast<double>(hop);
      double a;
      if (pos <= 0.0) {
        a = level(0, m);
      } else if (pos >= static_cast<double>(frames - 1)) {
        a = level(frames - 1, m);
      } else {
        frame = static_cast<size_t>(pos);
        const double frac = pos - static_cast<double>(frame);
        a = level(frame, m) + frac * (level(frame + 1, m) - level(frame, m));
      }
      envelope[n] = a;
      active |= a != 0.0;
    }
    if (!active) continue;
    const double omega = 2.0 * std::numbers::pi * cfg.carrier_freqs[m] / fs;
    for (size_t n = 0; n < out.size(); ++n) {
      if (envelope[n] != 0.0) out[n] += envelope[n] * std::sin(omega * static_cast<double>(n));
    }
  }

  if (cfg.normalization == OutputNormalization::kRmsTarget) {
    const double rms = Rms(out);
    if (rms > 0.0) {
      const double gain = cfg.rms_target / rms;
      for (double& v : out) v *= gain;
    }
  }
  return out;
}

}  // namespace electrodenet
