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

// Tone vocoder: each channel's frame-rate envelope, linearly interpolated
// between analysis-frame centres, modulates a continuous-phase sine.

#ifndef ELECTRODENET_VOCODER_H_
#define ELECTRODENET_VOCODER_H_

#include <vector>

#include "electrodenet/dsp.h"
#include "electrodenet/electrodogram.h"

namespace electrodenet {

enum class EnvelopeSource { kPreLgf, kPostLgf };
enum class OutputNormalization { kRmsTarget, kNone };

struct VocoderConfig {
  std::vector<double> carrier_freqs;
  EnvelopeSource envelope_source = EnvelopeSource::kPreLgf;
  OutputNormalization normalization = OutputNormalization::kRmsTarget;
  double rms_target = 0.05;
  // Frame i is centred at i * hop + frame_center_offset output samples;
  // K / 2 keeps the output time-aligned with the analysed input.
  int frame_center_offset = 64;

  static VocoderConfig ForStrategy(const StrategyConfig& cfg);
  // Carriers strictly increasing, below Nyquist and inside their channel's
  // bin range.
  void Validate(const StrategyConfig& cfg) const;
};

// Geometric mean of each channel's first and last bin centre frequencies,
// rounded to 0.1 Hz.
std::vector<double> CarrierDefaults(const ChannelAllocation& allocation,
                                    double bin_spacing_hz = 125.0);

// Output has frame_count * hop samples. Throws InvalidArgument on a channel
// count mismatch, or when pre-LGF envelopes are requested but absent.
std::vector<double> Vocode(const Electrodogram& elgr, const VocoderConfig& cfg);

double Rms(const std::vector<double>& x);

}  // namespace electrodenet

#endif  // ELECTRODENET_VOCODER_H_
