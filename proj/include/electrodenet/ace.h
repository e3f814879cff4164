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

// Back half of ACE: N-of-M maxima selection and loudness-growth mapping.

#ifndef ELECTRODENET_ACE_H_
#define ELECTRODENET_ACE_H_

#include <span>
#include <vector>

#include "electrodenet/dsp.h"
#include "electrodenet/electrodogram.h"

namespace electrodenet {

// Envelopes at or below base_level map to 0, at or above sat_level to 1.
// Units are those of DetectEnvelopes output.
struct MappingConfig {
  double base_level = 4.0 / 256.0;
  double sat_level = 1.0;
  double rho = 416.2064;

  static MappingConfig FromSaturation(double sat_level);
  void Validate() const;
};

// 95th percentile (by default) of the per-frame envelope maxima, used to
// set sat_level for a corpus.
double CalibrateSaturationLevel(std::span<const ChannelEnvelopeFrame> frames,
                                double percentile = 95.0);

// Keeps the n largest envelopes; ties go to the lower channel index.
ChannelEnvelopeFrame SelectMaxima(const ChannelEnvelopeFrame& envelopes, int n);

// Indices (ascending) chosen by SelectMaxima, including zero-valued ones.
std::vector<int> MaximaIndices(std::span<const double> values, int n);

double LoudnessGrowth(double envelope, const MappingConfig& map);
StimulusFrame ApplyLgf(const ChannelEnvelopeFrame& selected, const MappingConfig& map);

// Full ACE chain. The returned electrodogram also carries the selected
// pre-mapping envelopes for the vocoder.
Electrodogram AceEncode(std::span<const double> signal, const StrategyConfig& cfg,
                        const MappingConfig& map);

// Builds an electrodogram from already-selected envelope frames.
Electrodogram MapSelectedFrames(std::vector<ChannelEnvelopeFrame> selected,
                                const StrategyConfig& cfg, int num_maxima,
                                const MappingConfig& map);

}  // namespace electrodenet

#endif  // ELECTRODENET_ACE_H_
