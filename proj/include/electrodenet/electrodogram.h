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

#ifndef ELECTRODENET_ELECTRODOGRAM_H_
#define ELECTRODENET_ELECTRODOGRAM_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "electrodenet/dsp.h"

namespace electrodenet {

// Normalized stimulation levels for one frame. selected_count == N_CS,
// the number of nonzero amplitudes.
struct StimulusFrame {
  std::vector<double> amplitudes;
  int selected_count = 0;
};

struct Electrodogram {
  int num_channels = 0;
  int num_maxima = 0;
  int hop = 0;
  int sample_rate = kSampleRate;
  std::vector<StimulusFrame> frames;
  // Post-selection, pre-mapping envelopes aligned with frames. Empty for
  // electrodograms read back from disk.
  std::vector<ChannelEnvelopeFrame> envelopes;

  size_t frame_count() const { return frames.size(); }
  bool has_envelopes() const { return !envelopes.empty(); }
  // Checks the StimulusFrame invariants against num_maxima.
  void Validate() const;
};

int CountNonzero(const std::vector<double>& values);

// "ELGR" v1: u32 version, M, N, hop, sample_rate, u64 frame count, then
// dense little-endian float32 amplitudes, frame-major.
inline constexpr uint32_t kElectrodogramVersion = 1;
std::string EncodeElectrodogram(const Electrodogram& elgr);
Electrodogram DecodeElectrodogram(std::string_view bytes);
void WriteElectrodogram(const std::string& path, const Electrodogram& elgr);
Electrodogram ReadElectrodogram(const std::string& path);

// "frame,channel,amplitude", one row per nonzero stimulus. Channels are
// 1-based like electrode numbers.
std::string ElectrodogramCsv(const Electrodogram& elgr);

}  // namespace electrodenet

#endif  // ELECTRODENET_ELECTRODOGRAM_H_
