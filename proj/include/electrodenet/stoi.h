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

// Short-time objective intelligibility between a clean reference and a
// processed signal. Constants follow the standard published measure.

#ifndef ELECTRODENET_STOI_H_
#define ELECTRODENET_STOI_H_

#include <span>
#include <vector>

namespace electrodenet {

struct StoiConfig {
  int internal_rate = 10000;
  int frame_len = 256;
  int fft_size = 512;
  int num_bands = 15;
  double min_freq = 150.0;
  int segment_frames = 30;
  double beta_db = -15.0;
  double dynamic_range_db = 40.0;
};

// Processed is truncated or zero padded to the clean length. Throws
// TooShortError when fewer than segment_frames frames survive silence
// removal, SampleRateError for rates other than 16 kHz.
double Stoi(std::span<const double> clean, std::span<const double> processed,
            int sample_rate = 16000, const StoiConfig& cfg = {});

// Rows are one-third-octave bands, columns FFT bins (0 .. fft_size / 2).
std::vector<std::vector<double>> ThirdOctaveBands(const StoiConfig& cfg);

}  // namespace electrodenet

#endif  // ELECTRODENET_STOI_H_
