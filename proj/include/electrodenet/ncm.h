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

// Normalized covariance metric: per-band envelope correlation between clean
// and processed speech, mapped through an apparent SNR to a transmission
// index and averaged with band-importance weights.

#ifndef ELECTRODENET_NCM_H_
#define ELECTRODENET_NCM_H_

#include <span>
#include <vector>

namespace electrodenet {

struct NcmConfig {
  int num_bands = 20;
  double low_hz = 150.0;
  double high_hz = 7000.0;
  double envelope_cutoff_hz = 32.0;
  int envelope_rate = 100;
  double snr_floor_db = -15.0;
  double snr_ceiling_db = 15.0;
  // Minimum input duration, matching one STOI analysis segment.
  double min_duration_s = 0.384;
  // Band-importance function: centre frequencies (Hz, ascending) and
  // importances, interpolated in log frequency at each band centre.
  std::vector<double> importance_freqs = {150,  250,  350,  450,  570,  700,  840,
                                          1000, 1170, 1370, 1600, 1850, 2150, 2500,
                                          2900, 3400, 4000, 4800, 5800, 7000, 8500};
  std::vector<double> importance_values = {0.0103, 0.0261, 0.0419, 0.0577, 0.0577, 0.0577, 0.0577,
                                           0.0577, 0.0577, 0.0577, 0.0577, 0.0577, 0.0577, 0.0577,
                                           0.0577, 0.0577, 0.0577, 0.0460, 0.0343, 0.0226, 0.0110};

  void Validate() const;
};

struct NcmBand {
  double low_hz;
  double high_hz;
  double centre_hz;
  double weight;  // normalized so all weights sum to 1
};

// Mel-spaced band edges and their importance weights.
std::vector<NcmBand> NcmBands(const NcmConfig& cfg);

// Envelope of one band at cfg.envelope_rate: bandpass, full-wave rectify,
// lowpass, decimate.
std::vector<double> NcmBandEnvelope(std::span<const double> x, const NcmBand& band,
                                    int sample_rate, const NcmConfig& cfg);

// Processed is truncated or zero padded to the clean length. Result is in
// [0, 1]. Throws TooShortError below cfg.min_duration_s.
double Ncm(std::span<const double> clean, std::span<const double> processed,
           int sample_rate = 16000, const NcmConfig& cfg = {});

}  // namespace electrodenet

#endif  // ELECTRODENET_NCM_H_
