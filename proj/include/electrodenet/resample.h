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

// Rational-rate resampling with a Kaiser-windowed sinc polyphase filter.

#ifndef ELECTRODENET_RESAMPLE_H_
#define ELECTRODENET_RESAMPLE_H_

#include <span>
#include <vector>

namespace electrodenet {

class Resampler {
 public:
  // Converts by up / down (reduced by their gcd). The lowpass cuts off at
  // the lower of the two Nyquist rates, with 2 * taps_per_phase * up + 1
  // taps at the upsampled rate.
  Resampler(int up, int down, int taps_per_phase = 64, double kaiser_beta = 8.0);

  int up() const { return up_; }
  int down() const { return down_; }
  const std::vector<double>& taps() const { return taps_; }

  // Zero-phase: output sample m sits at input time m * down / up. Output
  // length is ceil(n * up / down).
  std::vector<double> Process(std::span<const double> x) const;

 private:
  int up_;
  int down_;
  std::vector<double> taps_;
};

std::vector<double> Resample(std::span<const double> x, int from_rate, int to_rate);

}  // namespace electrodenet

#endif  // ELECTRODENET_RESAMPLE_H_
