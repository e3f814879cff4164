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

#include "electrodenet/resample.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "electrodenet/errors.h"

namespace electrodenet {

Resampler::Resampler(int up, int down, int taps_per_phase, double kaiser_beta) {
  if (up < 1 || down < 1 || taps_per_phase < 1) {
    throw InvalidArgument("resampler factors must be positive");
  }
  const int g = std::gcd(up, down);
  up_ = up / g;
  down_ = down / g;
  const int half = taps_per_phase * up_;
  const double cutoff = 0.5 / std::max(up_, down_);  // cycles per upsampled sample
  const double i0_beta = std::cyl_bessel_i(0.0, kaiser_beta);
  taps_.resize(2 * half + 1);
  double sum = 0.0;
  for (int k = -half; k <= half; ++k) {
    const double t = 2.0 * cutoff * k;
    const double sinc = k == 0 ? 1.0 : std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
    const double r = static_cast<double>(k) / half;
    const double window = std::cyl_bessel_i(0.0, kaiser_beta * std::sqrt(1.0 - r * r)) / i0_beta;
    taps_[k + half] = sinc * window;
    sum += taps_[k + half];
  }
  // Unit DC gain after zero stuffing.
  for (double& h : taps_) h *= up_ / sum;
}

std::vector<double> Resampler::Process(std::span<const double> x) const {
  const long n = static_cast<long>(x.size());
  const long out_len = (n * up_ + down_ - 1) / down_;
  const long half = static_cast<long>(taps_.size() / 2);
  const long ntaps = static_cast<long>(taps_.size());
  std::vector<double> y(out_len, 0.0);
  for (long m = 0; m < out_len; ++m) {
    // Upsampled-domain position of output m, shifted by the filter delay.
    const long t = m * down_ + half;
    long first = t - ntaps + 1;
    first = first <= 0 ? 0 : (first + up_ - 1) / up_;
    const long last = std::min(n - 1, t / up_);
    double acc = 0.0;
    for (long i = first; i <= last; ++i) acc += x[i] * taps_[t - i * up_];
    y[m] = acc;
  }
  return y;
}

std::vector<double> Resample(std::span<const double> x, int from_rate, int to_rate) {
  if (from_rate == to_rate) return std::vector<double>(x.begin(), x.end());
  return Resampler(to_rate, from_rate).Process(x);
}

}  // namespace electrodenet
