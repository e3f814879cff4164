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

#include "electrodenet/fft.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace electrodenet {
namespace {

std::vector<std::complex<double>> NaiveDft(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (size_t t = 0; t < n; ++t) {
      acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * t % n) / n);
    }
    out[k] = acc;
  }
  return out;
}

TEST(Fft, MatchesNaiveDftOnRandomFrames) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Fft fft(128);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(128);
    for (double& v : x) v = u(rng);
    const auto fast = fft.ForwardReal(x);
    const auto slow = NaiveDft(x);
    for (size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(fast[k] - slow[k]));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Fft, InverseRoundTrip) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const Fft fft(64);
  std::vector<std::complex<double>> x(64);
  for (auto& v : x) v = {g(rng), g(rng)};
  const auto back = fft.Inverse(fft.Forward(x));
  for (size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(std::abs(back[i] / 64.0 - x[i]), 0.0, 1e-12);
}

TEST(Fft, RejectsNonPowerOfTwo) {
  EXPECT_TRUE(IsPowerOfTwo(128));
  EXPECT_FALSE(IsPowerOfTwo(96));
  EXPECT_ANY_THROW(Fft(96));
}

}  // namespace
}  // namespace electrodenet
