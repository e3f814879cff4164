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

#include "electrodenet/ace.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "electrodenet/errors.h"
#include "gtest/gtest.h"

namespace electrodenet {
namespace {

ChannelEnvelopeFrame Frame(std::vector<double> v) { return ChannelEnvelopeFrame{std::move(v)}; }

// Independent selection oracle: stable sort of indices by descending value.
std::vector<int> SortOracle(const std::vector<double>& v, int n) {
  std::vector<int> idx(v.size());
  for (size_t i = 0; i < v.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

TEST(SelectMaxima, KeepsTheLargestExactly) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> v(22);
  for (double& x : v) x = u(rng);
  const auto out = SelectMaxima(Frame(v), 8);
  std::vector<double> sorted = v;
  std::sort(sorted.rbegin(), sorted.rend());
  int nonzero = 0;
  for (int m = 0; m < 22; ++m) {
    if (out.envelopes[m] != 0.0) {
      ++nonzero;
      EXPECT_EQ(out.envelopes[m], v[m]);
      EXPECT_GE(v[m], sorted[7]);
    }
  }
  EXPECT_EQ(nonzero, 8);
}

TEST(SelectMaxima, AllZero) {
  const auto out = SelectMaxima(Frame(std::vector<double>(22, 0.0)), 8);
  EXPECT_EQ(CountNonzero(out.envelopes), 0);
}

TEST(SelectMaxima, TieGoesToLowerIndex) {
  std::vector<double> v(22, 0.0);
  v[0] = 5;
  v[1] = 3;
  v[2] = 3;
  v[3] = 1;
  const auto out = SelectMaxima(Frame(v), 2);
  EXPECT_EQ(out.envelopes[0], 5.0);
  EXPECT_EQ(out.envelopes[1], 3.0);
  EXPECT_EQ(out.envelopes[2], 0.0);
}

TEST(SelectMaxima, TieRuleOnAllPermutationsOfMultiset) {
  std::vector<double> base = {1, 3, 3, 5, 5};
  std::sort(base.begin(), base.end());
  int perms = 0;
  do {
    for (int n = 1; n <= 5; ++n) {
      EXPECT_EQ(MaximaIndices(base, n), SortOracle(base, n));
    }
    ++perms;
  } while (std::next_permutation(base.begin(), base.end()));
  EXPECT_EQ(perms, 30);
}

TEST(SelectMaxima, MatchesSortOracleOnRandomFramesWithTies) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> level(0, 6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(22);
    for (double& x : v) x = level(rng);
    const int n = 1 + trial % 22;
    EXPECT_EQ(MaximaIndices(v, n), SortOracle(v, n));
  }
}

TEST(SelectMaxima, IndexSetInvariantUnderScaling) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(22);
    for (double& x : v) x = u(rng);
    const auto ref = MaximaIndices(v, 8);
    for (double c : {0.1, 1.0, 10.0}) {
      std::vector<double> w = v;
      for (double& x : w) x *= c;
      EXPECT_EQ(MaximaIndices(w, 8), ref);
    }
  }
}

TEST(SelectMaxima, RejectsOutOfRangeN) {
  EXPECT_THROW(SelectMaxima(Frame(std::vector<double>(22, 1.0)), 0), InvalidArgument);
  EXPECT_THROW(SelectMaxima(Frame(std::vector<double>(22, 1.0)), 23), InvalidArgument);
}

TEST(Lgf, KneesAndMidpoint) {
  const MappingConfig map;
  EXPECT_EQ(LoudnessGrowth(map.base_level, map), 0.0);
  EXPECT_DOUBLE_EQ(LoudnessGrowth(map.sat_level, map), 1.0);
  EXPECT_EQ(LoudnessGrowth(0.0, map), 0.0);
  EXPECT_DOUBLE_EQ(LoudnessGrowth(5.0, map), 1.0);
  const double mid = map.base_level + 0.5 * (map.sat_level - map.base_level);
  const double oracle = std::log(1.0 + 208.1032) / std::log(417.2064);
  EXPECT_NEAR(LoudnessGrowth(mid, map), oracle, 1e-12);
  EXPECT_NEAR(LoudnessGrowth(mid, map), 0.8855, 5e-5);
}

TEST(Lgf, MonotoneIntoUnitInterval) {
  const MappingConfig map = MappingConfig::FromSaturation(2.5);
  double prev = -1.0;
  for (int i = 0; i <= 4000; ++i) {
    const double v = i * 1e-3;
    const double p = LoudnessGrowth(v, map);
    EXPECT_GE(p, prev);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    prev = p;
  }
}

TEST(Lgf, ApplyKeepsSparsityAndDropsSubBase) {
  const MappingConfig map;
  std::vector<double> v(22, 0.0);
  v[3] = 0.5;
  v[4] = map.base_level * 0.5;
  v[10] = 2.0;
  const auto s = ApplyLgf(Frame(v), map);
  EXPECT_EQ(s.selected_count, 2);
  EXPECT_EQ(s.amplitudes[4], 0.0);
  EXPECT_EQ(s.amplitudes[10], 1.0);
  EXPECT_GT(s.amplitudes[3], 0.0);
  EXPECT_EQ(s.selected_count, CountNonzero(s.amplitudes));
}

TEST(MappingConfig, Validation) {
  MappingConfig map;
  map.sat_level = map.base_level;
  EXPECT_THROW(map.Validate(), InvalidArgument);
  map = MappingConfig{};
  map.rho = 0.0;
  EXPECT_THROW(map.Validate(), InvalidArgument);
}

TEST(AceEncode, ZeroSignal) {
  const auto e = AceEncode(std::vector<double>(1600, 0.0), StrategyConfig{}, MappingConfig{});
  EXPECT_EQ(e.frame_count(), 100u);
  for (const auto& f : e.frames) EXPECT_EQ(f.selected_count, 0);
}

TEST(AceEncode, ToneLandsInChannelSeven) {
  std::vector<double> x(3200);
  for (size_t n = 0; n < x.size(); ++n) x[n] = 0.05 * std::sin(2.0 * std::numbers::pi * 1000.0 * n / 16000.0);
  StrategyConfig cfg;
  const auto e = AceEncode(x, cfg, MappingConfig{});
  for (size_t t = 10; t + 10 < e.frame_count(); ++t) {
    const auto& a = e.frames[t].amplitudes;
    EXPECT_EQ(std::max_element(a.begin(), a.end()) - a.begin(), 6) << "frame " << t;
    const auto& env = e.envelopes[t].envelopes;
    EXPECT_EQ(std::max_element(env.begin(), env.end()) - env.begin(), 6);
  }
}

TEST(AceEncode, InvariantsOnNoise) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 0.1);
  std::vector<double> x(4321);
  for (double& v : x) v = g(rng);
  StrategyConfig cfg;
  for (int n : {1, 8, 12, 22}) {
    cfg.num_maxima = n;
    const auto e = AceEncode(x, cfg, MappingConfig{});
    EXPECT_EQ(e.frame_count(), FrameCount(x.size(), cfg.hop));
    EXPECT_NO_THROW(e.Validate());
    for (const auto& f : e.frames) {
      EXPECT_LE(f.selected_count, n);
      for (double a : f.amplitudes) {
        EXPECT_GE(a, 0.0);
        EXPECT_LE(a, 1.0);
      }
    }
  }
}

TEST(AceEncode, MatchesStageComposition) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 0.2);
  std::vector<double> x(800);
  for (double& v : x) v = g(rng);
  StrategyConfig cfg;
  const MappingConfig map;
  const auto e = AceEncode(x, cfg, map);
  const auto frames = FrameSignal(x, cfg);
  for (size_t t = 0; t < frames.size(); ++t) {
    const auto sel = SelectMaxima(DetectEnvelopes(AnalyzeFrame(frames[t], cfg), cfg), cfg.num_maxima);
    EXPECT_EQ(ApplyLgf(sel, map).amplitudes, e.frames[t].amplitudes);
  }
}

TEST(CalibrateSaturation, Percentile) {
  std::vector<ChannelEnvelopeFrame> frames;
  for (int i = 1; i <= 100; ++i) frames.push_back(Frame({static_cast<double>(i), 0.0}));
  const double sat = CalibrateSaturationLevel(frames, 95.0);
  EXPECT_GE(sat, 94.0);
  EXPECT_LE(sat, 96.0);
}

}  // namespace
}  // namespace electrodenet
