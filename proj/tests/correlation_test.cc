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

#include "electrodenet/correlation.h"

#include <cmath>
#include <random>

#include "correlation_oracle.h"
#include "electrodenet/errors.h"
#include "gtest/gtest.h"

namespace electrodenet {
namespace {

using testing::OracleMse;
using testing::OraclePearson;
using testing::OracleRanks;
using testing::OracleSpearman;

TEST(Correlate, Identical) {
  const std::vector<double> a = {0.3, 0.5, 0.1, 0.9};
  const auto r = Correlate(a, a);
  EXPECT_EQ(r.mse, 0.0);
  EXPECT_NEAR(r.lcc, 1.0, 1e-15);
  EXPECT_NEAR(r.srcc, 1.0, 1e-15);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.n, 4u);
}

TEST(Correlate, AntiRank) {
  const auto r = Correlate(std::vector<double>{1, 2, 3, 4}, std::vector<double>{4, 3, 2, 1});
  EXPECT_NEAR(r.lcc, -1.0, 1e-15);
  EXPECT_NEAR(r.srcc, -1.0, 1e-15);
  EXPECT_EQ(r.mse, 5.0);
}

TEST(Correlate, AverageRanks) {
  EXPECT_EQ(AverageRanks(std::vector<double>{1, 2, 2, 3}), (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_EQ(AverageRanks(std::vector<double>{5, 5, 5}), (std::vector<double>{2, 2, 2}));
  const std::vector<double> t = {1, 2, 2, 3};
  EXPECT_NEAR(Correlate(t, t).srcc, 1.0, 1e-15);
}

TEST(Correlate, Degenerate) {
  EXPECT_TRUE(Correlate(std::vector<double>{1.0}, std::vector<double>{2.0}).degenerate);
  const auto flat = Correlate(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3});
  EXPECT_TRUE(flat.degenerate);
  EXPECT_NEAR(flat.mse, 5.0 / 3.0, 1e-15);
  EXPECT_THROW(Correlate(std::vector<double>{1, 2}, std::vector<double>{1}), InvalidArgument);
  const auto csv = CorrelationCsv({flat});
  EXPECT_EQ(csv.rows.at(0).at(3), "degenerate");
  EXPECT_EQ(csv.rows.at(0).at(4), "degenerate");
}

TEST(Correlate, MatchesDirectFormulaOracle) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 9);
  std::uniform_int_distribution<int> len(2, 120);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    std::vector<double> a(n), b(n);
    const bool ties = trial % 2 == 1;
    for (int i = 0; i < n; ++i) {
      a[i] = ties ? coarse(rng) / 10.0 : u(rng);
      b[i] = ties ? coarse(rng) / 10.0 : 0.5 * a[i] + 0.5 * u(rng);
    }
    const auto r = Correlate(a, b);
    const double lcc = OraclePearson(a, b), srcc = OracleSpearman(a, b);
    if (!std::isfinite(lcc) || !std::isfinite(srcc)) {
      EXPECT_TRUE(r.degenerate);
      continue;
    }
    ASSERT_FALSE(r.degenerate);
    worst = std::max({worst, std::abs(r.lcc - lcc), std::abs(r.srcc - srcc),
                      std::abs(r.mse - OracleMse(a, b))});
    EXPECT_EQ(AverageRanks(a), OracleRanks(a));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Correlate, AffineAndMonotoneInvariance) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(50), b(50), affine(50), monotone(50);
    for (int i = 0; i < 50; ++i) {
      a[i] = g(rng);
      b[i] = a[i] + g(rng);
      affine[i] = 2.5 * b[i] - 7.0;
      monotone[i] = std::exp(b[i]);
    }
    const auto base = Correlate(a, b);
    const auto aff = Correlate(a, affine);
    EXPECT_NEAR(aff.lcc, base.lcc, 1e-12);
    EXPECT_NEAR(aff.srcc, base.srcc, 1e-12);
    EXPECT_NEAR(Correlate(a, monotone).srcc, base.srcc, 1e-12);
  }
}

TEST(Correlate, ExactlySymmetric) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coarse(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(30), b(30);
    for (int i = 0; i < 30; ++i) {
      a[i] = coarse(rng) * 0.05;
      b[i] = coarse(rng) * 0.05;
    }
    const auto ab = Correlate(a, b), ba = Correlate(b, a);
    EXPECT_EQ(ab.mse, ba.mse);
    EXPECT_EQ(ab.degenerate, ba.degenerate);
    if (!ab.degenerate) {
      EXPECT_EQ(ab.lcc, ba.lcc);
      EXPECT_EQ(ab.srcc, ba.srcc);
    }
  }
}

std::vector<ScoreRecord> Records(const std::vector<double>& snrs, int sentences, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ScoreRecord> out;
  for (double snr : snrs) {
    for (int s = 0; s < sentences; ++s) {
      const double base = u(rng);
      const std::string id = "s" + std::to_string(s);
      out.push_back({id, "ace", "ssn", snr, "stoi", base});
      out.push_back({id, "dnn", "ssn", snr, "stoi", base + 0.1 * u(rng)});
    }
  }
  return out;
}

TEST(PerSnr, GroupsPlusPooled) {
  const std::vector<double> snrs = {-10, -5, 0, 5, 10, 15, std::numeric_limits<double>::infinity()};
  const auto pairs = PairScores(Records(snrs, 6, 4), "stoi", "ace", "dnn");
  ASSERT_EQ(pairs.size(), 42u);
  const auto reports = PerSnrBreakdown(pairs, "x;");
  ASSERT_EQ(reports.size(), 8u);
  EXPECT_EQ(reports[0].grouping, "x;snr=-10");
  EXPECT_EQ(reports[6].grouping, "x;snr=quiet");
  EXPECT_EQ(reports[7].grouping, "x;snr=pooled");
  double weighted = 0.0;
  for (int i = 0; i < 7; ++i) {
    EXPECT_GE(reports[i].mse, 0.0);
    weighted += reports[i].mse * reports[i].n;
  }
  EXPECT_NEAR(reports[7].mse, weighted / 42.0, 1e-15);
  EXPECT_EQ(reports[7].n, 42u);
}

TEST(PerSnr, SmallGroupsAreDegenerate) {
  const auto pairs = PairScores(Records({0, 5}, 1, 5), "stoi", "ace", "dnn");
  const auto reports = PerSnrBreakdown(pairs);
  EXPECT_TRUE(reports[0].degenerate);
  EXPECT_TRUE(reports[1].degenerate);
  EXPECT_FALSE(reports[2].degenerate);
}

TEST(PairScores, MissingTwinAndDuplicates) {
  auto records = Records({0}, 3, 6);
  records.erase(records.begin() + 2);  // ace score of s1
  try {
    PairScores(records, "stoi", "ace", "dnn");
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("s1"), std::string::npos);
  }
  auto dup = Records({0}, 2, 7);
  dup.push_back(dup.front());
  EXPECT_THROW(PairScores(dup, "stoi", "ace", "dnn"), InvalidArgument);
}

TEST(ScoreTable, CsvRoundTripAndSorting) {
  auto records = Records({5, -5, std::numeric_limits<double>::infinity()}, 3, 8);
  std::shuffle(records.begin(), records.end(), std::mt19937_64(9));
  const auto csv = ScoreTableCsv(records);
  auto back = ParseScoreTable(csv);
  ASSERT_EQ(back.size(), records.size());
  for (size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].sentence_id, records[i].sentence_id);
    EXPECT_EQ(back[i].snr_db, records[i].snr_db);
    EXPECT_EQ(back[i].score, records[i].score);
  }
  SortScores(back);
  for (size_t i = 1; i < back.size(); ++i) {
    const auto& p = back[i - 1];
    const auto& q = back[i];
    EXPECT_LE(std::tie(p.predictor, p.strategy, p.noise, p.snr_db, p.sentence_id),
              std::tie(q.predictor, q.strategy, q.noise, q.snr_db, q.sentence_id));
  }
}

}  // namespace
}  // namespace electrodenet
