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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "electrodenet/errors.h"

namespace electrodenet {
namespace {

using PairKey = std::tuple<std::string, std::string, double>;

std::string DescribeKey(const PairKey& k) {
  return "sentence " + std::get<0>(k) + " (noise " + std::get<1>(k) + ", snr " +
         FormatSnr(std::get<2>(k)) + ")";
}

double Mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

CsvTable ScoreTableCsv(const std::vector<ScoreRecord>& records) {
  CsvTable t;
  t.header = SplitString(kScoreTableHeader, ',');
  for (const auto& r : records) {
    t.rows.push_back({r.sentence_id, r.strategy, r.noise, FormatSnr(r.snr_db), r.predictor,
                      FormatDouble(r.score)});
  }
  return t;
}

std::vector<ScoreRecord> ParseScoreTable(const CsvTable& table) {
  if (table.header != SplitString(kScoreTableHeader, ',')) {
    throw FormatError("score table header must be " + std::string(kScoreTableHeader));
  }
  std::vector<ScoreRecord> out;
  for (const auto& row : table.rows) {
    out.push_back({row[0], row[1], row[2], ParseSnr(row[3]), row[4], ParseDouble(row[5])});
  }
  return out;
}

void SortScores(std::vector<ScoreRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const ScoreRecord& x, const ScoreRecord& y) {
    return std::tie(x.predictor, x.strategy, x.noise, x.snr_db, x.sentence_id) <
           std::tie(y.predictor, y.strategy, y.noise, y.snr_db, y.sentence_id);
  });
}

std::vector<ScorePair> PairScores(const std::vector<ScoreRecord>& records,
                                  const std::string& predictor, const std::string& strategy_a,
                                  const std::string& strategy_b) {
  std::map<PairKey, double> a, b;
  for (const auto& r : records) {
    if (r.predictor != predictor) continue;
    std::map<PairKey, double>* side = r.strategy == strategy_a   ? &a
                                      : r.strategy == strategy_b ? &b
                                                                 : nullptr;
    if (side == nullptr) continue;
    const PairKey key{r.sentence_id, r.noise, r.snr_db};
    if (!side->emplace(key, r.score).second) {
      throw InvalidArgument("duplicate " + r.strategy + " " + predictor + " score for " +
                            DescribeKey(key));
    }
  }
  for (const auto& [key, v] : b) {
    if (!a.count(key)) {
      throw InvalidArgument("no " + strategy_a + " twin for " + strategy_b + " " +
                            DescribeKey(key));
    }
  }
  std::vector<ScorePair> pairs;
  for (const auto& [key, v] : a) {
    auto it = b.find(key);
    if (it == b.end()) {
      throw InvalidArgument("no " + strategy_b + " twin for " + strategy_a + " " +
                            DescribeKey(key));
    }
    pairs.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v, it->second});
  }
  return pairs;
}

std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(v.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    // Positions i..j-1 (0-based) share rank mean(i+1 .. j).
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double PearsonCorrelation(std::span<const double> a, std::span<const double> b) {
  const double ma = Mean(a), mb = Mean(b);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  const double n = static_cast<double>(a.size());
  const double sa = std::sqrt(va / n), sb = std::sqrt(vb / n);
  if (!(sa > 0.0) || !(sb > 0.0)) return std::nan("");
  // sa * sb and sb * sa round identically, so swapping arguments is exact.
  return std::clamp((cov / n) / (sa * sb), -1.0, 1.0);
}

CorrelationReport Correlate(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("correlate needs equal-length score vectors");
  CorrelationReport r;
  r.n = a.size();
  if (r.n > 0) {
    double sq = 0.0;
    for (size_t i = 0; i < r.n; ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
    r.mse = sq / static_cast<double>(r.n);
  }
  if (r.n < 2) {
    r.degenerate = true;
    r.lcc = r.srcc = std::nan("");
    return r;
  }
  r.lcc = PearsonCorrelation(a, b);
  const std::vector<double> ra = AverageRanks(a), rb = AverageRanks(b);
  r.srcc = PearsonCorrelation(ra, rb);
  r.degenerate = std::isnan(r.lcc) || std::isnan(r.srcc);
  return r;
}

CorrelationReport Correlate(std::span<const ScorePair> pairs) {
  std::vector<double> a, b;
  for (const auto& p : pairs) {
    a.push_back(p.a);
    b.push_back(p.b);
  }
  return Correlate(a, b);
}

std::vector<CorrelationReport> PerSnrBreakdown(std::span<const ScorePair> pairs,
                                               const std::string& prefix) {
  std::map<double, std::vector<ScorePair>> groups;
  for (const auto& p : pairs) groups[p.snr_db].push_back(p);
  std::vector<CorrelationReport> out;
  for (const auto& [snr, group] : groups) {
    out.push_back(Correlate(group));
    out.back().grouping = prefix + "snr=" + FormatSnr(snr);
  }
  out.push_back(Correlate(pairs));
  out.back().grouping = prefix + "snr=pooled";
  return out;
}

CsvTable CorrelationCsv(const std::vector<CorrelationReport>& reports) {
  CsvTable t;
  t.header = SplitString(kCorrelationHeader, ',');
  for (const auto& r : reports) {
    t.rows.push_back({r.grouping, std::to_string(r.n), FormatDouble(r.mse),
                      r.degenerate ? "degenerate" : FormatDouble(r.lcc),
                      r.degenerate ? "degenerate" : FormatDouble(r.srcc)});
  }
  return t;
}

}  // namespace electrodenet
