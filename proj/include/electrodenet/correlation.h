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

// Score tables and the paired-score agreement statistics: MSE, Pearson LCC
// and Spearman SRCC with average ranks for ties.

#ifndef ELECTRODENET_CORRELATION_H_
#define ELECTRODENET_CORRELATION_H_

#include <span>
#include <string>
#include <vector>

#include "electrodenet/csv.h"

namespace electrodenet {

struct ScoreRecord {
  std::string sentence_id;
  std::string strategy;
  std::string noise;
  double snr_db = 0.0;  // +inf for quiet
  std::string predictor;
  double score = 0.0;
};

CsvTable ScoreTableCsv(const std::vector<ScoreRecord>& records);
std::vector<ScoreRecord> ParseScoreTable(const CsvTable& table);

// Rows sorted by (predictor, strategy, noise, snr, sentence).
void SortScores(std::vector<ScoreRecord>& records);

struct ScorePair {
  std::string sentence_id;
  std::string noise;
  double snr_db = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// Joins the two strategies' scores on (sentence_id, noise, snr). Throws
// InvalidArgument naming the sentence when either side lacks its twin or
// a key repeats.
std::vector<ScorePair> PairScores(const std::vector<ScoreRecord>& records,
                                  const std::string& predictor, const std::string& strategy_a,
                                  const std::string& strategy_b);

struct CorrelationReport {
  std::string grouping;
  size_t n = 0;
  double mse = 0.0;
  double lcc = 0.0;
  double srcc = 0.0;
  // n < 2 or a zero standard deviation: lcc and srcc are undefined.
  bool degenerate = false;
};

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> v);

double PearsonCorrelation(std::span<const double> a, std::span<const double> b);

CorrelationReport Correlate(std::span<const double> a, std::span<const double> b);
CorrelationReport Correlate(std::span<const ScorePair> pairs);

// One report per SNR level (ascending, quiet last) with grouping
// "<prefix>snr=<level>", then the pooled report "<prefix>snr=pooled".
std::vector<CorrelationReport> PerSnrBreakdown(std::span<const ScorePair> pairs,
                                               const std::string& prefix = "");

// Degenerate reports print "degenerate" in the lcc and srcc columns.
CsvTable CorrelationCsv(const std::vector<CorrelationReport>& reports);

}  // namespace electrodenet

#endif  // ELECTRODENET_CORRELATION_H_
