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

// Minimal tidy-CSV support. Fields never contain commas, quotes or
// newlines, so no quoting is implemented; headers are checked strictly.

#ifndef ELECTRODENET_CSV_H_
#define ELECTRODENET_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace electrodenet {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string ToString() const;
};

// Throws FormatError if the header differs from `expected_header` (when
// non-empty) or a row has the wrong number of fields.
CsvTable ParseCsv(std::string_view text, std::string_view expected_header = {});
CsvTable ReadCsv(const std::string& path, std::string_view expected_header = {});
void WriteCsv(const std::string& path, const CsvTable& table);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double v);
double ParseDouble(std::string_view text);

// SNR cells: "quiet" for +infinity, otherwise FormatDouble.
std::string FormatSnr(double snr_db);
double ParseSnr(std::string_view text);

std::vector<std::string> SplitString(std::string_view text, char sep);

// Published headers.
inline constexpr std::string_view kScoreTableHeader =
    "sentence_id,strategy,noise,snr_db,predictor,score";
inline constexpr std::string_view kCorrelationHeader = "grouping,n,mse,lcc,srcc";
inline constexpr std::string_view kStimulusCsvHeader = "frame,channel,amplitude";
inline constexpr std::string_view kCsUsageHeader = "n_cs,frames,percent";
inline constexpr std::string_view kLossHistoryHeader = "epoch,loss";
inline constexpr std::string_view kMeanScoreHeader = "strategy,noise,snr_db,predictor,n,mean";
inline constexpr std::string_view kScatterHeader =
    "predictor,noise,snr_db,sentence_id,strategy_a,score_a,strategy_b,score_b";

}  // namespace electrodenet

#endif  // ELECTRODENET_CSV_H_
