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

#include "electrodenet/csv.h"

#include <charconv>
#include <cmath>
#include <limits>

#include "electrodenet/binary_io.h"
#include "electrodenet/errors.h"

namespace electrodenet {

std::vector<std::string> SplitString(std::string_view text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      return parts;
    }
    parts.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string CsvTable::ToString() const {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  append_row(header);
  for (const auto& row : rows) append_row(row);
  return out;
}

CsvTable ParseCsv(std::string_view text, std::string_view expected_header) {
  CsvTable table;
  size_t start = 0;
  bool first = true;
  int line_no = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (first) {
      if (!expected_header.empty() && line != expected_header) {
        throw FormatError("CSV header '" + std::string(line) + "' does not match '" +
                          std::string(expected_header) + "'");
      }
      table.header = SplitString(line, ',');
      first = false;
      continue;
    }
    if (line.empty()) continue;
    auto row = SplitString(line, ',');
    if (row.size() != table.header.size()) {
      throw FormatError("CSV line " + std::to_string(line_no) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  if (first) throw FormatError("empty CSV");
  return table;
}

CsvTable ReadCsv(const std::string& path, std::string_view expected_header) {
  return ParseCsv(ReadFileBytes(path), expected_header);
}

void WriteCsv(const std::string& path, const CsvTable& table) {
  WriteFileBytes(path, table.ToString());
}

std::string FormatDouble(double v) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

double ParseDouble(std::string_view text) {
  double v = 0.0;
  auto result = std::from_chars(text.data(), text.data() + text.size(), v);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw FormatError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string FormatSnr(double snr_db) {
  return std::isinf(snr_db) && snr_db > 0 ? "quiet" : FormatDouble(snr_db);
}

double ParseSnr(std::string_view text) {
  if (text == "quiet") return std::numeric_limits<double>::infinity();
  return ParseDouble(text);
}

}  // namespace electrodenet
