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

#include "electrodenet/electrodogram.h"

#include <random>
#include <sstream>

#include "electrodenet/ace.h"
#include "electrodenet/errors.h"
#include "gtest/gtest.h"

namespace electrodenet {
namespace {

Electrodogram NoiseElectrodogram(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.2);
  std::vector<double> x(2000);
  for (double& v : x) v = g(rng);
  return AceEncode(x, StrategyConfig{}, MappingConfig{});
}

TEST(Electrodogram, BinaryRoundTrip) {
  const auto e = NoiseElectrodogram(1);
  const auto bytes = EncodeElectrodogram(e);
  const auto back = DecodeElectrodogram(bytes);
  EXPECT_EQ(back.num_channels, 22);
  EXPECT_EQ(back.num_maxima, 12);
  EXPECT_EQ(back.hop, 16);
  EXPECT_EQ(back.sample_rate, 16000);
  ASSERT_EQ(back.frame_count(), e.frame_count());
  EXPECT_FALSE(back.has_envelopes());
  for (size_t t = 0; t < e.frame_count(); ++t) {
    EXPECT_EQ(back.frames[t].selected_count, e.frames[t].selected_count);
    for (int m = 0; m < 22; ++m) {
      EXPECT_EQ(back.frames[t].amplitudes[m], static_cast<float>(e.frames[t].amplitudes[m]));
    }
  }
  EXPECT_EQ(EncodeElectrodogram(back), bytes);
}

TEST(Electrodogram, CsvHasOneRowPerNonzero) {
  const auto e = NoiseElectrodogram(2);
  size_t nonzero = 0;
  for (const auto& f : e.frames) nonzero += static_cast<size_t>(CountNonzero(f.amplitudes));
  std::istringstream csv(ElectrodogramCsv(e));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "frame,channel,amplitude");
  size_t rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    ++rows;
    const int channel = std::stoi(line.substr(line.find(',') + 1));
    EXPECT_GE(channel, 1);
    EXPECT_LE(channel, 22);
  }
  EXPECT_EQ(rows, nonzero);
}

TEST(Electrodogram, DecodeErrors) {
  const auto bytes = EncodeElectrodogram(NoiseElectrodogram(3));
  EXPECT_THROW(DecodeElectrodogram(bytes.substr(0, bytes.size() - 3)), TruncatedError);
  EXPECT_THROW(DecodeElectrodogram(bytes.substr(0, 10)), TruncatedError);
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(DecodeElectrodogram(bad_magic), FormatError);
  std::string bad_version = bytes;
  bad_version[4] = 9;
  EXPECT_THROW(DecodeElectrodogram(bad_version), VersionError);
}

TEST(Electrodogram, ValidateCatchesBrokenInvariants) {
  auto e = NoiseElectrodogram(4);
  EXPECT_NO_THROW(e.Validate());
  auto too_many = e;
  too_many.frames[0].amplitudes.assign(22, 0.5);
  too_many.frames[0].selected_count = 22;
  EXPECT_THROW(too_many.Validate(), InvalidArgument);
  auto miscount = e;
  miscount.frames[0].selected_count += 1;
  EXPECT_THROW(miscount.Validate(), InvalidArgument);
  auto out_of_range = e;
  out_of_range.frames[0].amplitudes[0] = 1.5;
  out_of_range.frames[0].selected_count = CountNonzero(out_of_range.frames[0].amplitudes);
  EXPECT_THROW(out_of_range.Validate(), InvalidArgument);
}

}  // namespace
}  // namespace electrodenet
