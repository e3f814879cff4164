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

#include "electrodenet/nn/model_io.h"

#include <filesystem>

#include "electrodenet/binary_io.h"
#include "electrodenet/errors.h"
#include "gtest/gtest.h"

namespace electrodenet::nn {
namespace {

Network Trained(ArchId arch) {
  Network net = BuildNetwork(arch, 8, 1);
  net.Initialize(5);
  net.set_feature_scale(3.25);
  return net;
}

TEST(ModelIo, SaveLoadSaveIsByteIdentical) {
  for (ArchId a : {ArchId::kDnn, ArchId::kCnn, ArchId::kLstm, ArchId::kDnnCs, ArchId::kDnnCsVt}) {
    const std::string bytes = EncodeNetwork(Trained(a));
    const Network back = DecodeNetwork(bytes);
    EXPECT_EQ(back.arch(), a);
    EXPECT_EQ(back.specs(), Trained(a).specs());
    EXPECT_EQ(back.feature_scale(), 3.25);
    EXPECT_EQ(EncodeNetwork(back), bytes) << ArchName(a);
  }
}

TEST(ModelIo, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "electrodenet_model_io_test.enet").string();
  const Network net = Trained(ArchId::kDnnCs);
  SaveNetwork(path, net);
  const Network back = LoadNetwork(path);
  EXPECT_EQ(ReadFileBytes(path), EncodeNetwork(back));
  // Weights are stored as float32.
  const double w = net.layer(0).params()[0](3, 4);
  EXPECT_EQ(back.layer(0).params()[0](3, 4), static_cast<double>(static_cast<float>(w)));
  std::filesystem::remove(path);
}

TEST(ModelIo, LoadErrors) {
  const std::string bytes = EncodeNetwork(Trained(ArchId::kDnn));
  EXPECT_THROW(DecodeNetwork(bytes.substr(0, bytes.size() / 2)), TruncatedError);
  EXPECT_THROW(DecodeNetwork(bytes.substr(0, 6)), TruncatedError);
  std::string magic = bytes;
  magic[1] = 'X';
  EXPECT_THROW(DecodeNetwork(magic), FormatError);
  std::string version = bytes;
  version[4] = static_cast<char>(kModelVersion + 1);
  EXPECT_THROW(DecodeNetwork(version), VersionError);
  std::string corrupt = bytes;
  corrupt[bytes.size() / 2] ^= 0x10;
  EXPECT_THROW(DecodeNetwork(corrupt), ChecksumError);
  EXPECT_THROW(DecodeNetwork(bytes + "x"), FormatError);
  EXPECT_THROW(LoadNetwork("/nonexistent/model.enet"), std::runtime_error);
}

TEST(Crc64, KnownCheckValue) {
  // CRC-64/XZ check value for "123456789".
  EXPECT_EQ(Crc64("123456789"), 0x995DC9BBDF1939FAull);
}

}  // namespace
}  // namespace electrodenet::nn
