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

#include "electrodenet/binary_io.h"
#include "electrodenet/errors.h"

namespace electrodenet::nn {
namespace {

constexpr size_t kHeaderBytes = 8;  // magic + version
constexpr size_t kCrcBytes = 8;

bool IsConv(const LayerSpec& spec) { return spec.kind == LayerKind::kConv1d; }

// Visits each stored weight of a parameter matrix in file order.
template <typename Mat, typename Fn>
void ForEachStored(const LayerSpec& spec, size_t param_index, Mat& m, Fn&& fn) {
  if (IsConv(spec) && param_index == 0) {
    const int in = spec.in_size;
    for (int o = 0; o < spec.out_size; ++o) {
      for (int i = 0; i < in; ++i) {
        for (int j = 0; j < spec.kernel; ++j) fn(m(o, j * in + i));
      }
    }
    return;
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) fn(m(r, c));
  }
}

}  // namespace

std::string EncodeNetwork(const Network& network) {
  ByteWriter payload;
  payload.PutU8(static_cast<uint8_t>(network.arch()));
  payload.PutF32(static_cast<float>(network.feature_scale()));
  payload.PutU32(static_cast<uint32_t>(network.num_layers()));
  for (size_t l = 0; l < network.num_layers(); ++l) {
    const LayerSpec& s = network.layer(l).spec();
    payload.PutU8(static_cast<uint8_t>(s.kind));
    payload.PutU32(static_cast<uint32_t>(s.in_size));
    payload.PutU32(static_cast<uint32_t>(s.out_size));
    payload.PutU32(static_cast<uint32_t>(s.kernel));
    payload.PutU32(static_cast<uint32_t>(s.padding));
    payload.PutU8(static_cast<uint8_t>(s.cs_mode));
    payload.PutU32(static_cast<uint32_t>(s.cs_k));
    payload.PutU8(static_cast<uint8_t>(s.bias_vectors));
  }
  for (size_t l = 0; l < network.num_layers(); ++l) {
    const Layer& layer = network.layer(l);
    for (size_t p = 0; p < layer.params().size(); ++p) {
      ForEachStored(layer.spec(), p, layer.params()[p],
                    [&payload](double w) { payload.PutF32(static_cast<float>(w)); });
    }
  }
  ByteWriter file;
  file.PutBytes("ENET");
  file.PutU32(kModelVersion);
  file.PutBytes(payload.bytes());
  file.PutU64(Crc64(payload.bytes()));
  return file.Release();
}

Network DecodeNetwork(std::string_view bytes) {
  ByteReader header(bytes);
  if (bytes.size() < 4 || header.GetBytes(4) != "ENET") throw FormatError("not an ENET model file");
  const uint32_t version = header.GetU32();
  if (version != kModelVersion) {
    throw VersionError("unsupported ENET version " + std::to_string(version));
  }

  // Parse the payload first so a short file reports truncation rather than
  // a checksum mismatch.
  std::string_view rest = bytes.substr(kHeaderBytes);
  ByteReader r(rest);
  const uint8_t arch_byte = r.GetU8();
  if (arch_byte > static_cast<uint8_t>(ArchId::kDnnCsVt)) {
    throw FormatError("unknown architecture id " + std::to_string(arch_byte));
  }
  const double feature_scale = r.GetF32();
  const uint32_t count = r.GetU32();
  if (count == 0 || count > 1024) throw FormatError("implausible layer count");
  std::vector<LayerSpec> specs(count);
  for (auto& s : specs) {
    const uint8_t kind = r.GetU8();
    if (kind > static_cast<uint8_t>(LayerKind::kCsSelect)) throw FormatError("unknown layer kind");
    s.kind = static_cast<LayerKind>(kind);
    s.in_size = static_cast<int>(r.GetU32());
    s.out_size = static_cast<int>(r.GetU32());
    s.kernel = static_cast<int>(r.GetU32());
    s.padding = static_cast<int>(r.GetU32());
    s.cs_mode = static_cast<CsMode>(r.GetU8());
    s.cs_k = static_cast<int>(r.GetU32());
    s.bias_vectors = r.GetU8();
  }
  Network network = [&] {
    try {
      return Network(static_cast<ArchId>(arch_byte), specs);
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("invalid layer header: ") + e.what());
    }
  }();
  network.set_feature_scale(feature_scale);
  size_t expected = 0;
  for (size_t l = 0; l < network.num_layers(); ++l) expected += network.layer(l).ParamCount();
  if (r.remaining() < expected * 4 + kCrcBytes) {
    throw TruncatedError("ENET file shorter than its layer headers require");
  }
  for (size_t l = 0; l < network.num_layers(); ++l) {
    Layer& layer = network.layer(l);
    for (size_t p = 0; p < layer.params().size(); ++p) {
      ForEachStored(layer.spec(), p, layer.params()[p], [&r](double& w) { w = r.GetF32(); });
    }
  }
  const size_t payload_len = r.position();
  const uint64_t stored_crc = r.GetU64();
  if (r.remaining() != 0) throw FormatError("trailing bytes after ENET checksum");
  if (Crc64(rest.substr(0, payload_len)) != stored_crc) {
    throw ChecksumError("ENET checksum mismatch");
  }
  return network;
}

void SaveNetwork(const std::string& path, const Network& network) {
  WriteFileBytes(path, EncodeNetwork(network));
}

Network LoadNetwork(const std::string& path) { return DecodeNetwork(ReadFileBytes(path)); }

}  // namespace electrodenet::nn
