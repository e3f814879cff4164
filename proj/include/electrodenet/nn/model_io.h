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

// ENET model files, all little-endian:
//
//   "ENET"  u32 version = 1
//   payload:
//     u8  arch_id
//     f32 feature_scale
//     u32 layer_count
//     per layer: u8 kind, u32 in, u32 out, u32 kernel, u32 padding,
//                u8 cs_mode, u32 cs_k, u8 bias_vectors
//     f32 weights, layer by layer, each parameter matrix row-major;
//     conv1d weights in [out][in][kernel] order
//   u64 CRC-64/XZ of the payload
//
// Weights are float32 on disk, so a saved-then-loaded network rounds its
// parameters to float32; saving it again reproduces the same bytes.

#ifndef ELECTRODENET_NN_MODEL_IO_H_
#define ELECTRODENET_NN_MODEL_IO_H_

#include <string>
#include <string_view>

#include "electrodenet/nn/network.h"

namespace electrodenet::nn {

inline constexpr uint32_t kModelVersion = 1;

std::string EncodeNetwork(const Network& network);
// Throws FormatError (bad magic or header), VersionError, TruncatedError
// or ChecksumError.
Network DecodeNetwork(std::string_view bytes);

void SaveNetwork(const std::string& path, const Network& network);
Network LoadNetwork(const std::string& path);

}  // namespace electrodenet::nn

#endif  // ELECTRODENET_NN_MODEL_IO_H_
