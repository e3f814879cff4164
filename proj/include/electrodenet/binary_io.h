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

// Little-endian byte buffers for the ELGR, ENET and WAV formats.

#ifndef ELECTRODENET_BINARY_IO_H_
#define ELECTRODENET_BINARY_IO_H_

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "electrodenet/errors.h"

namespace electrodenet {

class ByteWriter {
 public:
  void PutBytes(std::string_view bytes) {
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
  }
  void PutU8(uint8_t v) { buffer_.push_back(static_cast<char>(v)); }
  void PutU16(uint16_t v) { PutLittleEndian(v, 2); }
  void PutU32(uint32_t v) { PutLittleEndian(v, 4); }
  void PutU64(uint64_t v) { PutLittleEndian(v, 8); }
  void PutF32(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    PutU32(bits);
  }

  const std::string& bytes() const { return buffer_; }
  std::string&& Release() { return std::move(buffer_); }

 private:
  void PutLittleEndian(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buffer_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }

  std::string buffer_;
};

// Reads from a borrowed byte range. Running past the end throws
// TruncatedError so every format gets the same truncation behaviour.
class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view GetBytes(size_t n) {
    Require(n);
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  uint8_t GetU8() { return static_cast<uint8_t>(GetLittleEndian(1)); }
  uint16_t GetU16() { return static_cast<uint16_t>(GetLittleEndian(2)); }
  uint32_t GetU32() { return static_cast<uint32_t>(GetLittleEndian(4)); }
  uint64_t GetU64() { return GetLittleEndian(8); }
  float GetF32() {
    uint32_t bits = GetU32();
    float v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  size_t position() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Require(size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw TruncatedError("unexpected end of data at byte " + std::to_string(pos_));
    }
  }
  uint64_t GetLittleEndian(int n) {
    Require(n);
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += n;
    return v;
  }

  std::string_view bytes_;
  size_t pos_ = 0;
};

// CRC-64/XZ (ECMA-182 polynomial, reflected, init and xorout all ones).
uint64_t Crc64(std::string_view bytes);

std::string ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::string_view bytes);

}  // namespace electrodenet

#endif  // ELECTRODENET_BINARY_IO_H_
