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

#include "electrodenet/wav.h"

#include <algorithm>
#include <cmath>

#include "electrodenet/binary_io.h"
#include "electrodenet/errors.h"

namespace electrodenet {
namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

Audio DecodeWav(std::string_view bytes) {
  ByteReader reader(bytes);
  if (reader.GetBytes(4) != "RIFF") throw FormatError("not a RIFF file");
  reader.GetU32();
  if (reader.GetBytes(4) != "WAVE") throw FormatError("not a WAVE file");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  while (true) {
    std::string_view id = reader.GetBytes(4);
    uint32_t size = reader.GetU32();
    if (id == "fmt ") {
      ByteReader fmt(reader.GetBytes(size));
      format = fmt.GetU16();
      channels = fmt.GetU16();
      rate = fmt.GetU32();
      fmt.GetU32();  // byte rate
      fmt.GetU16();  // block align
      bits = fmt.GetU16();
      if (format == kFormatExtensible) {
        if (fmt.remaining() < 24) throw FormatError("short WAVE_FORMAT_EXTENSIBLE header");
        fmt.GetU16();  // cbSize
        fmt.GetU16();  // valid bits
        fmt.GetU32();  // channel mask
        format = fmt.GetU16();  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError("data chunk before fmt chunk");
      Audio audio;
      audio.sample_rate = static_cast<int>(rate);
      audio.channels = channels;
      if (format == kFormatPcm && bits == 16) {
        size_t n = size / 2;
        std::string_view data = reader.GetBytes(n * 2);
        ByteReader samples(data);
        audio.samples.resize(n);
        for (size_t i = 0; i < n; ++i) {
          audio.samples[i] = static_cast<int16_t>(samples.GetU16()) / 32768.0;
        }
      } else if (format == kFormatFloat && bits == 32) {
        size_t n = size / 4;
        ByteReader samples(reader.GetBytes(n * 4));
        audio.samples.resize(n);
        for (size_t i = 0; i < n; ++i) audio.samples[i] = samples.GetF32();
      } else {
        throw FormatError("unsupported WAV encoding (format " + std::to_string(format) + ", " +
                          std::to_string(bits) + " bits); use PCM16 or float32");
      }
      return audio;
    } else {
      reader.GetBytes(size + (size & 1));
    }
  }
}

std::string EncodeWav(std::span<const double> samples, int sample_rate, WavFormat format) {
  const bool is_float = format == WavFormat::kFloat32;
  const uint16_t bytes_per_sample = is_float ? 4 : 2;
  const auto data_size = static_cast<uint32_t>(samples.size() * bytes_per_sample);
  ByteWriter w;
  w.PutBytes("RIFF");
  w.PutU32(36 + data_size);
  w.PutBytes("WAVE");
  w.PutBytes("fmt ");
  w.PutU32(16);
  w.PutU16(is_float ? kFormatFloat : kFormatPcm);
  w.PutU16(1);
  w.PutU32(static_cast<uint32_t>(sample_rate));
  w.PutU32(static_cast<uint32_t>(sample_rate) * bytes_per_sample);
  w.PutU16(bytes_per_sample);
  w.PutU16(bytes_per_sample * 8);
  w.PutBytes("data");
  w.PutU32(data_size);
  for (double s : samples) {
    if (is_float) {
      w.PutF32(static_cast<float>(s));
    } else {
      double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32767.0);
      w.PutU16(static_cast<uint16_t>(static_cast<int16_t>(scaled)));
    }
  }
  return w.Release();
}

std::vector<double> ReadMonoWav16k(const std::string& path) {
  Audio audio = DecodeWav(ReadFileBytes(path));
  if (audio.sample_rate != 16000) {
    throw SampleRateError(path + ": sample rate " + std::to_string(audio.sample_rate) +
                          " Hz, expected 16000 Hz");
  }
  if (audio.channels != 1) {
    throw FormatError(path + ": " + std::to_string(audio.channels) + " channels, expected mono");
  }
  return std::move(audio.samples);
}

void WriteWav(const std::string& path, std::span<const double> samples, int sample_rate,
              WavFormat format) {
  WriteFileBytes(path, EncodeWav(samples, sample_rate, format));
}

}  // namespace electrodenet
