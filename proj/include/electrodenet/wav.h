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

#ifndef ELECTRODENET_WAV_H_
#define ELECTRODENET_WAV_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace electrodenet {

enum class WavFormat { kPcm16, kFloat32 };

struct Audio {
  int sample_rate = 0;
  int channels = 0;
  // Interleaved when channels > 1; samples in [-1, 1] for PCM input.
  std::vector<double> samples;
};

// Parses a RIFF/WAVE byte string. PCM16 and IEEE float32 are accepted,
// plain or WAVE_FORMAT_EXTENSIBLE. Throws FormatError otherwise.
Audio DecodeWav(std::string_view bytes);
std::string EncodeWav(std::span<const double> samples, int sample_rate, WavFormat format);

// Reads a file and insists on mono 16 kHz; throws SampleRateError with
// "expected 16000 Hz" on any other rate and FormatError on multichannel.
std::vector<double> ReadMonoWav16k(const std::string& path);
void WriteWav(const std::string& path, std::span<const double> samples, int sample_rate,
              WavFormat format = WavFormat::kPcm16);

}  // namespace electrodenet

#endif  // ELECTRODENET_WAV_H_
