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

#include "electrodenet/binary_io.h"
#include "electrodenet/csv.h"
#include "electrodenet/errors.h"

namespace electrodenet {

int CountNonzero(const std::vector<double>& values) {
  int n = 0;
  for (double v : values) n += v != 0.0;
  return n;
}

void Electrodogram::Validate() const {
  for (size_t f = 0; f < frames.size(); ++f) {
    const StimulusFrame& frame = frames[f];
    if (static_cast<int>(frame.amplitudes.size()) != num_channels) {
      throw InvalidArgument("electrodogram frame " + std::to_string(f) + " has wrong width");
    }
    for (double a : frame.amplitudes) {
      if (!(a >= 0.0 && a <= 1.0)) {
        throw InvalidArgument("electrodogram amplitude outside [0, 1] in frame " +
                              std::to_string(f));
      }
    }
    const int nonzero = CountNonzero(frame.amplitudes);
    if (nonzero != frame.selected_count || nonzero > num_maxima) {
      throw InvalidArgument("electrodogram frame " + std::to_string(f) +
                            " violates the N-of-M constraint");
    }
  }
}

std::string EncodeElectrodogram(const Electrodogram& elgr) {
  ByteWriter w;
  w.PutBytes("ELGR");
  w.PutU32(kElectrodogramVersion);
  w.PutU32(static_cast<uint32_t>(elgr.num_channels));
  w.PutU32(static_cast<uint32_t>(elgr.num_maxima));
  w.PutU32(static_cast<uint32_t>(elgr.hop));
  w.PutU32(static_cast<uint32_t>(elgr.sample_rate));
  w.PutU64(elgr.frames.size());
  for (const auto& frame : elgr.frames) {
    for (double a : frame.amplitudes) w.PutF32(static_cast<float>(a));
  }
  return w.Release();
}

Electrodogram DecodeElectrodogram(std::string_view bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 4 || r.GetBytes(4) != "ELGR") throw FormatError("not an ELGR file");
  const uint32_t version = r.GetU32();
  if (version != kElectrodogramVersion) {
    throw VersionError("unsupported ELGR version " + std::to_string(version));
  }
  Electrodogram elgr;
  elgr.num_channels = static_cast<int>(r.GetU32());
  elgr.num_maxima = static_cast<int>(r.GetU32());
  elgr.hop = static_cast<int>(r.GetU32());
  elgr.sample_rate = static_cast<int>(r.GetU32());
  const uint64_t count = r.GetU64();
  if (elgr.num_channels <= 0) throw FormatError("ELGR file with no channels");
  if (r.remaining() / 4 / elgr.num_channels < count) {
    throw TruncatedError("ELGR payload shorter than its frame count");
  }
  elgr.frames.resize(count);
  for (auto& frame : elgr.frames) {
    frame.amplitudes.resize(elgr.num_channels);
    for (double& a : frame.amplitudes) a = r.GetF32();
    frame.selected_count = CountNonzero(frame.amplitudes);
  }
  return elgr;
}

void WriteElectrodogram(const std::string& path, const Electrodogram& elgr) {
  WriteFileBytes(path, EncodeElectrodogram(elgr));
}

Electrodogram ReadElectrodogram(const std::string& path) {
  return DecodeElectrodogram(ReadFileBytes(path));
}

std::string ElectrodogramCsv(const Electrodogram& elgr) {
  std::string out(kStimulusCsvHeader);
  out += '\n';
  for (size_t f = 0; f < elgr.frames.size(); ++f) {
    const auto& amps = elgr.frames[f].amplitudes;
    for (size_t m = 0; m < amps.size(); ++m) {
      if (amps[m] == 0.0) continue;
      out += std::to_string(f) + "," + std::to_string(m + 1) + "," +
             FormatDouble(static_cast<float>(amps[m])) + "\n";
    }
  }
  return out;
}

}  // namespace electrodenet
