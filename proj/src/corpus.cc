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

#include "electrodenet/corpus.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "electrodenet/binary_io.h"
#include "electrodenet/csv.h"
#include "electrodenet/errors.h"
#include "electrodenet/fft.h"
#include "electrodenet/vocoder.h"
#include "electrodenet/wav.h"
#include "json.hpp"

namespace electrodenet {
namespace {

std::vector<double> PeriodicHann(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  return w;
}

// Sum of frame power spectra and the number of frames.
size_t AccumulateWelch(std::span<const double> x, int nfft, std::vector<double>& acc) {
  const Fft fft(nfft);
  const std::vector<double> w = PeriodicHann(nfft);
  double wpow = 0.0;
  for (double v : w) wpow += v * v;
  std::vector<double> frame(nfft);
  size_t frames = 0;
  const size_t hop = nfft / 2;
  for (size_t start = 0; frames == 0 || start + nfft <= x.size(); start += hop) {
    for (int i = 0; i < nfft; ++i) {
      frame[i] = start + i < x.size() ? w[i] * x[start + i] : 0.0;
    }
    const auto spec = fft.ForwardReal(frame);
    for (int k = 0; k <= nfft / 2; ++k) acc[k] += std::norm(spec[k]) / wpow;
    ++frames;
  }
  return frames;
}

std::string TagForRange(const std::string& prefix, int i) { return prefix + std::to_string(i); }

// Expands "L9-16,foo" into {"L9", ..., "L16", "foo"}.
std::set<std::string> ExpandTags(std::string_view list) {
  static const std::regex kRange(R"(([A-Za-z_]*)(\d+)-(\d+))");
  std::set<std::string> tags;
  for (const std::string& item : SplitString(list, ',')) {
    if (item.empty()) continue;
    std::smatch m;
    if (std::regex_match(item, m, kRange)) {
      const int lo = std::stoi(m[2]), hi = std::stoi(m[3]);
      if (hi < lo) throw InvalidArgument("empty tag range " + item);
      for (int i = lo; i <= hi; ++i) tags.insert(TagForRange(m[1], i));
    } else {
      tags.insert(item);
    }
  }
  return tags;
}

std::filesystem::path ResolveNear(const std::string& base_file, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  return std::filesystem::path(base_file).parent_path() / p;
}

}  // namespace

std::vector<double> MixAtSnr(std::span<const double> clean, std::span<const double> noise,
                             double snr_db, size_t offset) {
  if (std::isinf(snr_db) && snr_db > 0) return std::vector<double>(clean.begin(), clean.end());
  if (offset + clean.size() > noise.size()) {
    throw InvalidArgument("noise (" + std::to_string(noise.size()) +
                          " samples) is shorter than clean speech at offset " +
                          std::to_string(offset));
  }
  const auto segment = noise.subspan(offset, clean.size());
  const double rms_clean = Rms(std::vector<double>(clean.begin(), clean.end()));
  const double rms_noise = Rms(std::vector<double>(segment.begin(), segment.end()));
  if (!(rms_clean > 0.0)) throw InvalidArgument("clean signal has zero RMS");
  if (!(rms_noise > 0.0)) throw InvalidArgument("noise segment has zero RMS");
  const double gain = rms_clean / (rms_noise * std::pow(10.0, snr_db / 20.0));
  std::vector<double> out(clean.size());
  for (size_t i = 0; i < clean.size(); ++i) out[i] = clean[i] + gain * segment[i];
  return out;
}

double MeasureSnr(std::span<const double> clean, std::span<const double> mixture) {
  if (clean.size() != mixture.size()) throw InvalidArgument("length mismatch");
  std::vector<double> noise(clean.size());
  for (size_t i = 0; i < clean.size(); ++i) noise[i] = mixture[i] - clean[i];
  const double rn = Rms(noise);
  if (rn == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(Rms(std::vector<double>(clean.begin(), clean.end())) / rn);
}

uint64_t Fnv1a(std::string_view bytes, uint64_t hash) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

size_t NoiseOffset(uint64_t seed, const std::string& sentence_id, const std::string& noise,
                   double snr_db, size_t clean_len, size_t noise_len) {
  if (noise_len < clean_len) throw InvalidArgument("noise shorter than clean speech");
  ByteWriter key;
  key.PutU64(seed);
  key.PutBytes(sentence_id);
  key.PutU8(0);
  key.PutBytes(noise);
  key.PutU8(0);
  key.PutBytes(FormatSnr(snr_db));
  return static_cast<size_t>(Fnv1a(key.bytes()) % (noise_len - clean_len + 1));
}

std::vector<double> GenerateWhite(uint64_t seed, size_t length) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> out(length);
  for (double& v : out) v = gauss(rng);
  return out;
}

std::vector<double> WelchPsd(std::span<const double> x, int nfft) {
  if (!IsPowerOfTwo(nfft)) throw InvalidArgument("Welch size must be a power of two");
  std::vector<double> acc(nfft / 2 + 1, 0.0);
  const size_t frames = AccumulateWelch(x, nfft, acc);
  for (double& v : acc) v /= static_cast<double>(frames);
  return acc;
}

std::vector<double> LongTermSpectrum(std::span<const Utterance> corpus, int nfft) {
  if (corpus.empty()) throw InvalidArgument("long-term spectrum of an empty corpus");
  if (!IsPowerOfTwo(nfft)) throw InvalidArgument("Welch size must be a power of two");
  std::vector<double> acc(nfft / 2 + 1, 0.0);
  size_t frames = 0;
  for (const Utterance& u : corpus) frames += AccumulateWelch(u.samples, nfft, acc);
  for (double& v : acc) v /= static_cast<double>(frames);
  return acc;
}

std::vector<double> FirPowerResponse(std::span<const double> taps, int nfft) {
  std::vector<double> padded(nfft, 0.0);
  if (taps.size() > static_cast<size_t>(nfft)) throw InvalidArgument("FIR longer than FFT");
  std::copy(taps.begin(), taps.end(), padded.begin());
  const auto spec = Fft(nfft).ForwardReal(padded);
  std::vector<double> out(nfft / 2 + 1);
  for (int k = 0; k <= nfft / 2; ++k) out[k] = std::norm(spec[k]);
  return out;
}

std::string_view NoiseKindName(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kSsn:
      return "ssn";
    case NoiseKind::kWhite:
      return "white";
    case NoiseKind::kFile:
      return "file";
  }
  return "?";
}

NoiseKind ParseNoiseKind(std::string_view name) {
  if (name == "ssn") return NoiseKind::kSsn;
  if (name == "white") return NoiseKind::kWhite;
  if (name == "file") return NoiseKind::kFile;
  throw InvalidArgument("unknown noise kind '" + std::string(name) + "' (ssn, white, file)");
}

std::string NoiseSpec::label() const { return tag.empty() ? std::string(NoiseKindName(kind)) : tag; }

NoiseSpec FitSsn(std::span<const Utterance> corpus, uint64_t seed, int num_taps, int welch_nfft) {
  if (corpus.empty()) throw InvalidArgument("cannot fit SSN to an empty corpus");
  if (!IsPowerOfTwo(num_taps)) throw InvalidArgument("SSN tap count must be a power of two");
  const std::vector<double> ltas = LongTermSpectrum(corpus, welch_nfft);

  // Desired amplitude on the num_taps-point grid, interpolated from the
  // Welch grid.
  const int half = num_taps / 2;
  const double ratio = static_cast<double>(welch_nfft) / num_taps;
  std::vector<std::complex<double>> h(num_taps);
  for (int k = 0; k < half; ++k) {
    const double pos = k * ratio;
    const int i = static_cast<int>(pos);
    const double frac = pos - i;
    const double lo = std::sqrt(ltas[i]);
    const double hi = std::sqrt(ltas[std::min<int>(i + 1, ltas.size() - 1)]);
    const double amp = lo + frac * (hi - lo);
    // Delay (N - 1) / 2 gives a symmetric, even-length impulse response.
    const double phase = -std::numbers::pi * k * (num_taps - 1) / num_taps;
    h[k] = std::polar(amp, phase);
    if (k > 0) h[num_taps - k] = std::conj(h[k]);
  }
  h[half] = 0.0;  // even-length linear phase forces a zero at Nyquist
  const auto impulse = Fft(num_taps).Inverse(h);

  NoiseSpec spec;
  spec.kind = NoiseKind::kSsn;
  spec.seed = seed;
  spec.ssn_taps.resize(num_taps);
  double energy = 0.0;
  for (int n = 0; n < num_taps; ++n) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (n + 0.5) / num_taps);
    spec.ssn_taps[n] = w * impulse[n].real();
    energy += spec.ssn_taps[n] * spec.ssn_taps[n];
  }
  if (!(energy > 0.0)) throw InvalidArgument("corpus long-term spectrum is all zero");
  for (double& t : spec.ssn_taps) t /= std::sqrt(energy);
  return spec;
}

NoiseBuffer GenerateNoise(const NoiseSpec& spec, size_t length) {
  NoiseBuffer out;
  switch (spec.kind) {
    case NoiseKind::kWhite:
      out.samples = GenerateWhite(spec.seed, length);
      break;
    case NoiseKind::kSsn: {
      if (spec.ssn_taps.empty()) throw InvalidArgument("SSN noise spec has no filter taps");
      const size_t taps = spec.ssn_taps.size();
      const std::vector<double> white = GenerateWhite(spec.seed, length + taps - 1);
      out.samples.assign(length, 0.0);
      for (size_t n = 0; n < length; ++n) {
        double acc = 0.0;
        const double* x = white.data() + n + taps - 1;
        for (size_t k = 0; k < taps; ++k) acc += spec.ssn_taps[k] * x[-static_cast<long>(k)];
        out.samples[n] = acc;
      }
      const double rms = Rms(out.samples);
      if (rms > 0.0) {
        for (double& v : out.samples) v /= rms;
      }
      break;
    }
    case NoiseKind::kFile: {
      std::vector<double> file = ReadMonoWav16k(spec.source_path);
      if (file.empty()) throw InvalidArgument("noise file " + spec.source_path + " is empty");
      if (file.size() < length) {
        out.looped = true;
        out.samples.resize(length);
        for (size_t i = 0; i < length; ++i) out.samples[i] = file[i % file.size()];
      } else {
        out.samples = std::move(file);
      }
      break;
    }
  }
  return out;
}

std::vector<double> LoadTaps(const std::string& path) {
  std::vector<double> taps;
  std::istringstream in(ReadFileBytes(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    taps.push_back(ParseDouble(line));
  }
  if (taps.empty()) throw FormatError(path + ": no filter taps");
  return taps;
}

void SaveTaps(const std::string& path, std::span<const double> taps) {
  std::string text;
  for (double t : taps) text += FormatDouble(t) + "\n";
  WriteFileBytes(path, text);
}

NoiseSpec LoadNoiseSpec(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFileBytes(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  NoiseSpec spec;
  spec.kind = ParseNoiseKind(j.value("kind", "white"));
  spec.tag = j.value("tag", "");
  spec.seed = j.value("seed", uint64_t{1});
  if (j.contains("path")) spec.source_path = ResolveNear(path, j["path"]).string();
  if (j.contains("taps_path")) {
    spec.taps_path = j["taps_path"];
    spec.ssn_taps = LoadTaps(ResolveNear(path, spec.taps_path).string());
  }
  if (spec.kind == NoiseKind::kSsn && spec.ssn_taps.empty()) {
    throw FormatError(path + ": ssn noise spec needs taps_path");
  }
  if (spec.kind == NoiseKind::kFile && spec.source_path.empty()) {
    throw FormatError(path + ": file noise spec needs path");
  }
  return spec;
}

void SaveNoiseSpec(const std::string& path, const NoiseSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = NoiseKindName(spec.kind);
  if (!spec.tag.empty()) j["tag"] = spec.tag;
  j["seed"] = spec.seed;
  if (!spec.source_path.empty()) j["path"] = spec.source_path;
  if (spec.kind == NoiseKind::kSsn) {
    std::string taps_path = spec.taps_path;
    if (taps_path.empty()) taps_path = std::filesystem::path(path).stem().string() + ".taps";
    j["taps_path"] = taps_path;
    SaveTaps(ResolveNear(path, taps_path).string(), spec.ssn_taps);
  }
  WriteFileBytes(path, j.dump(2) + "\n");
}

std::vector<ManifestEntry> ParseManifest(std::string_view text) {
  std::vector<ManifestEntry> entries;
  size_t line_no = 0;
  for (const std::string& raw : SplitString(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = SplitString(line, '\t');
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty()) {
      throw FormatError("manifest line " + std::to_string(line_no) +
                        ": expected path<TAB>tag[<TAB>split]");
    }
    entries.push_back({fields[0], fields[1], fields.size() == 3 ? fields[2] : ""});
  }
  return entries;
}

std::vector<ManifestEntry> ReadManifest(const std::string& path) {
  std::vector<ManifestEntry> entries = ParseManifest(ReadFileBytes(path));
  for (auto& e : entries) {
    e.path = std::filesystem::absolute(ResolveNear(path, e.path)).lexically_normal().string();
  }
  return entries;
}

std::string FormatManifest(const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const auto& e : entries) out += e.path + "\t" + e.tag + "\t" + e.split + "\n";
  return out;
}

void WriteManifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
  // Paths are stored relative to the manifest so the directory can move.
  const auto dir = std::filesystem::absolute(path).parent_path();
  std::vector<ManifestEntry> local = entries;
  for (auto& e : local) {
    const auto abs = std::filesystem::absolute(e.path).lexically_normal();
    e.path = abs.lexically_relative(dir).generic_string();
  }
  WriteFileBytes(path, FormatManifest(local));
}

ManifestSplit SplitManifest(const std::vector<ManifestEntry>& corpus, std::string_view rule) {
  std::optional<std::set<std::string>> train, test;
  for (const std::string& part : SplitString(rule, ';')) {
    if (part.empty()) continue;
    const size_t eq = part.find('=');
    if (eq == std::string::npos) throw InvalidArgument("split rule part '" + part + "' has no '='");
    const std::string side = part.substr(0, eq);
    auto tags = ExpandTags(std::string_view(part).substr(eq + 1));
    if (side == "train" && !train) {
      train = std::move(tags);
    } else if (side == "test" && !test) {
      test = std::move(tags);
    } else {
      throw InvalidArgument("split rule side '" + side + "' is unknown or repeated");
    }
  }
  if (!train && !test) throw InvalidArgument("split rule names neither train nor test");
  if (train && test) {
    for (const auto& t : *train) {
      if (test->count(t)) throw InvalidArgument("split rule puts tag " + t + " on both sides");
    }
  }
  ManifestSplit split;
  for (ManifestEntry e : corpus) {
    const bool in_train = train && train->count(e.tag);
    const bool in_test = test && test->count(e.tag);
    bool to_train;
    if (train && test) {
      if (!in_train && !in_test) {
        throw InvalidArgument("split rule leaves " + e.path + " (tag " + e.tag + ") unassigned");
      }
      to_train = in_train;
    } else {
      to_train = train ? in_train : !in_test;
    }
    e.split = to_train ? "train" : "test";
    (to_train ? split.train : split.test).push_back(std::move(e));
  }
  if (split.train.empty()) throw InvalidArgument("split leaves the train side empty");
  if (split.test.empty()) throw InvalidArgument("split leaves the test side empty");
  return split;
}

std::vector<std::string> ManifestPaths(const std::vector<ManifestEntry>& entries,
                                       std::string_view split) {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (split.empty() || e.split == split) out.push_back(e.path);
  }
  return out;
}

}  // namespace electrodenet
