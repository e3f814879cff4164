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

// Noise generation, SNR mixing and train/test manifests.

#ifndef ELECTRODENET_CORPUS_H_
#define ELECTRODENET_CORPUS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "electrodenet/enet.h"

namespace electrodenet {

// Scales `noise` so that 20 log10(rms(clean) / rms(scaled)) == snr_db and
// returns clean + scaled. `noise` must be at least as long as `clean`; the
// first clean.size() samples from `offset` are used. snr_db = +inf returns
// `clean` unchanged. Throws InvalidArgument for zero-RMS clean or noise.
std::vector<double> MixAtSnr(std::span<const double> clean, std::span<const double> noise,
                             double snr_db, size_t offset = 0);

// Measured SNR of a mixture against its clean component.
double MeasureSnr(std::span<const double> clean, std::span<const double> mixture);

// Deterministic crop offset in [0, noise_len - clean_len] for one cell.
size_t NoiseOffset(uint64_t seed, const std::string& sentence_id, const std::string& noise,
                   double snr_db, size_t clean_len, size_t noise_len);

// 64-bit FNV-1a.
uint64_t Fnv1a(std::string_view bytes, uint64_t hash = 0xcbf29ce484222325ULL);

// Zero-mean, unit-variance Gaussian samples from mt19937_64(seed).
std::vector<double> GenerateWhite(uint64_t seed, size_t length);

// One-sided Welch power spectrum: periodic Hann frames of nfft samples at
// 50% overlap, nfft / 2 + 1 bins. Signals shorter than nfft are zero padded.
std::vector<double> WelchPsd(std::span<const double> x, int nfft = 256);

// Long-term average spectrum over a corpus, weighting utterances by their
// frame counts.
std::vector<double> LongTermSpectrum(std::span<const Utterance> corpus, int nfft = 256);

// Squared magnitude response of an FIR at bins k * fs / nfft, k = 0..nfft/2.
std::vector<double> FirPowerResponse(std::span<const double> taps, int nfft);

enum class NoiseKind { kSsn, kWhite, kFile };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kWhite;
  std::string tag;  // label used in score tables; defaults to the kind name
  uint64_t seed = 1;
  std::string source_path;  // file noise
  std::vector<double> ssn_taps;
  std::string taps_path;  // where ssn_taps are persisted, if anywhere

  std::string label() const;
};

std::string_view NoiseKindName(NoiseKind kind);
NoiseKind ParseNoiseKind(std::string_view name);

// Linear-phase FIR (frequency sampling, Hann window) whose magnitude
// follows the corpus long-term spectrum; taps scaled to unit power gain.
// Throws InvalidArgument for an empty corpus.
NoiseSpec FitSsn(std::span<const Utterance> corpus, uint64_t seed = 1, int num_taps = 512,
                 int welch_nfft = 256);

struct NoiseBuffer {
  std::vector<double> samples;
  bool looped = false;  // file noise repeated to reach the requested length
};

// At least `length` samples: exactly `length` of white noise or unit-RMS
// SSN; file noise is returned whole at its own level, looped if short.
NoiseBuffer GenerateNoise(const NoiseSpec& spec, size_t length);

// JSON noise spec: {"kind", "tag", "seed", "path", "taps_path"}; taps are
// stored one per line in taps_path.
NoiseSpec LoadNoiseSpec(const std::string& path);
void SaveNoiseSpec(const std::string& path, const NoiseSpec& spec);
std::vector<double> LoadTaps(const std::string& path);
void SaveTaps(const std::string& path, std::span<const double> taps);

struct ManifestEntry {
  std::string path;
  std::string tag;
  std::string split;
};

// "path<TAB>tag<TAB>split" lines; split may be empty. '#' starts a comment.
std::vector<ManifestEntry> ParseManifest(std::string_view text);
// Returns absolute paths; relative entries are read against the manifest's
// directory.
std::vector<ManifestEntry> ReadManifest(const std::string& path);
std::string FormatManifest(const std::vector<ManifestEntry>& entries);
// Stores paths relative to the manifest's directory.
void WriteManifest(const std::string& path, const std::vector<ManifestEntry>& entries);

struct ManifestSplit {
  std::vector<ManifestEntry> train;
  std::vector<ManifestEntry> test;
};

// Rule "train=<tags>[;test=<tags>]" where <tags> is a comma list of tags or
// ranges like "L9-16" (L9 .. L16). Entries not named go to the side the
// rule leaves implicit. Throws InvalidArgument on overlapping sides, an
// entry left unassigned, or an empty side.
ManifestSplit SplitManifest(const std::vector<ManifestEntry>& corpus, std::string_view rule);

// Entries whose split field equals `split` (all entries when empty).
std::vector<std::string> ManifestPaths(const std::vector<ManifestEntry>& entries,
                                       std::string_view split = {});

}  // namespace electrodenet

#endif  // ELECTRODENET_CORPUS_H_
