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

#include "electrodenet/synth.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "electrodenet/vocoder.h"

namespace electrodenet {
namespace {

constexpr double kPi = std::numbers::pi;

struct Vowel {
  double f1, f2, f3;
};

constexpr std::array<Vowel, 8> kVowels = {{{730, 1090, 2440},
                                           {270, 2290, 3010},
                                           {300, 870, 2240},
                                           {530, 1840, 2480},
                                           {570, 840, 2410},
                                           {660, 1720, 2410},
                                           {490, 1350, 1690},
                                           {440, 1020, 2240}}};

// Two-pole resonator with unit DC gain; coefficients may change per sample.
struct Resonator {
  double y1 = 0.0, y2 = 0.0;

  double Step(double x, double freq, double bandwidth, double fs) {
    const double r = std::exp(-kPi * bandwidth / fs);
    const double c = 2.0 * r * std::cos(2.0 * kPi * freq / fs);
    const double gain = 1.0 - c + r * r;
    const double y = gain * x + c * y1 - r * r * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

// Raised-cosine fade over `ramp` samples at both ends of a segment.
double Fade(size_t i, size_t len, size_t ramp) {
  const size_t edge = std::min(i, len - 1 - i);
  if (edge >= ramp) return 1.0;
  return 0.5 - 0.5 * std::cos(kPi * static_cast<double>(edge) / ramp);
}

}  // namespace

std::vector<double> SynthesizeSpeech(uint64_t seed, const SynthConfig& cfg) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double fs = cfg.sample_rate;
  const size_t total = static_cast<size_t>(cfg.duration_s * fs);
  std::vector<double> out(total, 0.0);

  const double f0_base = uniform(95.0, 230.0);
  const double formant_scale = uniform(0.9, 1.15);
  const double vibrato_rate = uniform(2.0, 5.0);
  const double vibrato_phase = uniform(0.0, 2.0 * kPi);

  size_t pos = static_cast<size_t>(uniform(0.06, 0.14) * fs);
  const size_t end = total - static_cast<size_t>(0.08 * fs);
  double glottal_phase = 0.0;
  double tilt = 0.0;
  while (pos < end) {
    const bool fricative = uniform(0.0, 1.0) < 0.25;
    size_t len = static_cast<size_t>((fricative ? uniform(0.06, 0.14) : uniform(0.12, 0.28)) * fs);
    len = std::min(len, end - pos);
    if (len < 64) break;
    const size_t ramp = std::min<size_t>(len / 3, static_cast<size_t>(0.02 * fs));
    const double level = uniform(0.5, 1.0);
    if (fricative) {
      std::array<Resonator, 2> res;
      const double fc = uniform(2500.0, 6500.0);
      const double bw = uniform(1000.0, 2000.0);
      double prev = 0.0;
      for (size_t i = 0; i < len; ++i) {
        double v = gauss(rng);
        v = res[0].Step(v, fc, bw, fs);
        v = res[1].Step(v, std::min(fc * 1.2, 7200.0), bw, fs);
        const double hp = v - prev;
        prev = v;
        out[pos + i] += 0.35 * level * hp * Fade(i, len, ramp);
      }
    } else {
      const Vowel& a = kVowels[rng() % kVowels.size()];
      const Vowel& b = kVowels[rng() % kVowels.size()];
      std::array<Resonator, 4> res;
      for (size_t i = 0; i < len; ++i) {
        const double t = static_cast<double>(pos + i) / fs;
        const double u = static_cast<double>(i) / len;
        const double decline = 1.0 - 0.2 * t / cfg.duration_s;
        const double f0 = f0_base * decline *
                          (1.0 + 0.12 * std::sin(2.0 * kPi * vibrato_rate * t + vibrato_phase) +
                           0.1 * (u - 0.5));
        glottal_phase += f0 / fs;
        double src = 0.0;
        if (glottal_phase >= 1.0) {
          glottal_phase -= 1.0;
          src = 1.0;
        }
        // Spectral tilt on the pulse train plus a little aspiration.
        tilt = 0.96 * tilt + src;
        double v = tilt + 0.02 * gauss(rng);
        const double s = formant_scale;
        v = res[0].Step(v, s * (a.f1 + u * (b.f1 - a.f1)), 90.0, fs);
        v = res[1].Step(v, s * (a.f2 + u * (b.f2 - a.f2)), 110.0, fs);
        v = res[2].Step(v, s * (a.f3 + u * (b.f3 - a.f3)), 160.0, fs);
        v = res[3].Step(v, s * 3500.0, 250.0, fs);
        out[pos + i] += level * v * Fade(i, len, ramp);
      }
    }
    pos += len;
    pos += static_cast<size_t>((uniform(0.0, 1.0) < 0.3 ? uniform(0.04, 0.15) : uniform(0.01, 0.03)) * fs);
  }

  const double rms = Rms(out);
  if (rms > 0.0) {
    for (double& v : out) v *= cfg.rms / rms;
  }
  // Low noise floor so pauses are not digital silence.
  for (double& v : out) v += 2e-5 * gauss(rng);
  return out;
}

std::vector<Utterance> SynthCorpus(size_t count, uint64_t seed, const SynthConfig& cfg) {
  std::vector<Utterance> corpus;
  std::mt19937_64 seeds(seed);
  for (size_t i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "synth_%04zu", i + 1);
    corpus.push_back({id, SynthesizeSpeech(seeds(), cfg)});
  }
  return corpus;
}

}  // namespace electrodenet
