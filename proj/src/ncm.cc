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

#include "electrodenet/ncm.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "electrodenet/errors.h"

namespace electrodenet {
namespace {

// Section Q values of a 4th-order Butterworth response.
constexpr std::array<double, 2> kButterworthQ = {0.54119610014619701, 1.3065629648763766};

struct Biquad {
  double b0, b1, b2, a1, a2;
  double z1 = 0.0, z2 = 0.0;

  double Step(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }
};

Biquad MakeSection(double f0, double q, int sample_rate, bool highpass) {
  const double w0 = 2.0 * std::numbers::pi * f0 / sample_rate;
  const double c = std::cos(w0);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Biquad s;
  if (highpass) {
    s.b0 = (1.0 + c) / 2.0 / a0;
    s.b1 = -(1.0 + c) / a0;
  } else {
    s.b0 = (1.0 - c) / 2.0 / a0;
    s.b1 = (1.0 - c) / a0;
  }
  s.b2 = s.b0;
  s.a1 = -2.0 * c / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

void Filter4(std::vector<double>& x, double f0, int sample_rate, bool highpass) {
  for (double q : kButterworthQ) {
    Biquad s = MakeSection(f0, q, sample_rate, highpass);
    for (double& v : x) v = s.Step(v);
  }
}

double HzToMel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double MelToHz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

double Importance(double f, const NcmConfig& cfg) {
  const auto& fs = cfg.importance_freqs;
  const auto& vs = cfg.importance_values;
  if (f <= fs.front()) return vs.front();
  if (f >= fs.back()) return vs.back();
  size_t i = 1;
  while (fs[i] < f) ++i;
  const double t = std::log(f / fs[i - 1]) / std::log(fs[i] / fs[i - 1]);
  return vs[i - 1] + t * (vs[i] - vs[i - 1]);
}

// Normalized covariance; 0 when either envelope is constant.
double EnvelopeCorrelation(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

void NcmConfig::Validate() const {
  if (num_bands < 1) throw InvalidArgument("NCM needs at least one band");
  if (!(low_hz > 0.0 && high_hz > low_hz)) throw InvalidArgument("NCM band range is empty");
  if (importance_freqs.size() != importance_values.size() || importance_freqs.size() < 2) {
    throw InvalidArgument("NCM importance table needs matching frequency/value columns");
  }
  for (size_t i = 1; i < importance_freqs.size(); ++i) {
    if (!(importance_freqs[i] > importance_freqs[i - 1])) {
      throw InvalidArgument("NCM importance frequencies must increase");
    }
  }
  if (!(snr_ceiling_db > snr_floor_db)) throw InvalidArgument("NCM SNR range is empty");
}

std::vector<NcmBand> NcmBands(const NcmConfig& cfg) {
  cfg.Validate();
  const double lo = HzToMel(cfg.low_hz);
  const double step = (HzToMel(cfg.high_hz) - lo) / cfg.num_bands;
  std::vector<NcmBand> bands(cfg.num_bands);
  double total = 0.0;
  for (int j = 0; j < cfg.num_bands; ++j) {
    bands[j].low_hz = MelToHz(lo + j * step);
    bands[j].high_hz = MelToHz(lo + (j + 1) * step);
    bands[j].centre_hz = MelToHz(lo + (j + 0.5) * step);
    bands[j].weight = Importance(bands[j].centre_hz, cfg);
    total += bands[j].weight;
  }
  for (auto& b : bands) b.weight /= total;
  return bands;
}

std::vector<double> NcmBandEnvelope(std::span<const double> x, const NcmBand& band,
                                    int sample_rate, const NcmConfig& cfg) {
  std::vector<double> v(x.begin(), x.end());
  Filter4(v, band.low_hz, sample_rate, true);
  Filter4(v, band.high_hz, sample_rate, false);
  for (double& s : v) s = std::abs(s);
  Filter4(v, cfg.envelope_cutoff_hz, sample_rate, false);
  const int step = sample_rate / cfg.envelope_rate;
  std::vector<double> env;
  env.reserve(v.size() / step + 1);
  for (size_t i = 0; i < v.size(); i += step) env.push_back(v[i]);
  return env;
}

double Ncm(std::span<const double> clean, std::span<const double> processed, int sample_rate,
           const NcmConfig& cfg) {
  if (sample_rate != 16000) {
    throw SampleRateError("NCM input is " + std::to_string(sample_rate) + " Hz, expected 16000 Hz");
  }
  if (clean.size() < static_cast<size_t>(cfg.min_duration_s * sample_rate)) {
    throw TooShortError("NCM input shorter than " + std::to_string(cfg.min_duration_s) + " s");
  }
  std::vector<double> y(clean.size(), 0.0);
  std::copy_n(processed.begin(), std::min(clean.size(), processed.size()), y.begin());

  double score = 0.0;
  for (const NcmBand& band : NcmBands(cfg)) {
    const double r = EnvelopeCorrelation(NcmBandEnvelope(clean, band, sample_rate, cfg),
                                         NcmBandEnvelope(y, band, sample_rate, cfg));
    const double r2 = r * r;
    double snr = r2 >= 1.0 ? cfg.snr_ceiling_db : 10.0 * std::log10(r2 / (1.0 - r2));
    snr = std::clamp(snr, cfg.snr_floor_db, cfg.snr_ceiling_db);
    const double ti = (snr - cfg.snr_floor_db) / (cfg.snr_ceiling_db - cfg.snr_floor_db);
    score += band.weight * ti;
  }
  return std::clamp(score, 0.0, 1.0);
}

}  // namespace electrodenet
