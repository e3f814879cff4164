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

#include "electrodenet/stoi.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "electrodenet/errors.h"
#include "electrodenet/fft.h"
#include "electrodenet/resample.h"

namespace electrodenet {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Frames = std::vector<std::vector<double>>;

// hanning(n + 2) without its zero end points.
std::vector<double> InnerHann(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 1) / (n + 1));
  return w;
}

// Frames start at 0, hop, ... while start < len - frame_len.
Frames WindowedFrames(const std::vector<double>& x, const std::vector<double>& w, int hop) {
  Frames frames;
  const long frame_len = static_cast<long>(w.size());
  for (long start = 0; start < static_cast<long>(x.size()) - frame_len; start += hop) {
    std::vector<double> f(frame_len);
    for (long i = 0; i < frame_len; ++i) f[i] = w[i] * x[start + i];
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<double> OverlapAdd(const Frames& frames, int hop) {
  if (frames.empty()) return {};
  const size_t frame_len = frames[0].size();
  std::vector<double> out((frames.size() - 1) * hop + frame_len, 0.0);
  for (size_t f = 0; f < frames.size(); ++f) {
    for (size_t i = 0; i < frame_len; ++i) out[f * hop + i] += frames[f][i];
  }
  return out;
}

double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Drops frames more than dynamic_range_db below the loudest clean frame
// from both signals, then rebuilds them by overlap-add.
void RemoveSilentFrames(std::vector<double>& x, std::vector<double>& y, double dynamic_range_db,
                        int frame_len, int hop) {
  const std::vector<double> w = InnerHann(frame_len);
  Frames xf = WindowedFrames(x, w, hop);
  Frames yf = WindowedFrames(y, w, hop);
  std::vector<double> energy(xf.size());
  for (size_t f = 0; f < xf.size(); ++f) energy[f] = 20.0 * std::log10(Norm(xf[f]) + kEps);
  const double peak = energy.empty() ? 0.0 : *std::max_element(energy.begin(), energy.end());
  Frames xk, yk;
  for (size_t f = 0; f < xf.size(); ++f) {
    if (peak - dynamic_range_db - energy[f] < 0.0) {
      xk.push_back(std::move(xf[f]));
      yk.push_back(std::move(yf[f]));
    }
  }
  x = OverlapAdd(xk, hop);
  y = OverlapAdd(yk, hop);
}

// Band envelopes: bands x frames.
Frames BandEnvelopes(const std::vector<double>& x, const StoiConfig& cfg,
                     const std::vector<std::vector<double>>& obm) {
  const std::vector<double> w = InnerHann(cfg.frame_len);
  const Frames frames = WindowedFrames(x, w, cfg.frame_len / 2);
  const Fft fft(cfg.fft_size);
  const int bins = cfg.fft_size / 2 + 1;
  Frames tob(cfg.num_bands, std::vector<double>(frames.size(), 0.0));
  std::vector<double> padded(cfg.fft_size, 0.0);
  std::vector<double> power(bins);
  for (size_t t = 0; t < frames.size(); ++t) {
    std::copy(frames[t].begin(), frames[t].end(), padded.begin());
    const auto spec = fft.ForwardReal(padded);
    for (int k = 0; k < bins; ++k) power[k] = std::norm(spec[k]);
    for (int j = 0; j < cfg.num_bands; ++j) {
      double acc = 0.0;
      for (int k = 0; k < bins; ++k) acc += obm[j][k] * power[k];
      tob[j][t] = std::sqrt(acc);
    }
  }
  return tob;
}

}  // namespace

std::vector<std::vector<double>> ThirdOctaveBands(const StoiConfig& cfg) {
  const int bins = cfg.fft_size / 2 + 1;
  std::vector<double> f(bins);
  for (int k = 0; k < bins; ++k) f[k] = static_cast<double>(k) * cfg.internal_rate / cfg.fft_size;
  auto nearest = [&](double target) {
    int best = 0;
    for (int k = 1; k < bins; ++k) {
      if ((f[k] - target) * (f[k] - target) < (f[best] - target) * (f[best] - target)) best = k;
    }
    return best;
  };
  std::vector<std::vector<double>> obm(cfg.num_bands, std::vector<double>(bins, 0.0));
  for (int j = 0; j < cfg.num_bands; ++j) {
    const int lo = nearest(cfg.min_freq * std::pow(2.0, (2.0 * j - 1.0) / 6.0));
    const int hi = nearest(cfg.min_freq * std::pow(2.0, (2.0 * j + 1.0) / 6.0));
    for (int k = lo; k < hi; ++k) obm[j][k] = 1.0;
  }
  return obm;
}

double Stoi(std::span<const double> clean, std::span<const double> processed, int sample_rate,
            const StoiConfig& cfg) {
  if (sample_rate != 16000) {
    throw SampleRateError("STOI input is " + std::to_string(sample_rate) + " Hz, expected 16000 Hz");
  }
  std::vector<double> y(clean.size(), 0.0);
  std::copy_n(processed.begin(), std::min(clean.size(), processed.size()), y.begin());
  std::vector<double> x = Resample(clean, sample_rate, cfg.internal_rate);
  y = Resample(y, sample_rate, cfg.internal_rate);
  RemoveSilentFrames(x, y, cfg.dynamic_range_db, cfg.frame_len, cfg.frame_len / 2);

  const auto obm = ThirdOctaveBands(cfg);
  const Frames xt = BandEnvelopes(x, cfg, obm);
  const Frames yt = BandEnvelopes(y, cfg, obm);
  const int frames = static_cast<int>(xt[0].size());
  const int n = cfg.segment_frames;
  if (frames < n) {
    throw TooShortError("STOI needs at least " + std::to_string(n) + " non-silent frames, got " +
                        std::to_string(frames));
  }
  const double clip = std::pow(10.0, -cfg.beta_db / 20.0);
  double total = 0.0;
  std::vector<double> xs(n), ys(n);
  for (int m = n; m <= frames; ++m) {
    for (int j = 0; j < cfg.num_bands; ++j) {
      double xnorm = 0.0, ynorm = 0.0;
      for (int i = 0; i < n; ++i) {
        xs[i] = xt[j][m - n + i];
        ys[i] = yt[j][m - n + i];
        xnorm += xs[i] * xs[i];
        ynorm += ys[i] * ys[i];
      }
      const double gain = std::sqrt(xnorm) / (std::sqrt(ynorm) + kEps);
      double xmean = 0.0, ymean = 0.0;
      for (int i = 0; i < n; ++i) {
        ys[i] = std::min(ys[i] * gain, xs[i] * (1.0 + clip));
        xmean += xs[i];
        ymean += ys[i];
      }
      xmean /= n;
      ymean /= n;
      double xx = 0.0, yy = 0.0, xy = 0.0;
      for (int i = 0; i < n; ++i) {
        const double a = xs[i] - xmean, b = ys[i] - ymean;
        xx += a * a;
        yy += b * b;
        xy += a * b;
      }
      total += xy / ((std::sqrt(xx) + kEps) * (std::sqrt(yy) + kEps));
    }
  }
  return total / (static_cast<double>(frames - n + 1) * cfg.num_bands);
}

}  // namespace electrodenet
