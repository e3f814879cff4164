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

#include "electrodenet/ace.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "electrodenet/errors.h"

namespace electrodenet {

MappingConfig MappingConfig::FromSaturation(double sat_level) {
  MappingConfig map;
  map.sat_level = sat_level;
  map.base_level = 4.0 / 256.0 * sat_level;
  return map;
}

void MappingConfig::Validate() const {
  if (!(base_level >= 0.0 && base_level < sat_level)) {
    throw InvalidArgument("mapping requires 0 <= base_level < sat_level");
  }
  if (!(rho > 0.0)) throw InvalidArgument("mapping requires rho > 0");
}

double CalibrateSaturationLevel(std::span<const ChannelEnvelopeFrame> frames, double percentile) {
  if (frames.empty()) throw InvalidArgument("cannot calibrate mapping on zero frames");
  std::vector<double> maxima;
  maxima.reserve(frames.size());
  for (const auto& f : frames) {
    maxima.push_back(*std::max_element(f.envelopes.begin(), f.envelopes.end()));
  }
  std::sort(maxima.begin(), maxima.end());
  const double pos = percentile / 100.0 * (maxima.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, maxima.size() - 1);
  const double level = maxima[lo] + (pos - lo) * (maxima[hi] - maxima[lo]);
  if (!(level > 0.0)) throw InvalidArgument("calibration corpus is silent");
  return level;
}

std::vector<int> MaximaIndices(std::span<const double> values, int n) {
  if (n < 1 || n > static_cast<int>(values.size())) {
    throw InvalidArgument("maxima count " + std::to_string(n) + " outside [1, " +
                          std::to_string(values.size()) + "]");
  }
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&values](int a, int b) { return values[a] > values[b]; });
  order.resize(n);
  std::sort(order.begin(), order.end());
  return order;
}

ChannelEnvelopeFrame SelectMaxima(const ChannelEnvelopeFrame& envelopes, int n) {
  ChannelEnvelopeFrame out;
  out.envelopes.assign(envelopes.envelopes.size(), 0.0);
  for (int idx : MaximaIndices(envelopes.envelopes, n)) {
    out.envelopes[idx] = envelopes.envelopes[idx];
  }
  return out;
}

double LoudnessGrowth(double envelope, const MappingConfig& map) {
  const double x = std::clamp((envelope - map.base_level) / (map.sat_level - map.base_level), 0.0, 1.0);
  return std::log1p(map.rho * x) / std::log1p(map.rho);
}

StimulusFrame ApplyLgf(const ChannelEnvelopeFrame& selected, const MappingConfig& map) {
  StimulusFrame out;
  out.amplitudes.assign(selected.envelopes.size(), 0.0);
  for (size_t m = 0; m < selected.envelopes.size(); ++m) {
    const double v = selected.envelopes[m];
    if (v == 0.0) continue;
    out.amplitudes[m] = LoudnessGrowth(v, map);
  }
  out.selected_count = CountNonzero(out.amplitudes);
  return out;
}

Electrodogram MapSelectedFrames(std::vector<ChannelEnvelopeFrame> selected,
                                const StrategyConfig& cfg, int num_maxima,
                                const MappingConfig& map) {
  map.Validate();
  Electrodogram elgr;
  elgr.num_channels = cfg.num_channels();
  elgr.num_maxima = num_maxima;
  elgr.hop = cfg.hop;
  elgr.sample_rate = cfg.sample_rate;
  elgr.frames.reserve(selected.size());
  for (const auto& frame : selected) elgr.frames.push_back(ApplyLgf(frame, map));
  elgr.envelopes = std::move(selected);
  return elgr;
}

Electrodogram AceEncode(std::span<const double> signal, const StrategyConfig& cfg,
                        const MappingConfig& map) {
  EnvelopeStream stream = EncodeEnvelopeStream(signal, cfg);
  std::vector<ChannelEnvelopeFrame> selected;
  selected.reserve(stream.size());
  for (const auto& env : stream.envelopes) selected.push_back(SelectMaxima(env, cfg.num_maxima));
  return MapSelectedFrames(std::move(selected), cfg, cfg.num_maxima, map);
}

}  // namespace electrodenet
