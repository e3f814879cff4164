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

#include "electrodenet/enet.h"

#include <algorithm>
#include <cmath>

#include "electrodenet/csv.h"
#include "electrodenet/errors.h"
#include "electrodenet/wav.h"

namespace electrodenet {
namespace {

nn::Matrix SpectraMatrix(const EnvelopeStream& stream, int num_bins) {
  nn::Matrix m(num_bins, static_cast<Eigen::Index>(stream.size()));
  for (size_t t = 0; t < stream.size(); ++t) {
    m.col(t) = Eigen::Map<const Eigen::VectorXd>(stream.spectra[t].magnitudes.data(), num_bins);
  }
  return m;
}

nn::Matrix EnvelopeMatrix(const EnvelopeStream& stream, int num_channels) {
  nn::Matrix m(num_channels, static_cast<Eigen::Index>(stream.size()));
  for (size_t t = 0; t < stream.size(); ++t) {
    m.col(t) = Eigen::Map<const Eigen::VectorXd>(stream.envelopes[t].envelopes.data(), num_channels);
  }
  return m;
}

std::vector<ChannelEnvelopeFrame> ToFrames(const nn::Matrix& m) {
  std::vector<ChannelEnvelopeFrame> frames(m.cols());
  for (Eigen::Index t = 0; t < m.cols(); ++t) {
    frames[t].envelopes.assign(m.col(t).data(), m.col(t).data() + m.rows());
  }
  return frames;
}

void CheckNetworkShape(const nn::Network& network, const StrategyConfig& cfg) {
  if (network.input_size() != cfg.num_bins() || network.output_size() != cfg.num_channels()) {
    throw InvalidArgument("network shape " + std::to_string(network.input_size()) + " -> " +
                          std::to_string(network.output_size()) + " does not match L = " +
                          std::to_string(cfg.num_bins()) + ", M = " +
                          std::to_string(cfg.num_channels()));
  }
  if (!(network.feature_scale() > 0.0)) throw InvalidArgument("network feature scale must be > 0");
}

}  // namespace

size_t DistillationDataset::pair_count() const {
  size_t n = 0;
  for (const auto& s : spectra) n += static_cast<size_t>(s.cols());
  return n;
}

std::vector<size_t> DistillationDataset::boundaries() const {
  std::vector<size_t> out;
  size_t offset = 0;
  for (size_t u = 0; u + 1 < spectra.size(); ++u) {
    offset += static_cast<size_t>(spectra[u].cols());
    out.push_back(offset);
  }
  return out;
}

DistillationDataset BuildDataset(std::span<const Utterance> corpus, const StrategyConfig& cfg,
                                 const std::string& corpus_id) {
  cfg.Validate();
  DistillationDataset ds;
  ds.corpus_id = corpus_id;
  for (const Utterance& u : corpus) {
    EnvelopeStream stream = EncodeEnvelopeStream(u.samples, cfg);
    ds.utterance_ids.push_back(u.id);
    ds.spectra.push_back(SpectraMatrix(stream, cfg.num_bins()));
    ds.envelopes.push_back(EnvelopeMatrix(stream, cfg.num_channels()));
  }
  return ds;
}

DistillationDataset BuildDatasetFromFiles(std::span<const std::string> paths,
                                          const StrategyConfig& cfg,
                                          const std::string& corpus_id) {
  cfg.Validate();
  DistillationDataset ds;
  ds.corpus_id = corpus_id;
  for (const std::string& path : paths) {
    std::vector<double> samples;
    try {
      samples = ReadMonoWav16k(path);
    } catch (const std::exception& e) {
      ds.errors.push_back(path + ": " + e.what());
      continue;
    }
    EnvelopeStream stream = EncodeEnvelopeStream(samples, cfg);
    ds.utterance_ids.push_back(path);
    ds.spectra.push_back(SpectraMatrix(stream, cfg.num_bins()));
    ds.envelopes.push_back(EnvelopeMatrix(stream, cfg.num_channels()));
  }
  return ds;
}

double ComputeFeatureScale(const DistillationDataset& dataset, double percentile) {
  std::vector<double> values;
  for (const auto& s : dataset.spectra) {
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s.data()[i] > 0.0) values.push_back(s.data()[i]);
    }
  }
  if (values.empty()) return 1.0;
  const size_t k = std::min(values.size() - 1,
                            static_cast<size_t>(std::floor(percentile / 100.0 * (values.size() - 1))));
  std::nth_element(values.begin(), values.begin() + k, values.end());
  return values[k];
}

std::vector<nn::TrainingSequence> MakeTrainingSet(const DistillationDataset& dataset,
                                                  double feature_scale, nn::TargetMode mode,
                                                  int num_maxima) {
  if (!(feature_scale > 0.0)) throw InvalidArgument("feature scale must be > 0");
  std::vector<nn::TrainingSequence> out;
  out.reserve(dataset.num_utterances());
  for (size_t u = 0; u < dataset.num_utterances(); ++u) {
    nn::TrainingSequence seq;
    seq.input = dataset.spectra[u] / feature_scale;
    seq.target = dataset.envelopes[u] / feature_scale;
    if (mode == nn::TargetMode::kNOfM) {
      for (Eigen::Index t = 0; t < seq.target.cols(); ++t) {
        std::vector<double> col(seq.target.col(t).data(), seq.target.col(t).data() + seq.target.rows());
        std::vector<int> keep = MaximaIndices(col, num_maxima);
        seq.target.col(t).setZero();
        for (int idx : keep) seq.target(idx, t) = col[idx];
      }
    }
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<ChannelEnvelopeFrame> NetworkEnvelopes(std::span<const double> signal,
                                                   const nn::Network& network,
                                                   const StrategyConfig& cfg) {
  CheckNetworkShape(network, cfg);
  EnvelopeStream stream = EncodeEnvelopeStream(signal, cfg);
  if (stream.size() == 0) return {};
  const double scale = network.feature_scale();
  nn::Matrix out = network.Forward(SpectraMatrix(stream, cfg.num_bins()) / scale) * scale;
  return ToFrames(out.cwiseMax(0.0));
}

Electrodogram ElectrodeNetEncode(std::span<const double> signal, const nn::Network& network,
                                 const StrategyConfig& cfg, const MappingConfig& map) {
  if (nn::IsCsArch(network.arch())) {
    throw InvalidArgument("ElectrodeNet encoding needs a dnn, cnn or lstm model, got " +
                          std::string(nn::ArchName(network.arch())));
  }
  std::vector<ChannelEnvelopeFrame> selected;
  for (const auto& env : NetworkEnvelopes(signal, network, cfg)) {
    selected.push_back(SelectMaxima(env, cfg.num_maxima));
  }
  return MapSelectedFrames(std::move(selected), cfg, cfg.num_maxima, map);
}

int NetworkTopK(const nn::Network& network) {
  for (size_t l = 0; l < network.num_layers(); ++l) {
    if (network.layer(l).spec().kind == nn::LayerKind::kCsSelect) return network.layer(l).spec().cs_k;
  }
  throw InvalidArgument("network has no channel-selection layer");
}

Electrodogram ElectrodeNetCsEncode(std::span<const double> signal, const nn::Network& network,
                                   const StrategyConfig& cfg, const MappingConfig& map) {
  if (!nn::IsCsArch(network.arch())) {
    throw InvalidArgument("ElectrodeNet-CS encoding needs a dnn-cs or dnn-cs-vt model, got " +
                          std::string(nn::ArchName(network.arch())));
  }
  const int n_topk = NetworkTopK(network);
  return MapSelectedFrames(NetworkEnvelopes(signal, network, cfg), cfg, n_topk, map);
}

void CsUsageStats::Add(int selected_count) {
  ++histogram[selected_count];
  ++frames;
}

void CsUsageStats::Merge(const CsUsageStats& other) {
  for (const auto& [n_cs, count] : other.histogram) histogram[n_cs] += count;
  frames += other.frames;
}

void CsUsageStats::Finalize() {
  size_t below = 0, equal = 0, above = 0;
  for (const auto& [n_cs, count] : histogram) {
    if (n_cs < n_topk) {
      below += count;
    } else if (n_cs == n_topk) {
      equal += count;
    } else {
      above += count;
    }
  }
  if (frames == 0) {
    pct_below = pct_equal = pct_above = 0.0;
    return;
  }
  const double total = static_cast<double>(frames);
  pct_below = 100.0 * below / total;
  pct_equal = 100.0 * equal / total;
  pct_above = 100.0 * above / total;
}

std::string CsUsageStats::ToCsv() const {
  std::string out(kCsUsageHeader);
  out += '\n';
  for (const auto& [n_cs, count] : histogram) {
    out += std::to_string(n_cs) + "," + std::to_string(count) + "," +
           FormatDouble(100.0 * count / static_cast<double>(frames)) + "\n";
  }
  return out;
}

CsUsageStats CsUsage(const Electrodogram& elgr, int n_topk) {
  CsUsageStats stats;
  stats.n_topk = n_topk;
  for (const auto& frame : elgr.frames) stats.Add(frame.selected_count);
  stats.Finalize();
  return stats;
}

CsUsageStats CsUsage(std::span<const int> selected_counts, int n_topk) {
  CsUsageStats stats;
  stats.n_topk = n_topk;
  for (int n : selected_counts) stats.Add(n);
  stats.Finalize();
  return stats;
}

std::vector<int> ChannelDeactivationReport(const nn::Network& network,
                                           const DistillationDataset& probe) {
  if (probe.pair_count() == 0) throw InvalidArgument("probe dataset is empty");
  std::vector<bool> used(network.output_size(), false);
  for (const auto& spectra : probe.spectra) {
    if (spectra.cols() == 0) continue;
    nn::Matrix out = network.Forward(spectra / network.feature_scale());
    for (Eigen::Index m = 0; m < out.rows(); ++m) {
      if ((out.row(m).array() > 0.0).any()) used[m] = true;
    }
  }
  std::vector<int> never;
  for (size_t m = 0; m < used.size(); ++m) {
    if (!used[m]) never.push_back(static_cast<int>(m) + 1);
  }
  return never;
}

}  // namespace electrodenet
