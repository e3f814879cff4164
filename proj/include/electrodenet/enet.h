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

// Network-based coding strategies. ElectrodeNet swaps ACE envelope
// detection for a network and keeps the external maxima selection;
// ElectrodeNet-CS runs a network whose channel-selection layer replaces
// both stages.

#ifndef ELECTRODENET_ENET_H_
#define ELECTRODENET_ENET_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "electrodenet/ace.h"
#include "electrodenet/dsp.h"
#include "electrodenet/electrodogram.h"
#include "electrodenet/nn/network.h"
#include "electrodenet/nn/trainer.h"

namespace electrodenet {

struct Utterance {
  std::string id;
  std::vector<double> samples;
};

// Paired (FFT magnitudes, ACE envelopes) frames from clean speech, kept
// per utterance: spectra[u] is L x T_u and envelopes[u] is M x T_u.
struct DistillationDataset {
  std::vector<std::string> utterance_ids;
  std::vector<nn::Matrix> spectra;
  std::vector<nn::Matrix> envelopes;
  std::string corpus_id;
  bool clean_only = true;
  // "<path>: <reason>" for inputs that could not be used.
  std::vector<std::string> errors;

  size_t num_utterances() const { return spectra.size(); }
  size_t pair_count() const;
  // Cumulative frame offsets where each utterance after the first starts.
  std::vector<size_t> boundaries() const;
};

DistillationDataset BuildDataset(std::span<const Utterance> corpus, const StrategyConfig& cfg,
                                 const std::string& corpus_id = "");
// Unreadable or non-16 kHz files are recorded in `errors` and skipped.
DistillationDataset BuildDatasetFromFiles(std::span<const std::string> paths,
                                          const StrategyConfig& cfg,
                                          const std::string& corpus_id = "");

// 99th percentile of the positive spectral magnitudes.
double ComputeFeatureScale(const DistillationDataset& dataset, double percentile = 99.0);

// Scales inputs and targets by 1 / feature_scale. N_of_M targets keep only
// the `num_maxima` largest envelopes per frame.
std::vector<nn::TrainingSequence> MakeTrainingSet(const DistillationDataset& dataset,
                                                  double feature_scale, nn::TargetMode mode,
                                                  int num_maxima);

// Runs the analysis filterbank and the network; returns envelope frames in
// envelope units (network output x feature_scale). Plain networks are
// clamped at zero.
std::vector<ChannelEnvelopeFrame> NetworkEnvelopes(std::span<const double> signal,
                                                   const nn::Network& network,
                                                   const StrategyConfig& cfg);

// Throws InvalidArgument if given a CS-type network.
Electrodogram ElectrodeNetEncode(std::span<const double> signal, const nn::Network& network,
                                 const StrategyConfig& cfg, const MappingConfig& map);
// Throws InvalidArgument unless given a CS-type network. N in the result
// is the network's selection budget.
Electrodogram ElectrodeNetCsEncode(std::span<const double> signal, const nn::Network& network,
                                   const StrategyConfig& cfg, const MappingConfig& map);

// Selection budget of a CS network's channel-selection layer.
int NetworkTopK(const nn::Network& network);

struct CsUsageStats {
  std::map<int, size_t> histogram;  // N_CS -> frames
  int n_topk = 0;
  size_t frames = 0;
  double pct_below = 0.0;
  double pct_equal = 0.0;
  double pct_above = 0.0;

  // No frames: percentages are undefined.
  bool empty() const { return frames == 0; }
  void Add(int selected_count);
  void Merge(const CsUsageStats& other);
  // Recomputes the percentages from the histogram.
  void Finalize();
  // "n_cs,frames,percent" rows in ascending N_CS.
  std::string ToCsv() const;
};

CsUsageStats CsUsage(const Electrodogram& elgr, int n_topk);
CsUsageStats CsUsage(std::span<const int> selected_counts, int n_topk);

// 1-based channels that the network output never selects over the probe
// set (nonzero output of a CS network).
std::vector<int> ChannelDeactivationReport(const nn::Network& network,
                                           const DistillationDataset& probe);

}  // namespace electrodenet

#endif  // ELECTRODENET_ENET_H_
