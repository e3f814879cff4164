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

// Strategy loading, model training and the resumable scoring grid behind
// the command-line tool.

#ifndef ELECTRODENET_EXPERIMENT_H_
#define ELECTRODENET_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "electrodenet/ace.h"
#include "electrodenet/correlation.h"
#include "electrodenet/corpus.h"
#include "electrodenet/enet.h"
#include "electrodenet/nn/network.h"
#include "electrodenet/nn/trainer.h"
#include "electrodenet/vocoder.h"

namespace electrodenet {

enum class StrategyKind { kAce, kEnet, kEnetCs };

std::string_view StrategyKindName(StrategyKind kind);  // "ace", "enet", "enet-cs"
StrategyKind ParseStrategyKind(std::string_view name);

struct StrategySpec {
  std::string name;
  StrategyKind kind = StrategyKind::kAce;
  std::string model_path;
  int n = 12;  // external maxima for ace and enet
};

// A strategy ready to encode. Network strategies hold their model.
class Strategy {
 public:
  // Throws InvalidArgument when the model's architecture does not suit the
  // strategy kind.
  static Strategy Load(const StrategySpec& spec);
  static Strategy FromNetwork(const StrategySpec& spec, nn::Network network);

  const StrategySpec& spec() const { return spec_; }
  const nn::Network* network() const { return network_.get(); }
  // FNV-1a of the model file bytes ("" for ACE).
  const std::string& model_digest() const { return model_digest_; }

  Electrodogram Encode(std::span<const double> signal, const StrategyConfig& cfg,
                       const MappingConfig& map) const;

 private:
  StrategySpec spec_;
  std::shared_ptr<const nn::Network> network_;
  std::string model_digest_;
};

struct TrainOptions {
  nn::ArchId arch = nn::ArchId::kDnn;
  int n_topk = 12;
  int num_maxima = 12;  // N for N_of_M targets
  int lstm_bias_vectors = nn::kDefaultLstmBiasVectors;
  nn::TrainConfig train;
};

// Initializes from train.seed, sets the dataset's feature scale and trains.
nn::Network TrainDistilled(const DistillationDataset& dataset, const TrainOptions& options,
                           nn::TrainHistory* history = nullptr,
                           const nn::EpochCallback& on_epoch = {});

std::string Hex64(uint64_t v);
uint64_t DigestSamples(std::span<const double> samples);

std::vector<std::string> ParsePredictors(const std::vector<std::string>& names);

struct ExperimentPlan {
  uint64_t seed = 1;
  std::vector<StrategySpec> strategies;
  std::vector<NoiseSpec> noises;
  std::vector<double> snrs;
  std::vector<std::string> predictors = {"stoi", "ncm"};
  // (a, b) strategy names; default: the first strategy against each other.
  std::vector<std::pair<std::string, std::string>> comparisons;
  // Test sentences, either from files or supplied in memory.
  std::vector<std::string> sentence_paths;
  std::vector<Utterance> sentences;
  // Paths used for training; overlap with the test side is an error unless
  // train_set_evaluation is set.
  std::vector<std::string> train_paths;
  bool train_set_evaluation = false;
  StrategyConfig strategy_config;
  MappingConfig mapping;
  bool keep_audio = false;
  std::string out_dir;

  void Validate() const;
};

// JSON plan; relative paths resolve against the plan file's directory.
ExperimentPlan LoadPlan(const std::string& path);

struct ExperimentResult {
  std::vector<ScoreRecord> scores;
  std::vector<CorrelationReport> pooled;
  std::vector<CorrelationReport> per_snr;
  std::map<std::string, CsUsageStats> cs_usage;  // per enet-cs strategy
  size_t cells_total = 0;
  size_t cells_computed = 0;
  size_t cells_reused = 0;
  std::vector<std::string> failures;  // "<cell>: <reason>"
};

// Runs every (strategy, noise, snr, sentence) cell that the journal does
// not already hold, then writes scores.csv, correlation.csv, per_snr.csv,
// mean_scores.csv and scatter.csv into plan.out_dir.
ExperimentResult RunExperiment(const ExperimentPlan& plan, int jobs = 1,
                               std::ostream* log = nullptr);

std::vector<ScoreRecord> ReadScoreTable(const std::string& path);

// Mean score per (strategy, noise, snr, predictor).
CsvTable MeanScoresCsv(const std::vector<ScoreRecord>& scores);

}  // namespace electrodenet

#endif  // ELECTRODENET_EXPERIMENT_H_
