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

#ifndef ELECTRODENET_NN_TRAINER_H_
#define ELECTRODENET_NN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "electrodenet/nn/network.h"

namespace electrodenet::nn {

// M_channels trains against full envelope frames; N_of_M against the
// frames after maxima selection. The loss covers all M channels either way.
enum class TargetMode { kMChannels, kNOfM };

struct TrainConfig {
  double learning_rate = 1e-4;
  int epochs = 100;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int batch_size = 128;      // frames per step
  int sequence_length = 32;  // window length for conv1d / lstm networks
  uint64_t seed = 1;
  TargetMode target_mode = TargetMode::kMChannels;

  void Validate() const;
};

// One utterance: input is features x T, target is outputs x T, both in
// normalized units.
struct TrainingSequence {
  Matrix input;
  Matrix target;
};

class AdamOptimizer {
 public:
  AdamOptimizer(const Network& network, const TrainConfig& cfg);
  void Step(Network& network, const Gradients& grads);

 private:
  double lr_, beta1_, beta2_, eps_;
  long step_ = 0;
  Gradients m_, v_;
};

struct TrainHistory {
  std::vector<double> epoch_loss;  // mean MAE over each epoch's batches
};

using EpochCallback = std::function<void(int epoch, double loss)>;

// Frame-shuffled minibatches for frame-wise networks; shuffled windows of
// sequence_length frames for temporal ones. Deterministic given cfg.seed.
// Weights are not re-initialized here.
TrainHistory Train(Network& network, const std::vector<TrainingSequence>& data,
                   const TrainConfig& cfg, const EpochCallback& on_epoch = {});

}  // namespace electrodenet::nn

#endif  // ELECTRODENET_NN_TRAINER_H_
