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

#ifndef ELECTRODENET_NN_NETWORK_H_
#define ELECTRODENET_NN_NETWORK_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "electrodenet/nn/layers.h"

#ifndef ELECTRODENET_LSTM_BIAS_VECTORS
#define ELECTRODENET_LSTM_BIAS_VECTORS 2
#endif

namespace electrodenet::nn {

inline constexpr int kDefaultLstmBiasVectors = ELECTRODENET_LSTM_BIAS_VECTORS;
inline constexpr int kInputBins = 65;
inline constexpr int kOutputChannels = 22;

enum class ArchId : uint8_t { kDnn = 0, kCnn = 1, kLstm = 2, kDnnCs = 3, kDnnCsVt = 4 };

std::string_view ArchName(ArchId arch);  // "dnn", "cnn", "lstm", "dnn-cs", "dnn-cs-vt"
ArchId ParseArch(std::string_view name);
bool IsCsArch(ArchId arch);

// One gradient matrix per parameter matrix, per layer.
using Gradients = std::vector<std::vector<Matrix>>;

class Network {
 public:
  // Parameters start at zero; call Initialize() for random weights.
  Network(ArchId arch, std::vector<LayerSpec> specs);
  Network(const Network& other);
  Network& operator=(const Network& other);
  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  ArchId arch() const { return arch_; }
  size_t num_layers() const { return layers_.size(); }
  Layer& layer(size_t i) { return *layers_[i]; }
  const Layer& layer(size_t i) const { return *layers_[i]; }
  std::vector<LayerSpec> specs() const;

  int input_size() const { return layers_.front()->spec().in_size; }
  int output_size() const { return layers_.back()->spec().out_size; }
  // True when any layer looks across frames (conv1d or lstm).
  bool is_temporal() const;
  size_t ParamCount() const;

  // Corpus constant that raw FFT magnitudes (and envelope targets) were
  // divided by for training. Forward() itself works in normalized units.
  double feature_scale() const { return feature_scale_; }
  void set_feature_scale(double scale) { feature_scale_ = scale; }

  void Initialize(uint64_t seed);

  // x is input_size x T in normalized units; returns output_size x T.
  Matrix Forward(const Matrix& x) const;

  using Tape = std::vector<LayerCache>;
  Matrix ForwardTrain(const Matrix& x, Tape& tape) const;
  Gradients ZeroGradients() const;
  // Accumulates parameter gradients for dLoss/dOutput = grad_output.
  void Backward(const Tape& tape, const Matrix& grad_output, Gradients& grads) const;

 private:
  ArchId arch_;
  std::vector<std::unique_ptr<Layer>> layers_;
  double feature_scale_ = 1.0;
};

// The five architectures. n_topk only matters for the CS variants.
std::vector<LayerSpec> ArchitectureSpecs(ArchId arch, int n_topk = 12,
                                         int lstm_bias_vectors = kDefaultLstmBiasVectors);
Network BuildNetwork(ArchId arch, int n_topk = 12,
                     int lstm_bias_vectors = kDefaultLstmBiasVectors);

size_t CountParams(const Network& network);

// Mean absolute error over every element; d/dy uses sign with sign(0) = 0.
double MaeLoss(const Matrix& output, const Matrix& target, Matrix* grad = nullptr,
               double normalizer = 0.0);

}  // namespace electrodenet::nn

#endif  // ELECTRODENET_NN_NETWORK_H_
