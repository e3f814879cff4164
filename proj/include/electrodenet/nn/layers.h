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

// Layers operate on feature-by-time matrices: column t is frame t. Every
// layer is causal, so column t of the output depends on input columns <= t.

#ifndef ELECTRODENET_NN_LAYERS_H_
#define ELECTRODENET_NN_LAYERS_H_

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace electrodenet::nn {

using Matrix = Eigen::MatrixXd;

enum class LayerKind : uint8_t { kDense = 0, kConv1d = 1, kLstm = 2, kRelu = 3, kCsSelect = 4 };

// custom keeps only strictly positive winners; vanilla keeps the k largest
// values whatever their sign.
enum class CsMode : uint8_t { kCustom = 0, kVanilla = 1 };

struct LayerSpec {
  LayerKind kind = LayerKind::kDense;
  int in_size = 0;
  int out_size = 0;
  int kernel = 0;        // conv1d
  int padding = 0;       // conv1d, left (causal) padding
  CsMode cs_mode = CsMode::kCustom;
  int cs_k = 0;          // cs_select
  int bias_vectors = 1;  // lstm: 1 (b) or 2 (b_ih + b_hh)

  static LayerSpec Dense(int in, int out);
  static LayerSpec Conv1d(int in, int out, int kernel = 3, int padding = 2);
  static LayerSpec Lstm(int in, int hidden, int bias_vectors);
  static LayerSpec Relu(int size);
  static LayerSpec CsSelect(int size, int k, CsMode mode);

  void Validate() const;
  bool operator==(const LayerSpec&) const = default;
};

// Scratch saved by a training forward pass for the backward pass.
struct LayerCache {
  Matrix input;
  Matrix output;
  std::vector<Matrix> aux;
  // cs_select: when set, `mask` is applied instead of being recomputed.
  bool frozen_mask = false;
  Matrix mask;
};

class Layer {
 public:
  explicit Layer(LayerSpec spec) : spec_(spec) {}
  virtual ~Layer() = default;

  const LayerSpec& spec() const { return spec_; }
  std::vector<Matrix>& params() { return params_; }
  const std::vector<Matrix>& params() const { return params_; }
  size_t ParamCount() const;

  virtual Matrix Forward(const Matrix& x) const = 0;
  virtual Matrix ForwardTrain(const Matrix& x, LayerCache& cache) const;
  // Returns dLoss/dInput and adds parameter gradients into `grads`, which
  // is shaped like params().
  virtual Matrix Backward(const LayerCache& cache, const Matrix& grad_out,
                          std::vector<Matrix>& grads) const = 0;
  // Glorot-uniform weights, zero biases.
  virtual void Initialize(std::mt19937_64& rng);
  virtual std::unique_ptr<Layer> Clone() const = 0;

 protected:
  LayerSpec spec_;
  std::vector<Matrix> params_;
};

// Builds a layer with zero parameters. Throws InvalidArgument on a bad spec.
std::unique_ptr<Layer> MakeLayer(const LayerSpec& spec);

// Indices chosen by the channel-selection layer on one column, ascending.
std::vector<int> CsSelectIndices(const Eigen::Ref<const Eigen::VectorXd>& x, int k, CsMode mode);
Eigen::VectorXd CsSelectForward(const Eigen::Ref<const Eigen::VectorXd>& x, int k, CsMode mode);

}  // namespace electrodenet::nn

#endif  // ELECTRODENET_NN_LAYERS_H_
