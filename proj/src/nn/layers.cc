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

#include "electrodenet/nn/layers.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "electrodenet/errors.h"

namespace electrodenet::nn {
namespace {

void FillUniform(Matrix& m, double limit, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-limit, limit);
  // Row-major fill so the draw order matches the serialized order.
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = dist(rng);
  }
}

double GlorotLimit(double fan_in, double fan_out) { return std::sqrt(6.0 / (fan_in + fan_out)); }

void CheckInput(const LayerSpec& spec, const Matrix& x) {
  if (x.rows() != spec.in_size) {
    throw InvalidArgument("layer expects " + std::to_string(spec.in_size) + " input features, got " +
                          std::to_string(x.rows()));
  }
}

class DenseLayer : public Layer {
 public:
  explicit DenseLayer(LayerSpec spec) : Layer(spec) {
    params_ = {Matrix::Zero(spec.out_size, spec.in_size), Matrix::Zero(spec.out_size, 1)};
  }

  Matrix Forward(const Matrix& x) const override {
    CheckInput(spec_, x);
    Matrix y = params_[0] * x;
    y.colwise() += params_[1].col(0);
    return y;
  }

  Matrix Backward(const LayerCache& cache, const Matrix& grad_out,
                  std::vector<Matrix>& grads) const override {
    grads[0].noalias() += grad_out * cache.input.transpose();
    grads[1] += grad_out.rowwise().sum();
    return params_[0].transpose() * grad_out;
  }

  void Initialize(std::mt19937_64& rng) override {
    FillUniform(params_[0], GlorotLimit(spec_.in_size, spec_.out_size), rng);
    params_[1].setZero();
  }

  std::unique_ptr<Layer> Clone() const override { return std::make_unique<DenseLayer>(*this); }
};

// Weight block j (columns [j*in, (j+1)*in)) multiplies input frame
// t - padding + j; frames before the start of the sequence are zero.
class Conv1dLayer : public Layer {
 public:
  explicit Conv1dLayer(LayerSpec spec) : Layer(spec) {
    params_ = {Matrix::Zero(spec.out_size, spec.in_size * spec.kernel),
               Matrix::Zero(spec.out_size, 1)};
  }

  Matrix Forward(const Matrix& x) const override {
    CheckInput(spec_, x);
    Matrix y = params_[0] * Unfold(x);
    y.colwise() += params_[1].col(0);
    return y;
  }

  Matrix ForwardTrain(const Matrix& x, LayerCache& cache) const override {
    CheckInput(spec_, x);
    cache.input = x;
    cache.aux = {Unfold(x)};
    cache.output = params_[0] * cache.aux[0];
    cache.output.colwise() += params_[1].col(0);
    return cache.output;
  }

  Matrix Backward(const LayerCache& cache, const Matrix& grad_out,
                  std::vector<Matrix>& grads) const override {
    grads[0].noalias() += grad_out * cache.aux[0].transpose();
    grads[1] += grad_out.rowwise().sum();
    Matrix grad_cols = params_[0].transpose() * grad_out;
    const Eigen::Index in = spec_.in_size;
    const Eigen::Index frames = grad_out.cols();
    Matrix grad_in = Matrix::Zero(in, frames);
    for (int j = 0; j < spec_.kernel; ++j) {
      const Eigen::Index shift = spec_.padding - j;
      if (shift >= frames) continue;
      grad_in.leftCols(frames - shift) += grad_cols.block(j * in, shift, in, frames - shift);
    }
    return grad_in;
  }

  void Initialize(std::mt19937_64& rng) override {
    FillUniform(params_[0],
                GlorotLimit(spec_.in_size * spec_.kernel, spec_.out_size * spec_.kernel), rng);
    params_[1].setZero();
  }

  std::unique_ptr<Layer> Clone() const override { return std::make_unique<Conv1dLayer>(*this); }

 private:
  Matrix Unfold(const Matrix& x) const {
    const Eigen::Index in = spec_.in_size;
    const Eigen::Index frames = x.cols();
    Matrix cols = Matrix::Zero(in * spec_.kernel, frames);
    for (int j = 0; j < spec_.kernel; ++j) {
      const Eigen::Index shift = spec_.padding - j;
      if (shift >= frames) continue;
      cols.block(j * in, shift, in, frames - shift) = x.leftCols(frames - shift);
    }
    return cols;
  }
};

inline double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Gate order i, f, g, o. State starts at zero for every call, which is an
// utterance (inference) or a training window.
class LstmLayer : public Layer {
 public:
  explicit LstmLayer(LayerSpec spec) : Layer(spec) {
    const int h = spec.out_size;
    params_ = {Matrix::Zero(4 * h, spec.in_size), Matrix::Zero(4 * h, h), Matrix::Zero(4 * h, 1)};
    if (spec.bias_vectors == 2) params_.push_back(Matrix::Zero(4 * h, 1));
  }

  Matrix Forward(const Matrix& x) const override {
    LayerCache scratch;
    return Run(x, scratch, false);
  }

  Matrix ForwardTrain(const Matrix& x, LayerCache& cache) const override {
    cache.input = x;
    cache.output = Run(x, cache, true);
    return cache.output;
  }

  Matrix Backward(const LayerCache& cache, const Matrix& grad_out,
                  std::vector<Matrix>& grads) const override {
    const Eigen::Index h = spec_.out_size;
    const Eigen::Index frames = grad_out.cols();
    const Matrix& gates = cache.aux[0];
    const Matrix& cells = cache.aux[1];
    const Matrix& cell_tanh = cache.aux[2];
    const Matrix& hidden = cache.output;
    Matrix grad_z(4 * h, frames);
    Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(h);
    Eigen::VectorXd dc_next = Eigen::VectorXd::Zero(h);
    for (Eigen::Index t = frames - 1; t >= 0; --t) {
      auto i = gates.col(t).segment(0, h).array();
      auto f = gates.col(t).segment(h, h).array();
      auto g = gates.col(t).segment(2 * h, h).array();
      auto o = gates.col(t).segment(3 * h, h).array();
      auto tc = cell_tanh.col(t).array();
      Eigen::ArrayXd dh = grad_out.col(t).array() + dh_next.array();
      Eigen::ArrayXd dc = dh * o * (1.0 - tc * tc) + dc_next.array();
      Eigen::ArrayXd c_prev = t > 0 ? Eigen::ArrayXd(cells.col(t - 1).array())
                                    : Eigen::ArrayXd::Zero(h);
      grad_z.col(t).segment(0, h) = (dc * g * i * (1.0 - i)).matrix();
      grad_z.col(t).segment(h, h) = (dc * c_prev * f * (1.0 - f)).matrix();
      grad_z.col(t).segment(2 * h, h) = (dc * i * (1.0 - g * g)).matrix();
      grad_z.col(t).segment(3 * h, h) = (dh * tc * o * (1.0 - o)).matrix();
      dc_next = (dc * f).matrix();
      dh_next.noalias() = params_[1].transpose() * grad_z.col(t);
    }
    grads[0].noalias() += grad_z * cache.input.transpose();
    if (frames > 1) {
      grads[1].noalias() += grad_z.rightCols(frames - 1) * hidden.leftCols(frames - 1).transpose();
    }
    Eigen::VectorXd bias_grad = grad_z.rowwise().sum();
    grads[2] += bias_grad;
    if (spec_.bias_vectors == 2) grads[3] += bias_grad;
    return params_[0].transpose() * grad_z;
  }

  void Initialize(std::mt19937_64& rng) override {
    FillUniform(params_[0], GlorotLimit(spec_.in_size, 4.0 * spec_.out_size), rng);
    FillUniform(params_[1], GlorotLimit(spec_.out_size, 4.0 * spec_.out_size), rng);
    for (size_t p = 2; p < params_.size(); ++p) params_[p].setZero();
  }

  std::unique_ptr<Layer> Clone() const override { return std::make_unique<LstmLayer>(*this); }

 private:
  Matrix Run(const Matrix& x, LayerCache& cache, bool keep) const {
    CheckInput(spec_, x);
    const Eigen::Index h = spec_.out_size;
    const Eigen::Index frames = x.cols();
    Matrix z_in = params_[0] * x;
    Eigen::VectorXd bias = params_[2].col(0);
    if (spec_.bias_vectors == 2) bias += params_[3].col(0);
    z_in.colwise() += bias;

    Matrix hidden(h, frames);
    Matrix gates, cells, cell_tanh;
    if (keep) {
      gates.resize(4 * h, frames);
      cells.resize(h, frames);
      cell_tanh.resize(h, frames);
    }
    Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(h);
    Eigen::VectorXd c_prev = Eigen::VectorXd::Zero(h);
    Eigen::VectorXd z(4 * h);
    for (Eigen::Index t = 0; t < frames; ++t) {
      z = z_in.col(t);
      z.noalias() += params_[1] * h_prev;
      Eigen::ArrayXd i = z.segment(0, h).array().unaryExpr(&Sigmoid);
      Eigen::ArrayXd f = z.segment(h, h).array().unaryExpr(&Sigmoid);
      Eigen::ArrayXd g = z.segment(2 * h, h).array().tanh();
      Eigen::ArrayXd o = z.segment(3 * h, h).array().unaryExpr(&Sigmoid);
      Eigen::ArrayXd c = f * c_prev.array() + i * g;
      Eigen::ArrayXd tc = c.tanh();
      hidden.col(t) = (o * tc).matrix();
      if (keep) {
        gates.col(t) << i.matrix(), f.matrix(), g.matrix(), o.matrix();
        cells.col(t) = c.matrix();
        cell_tanh.col(t) = tc.matrix();
      }
      h_prev = hidden.col(t);
      c_prev = c.matrix();
    }
    if (keep) cache.aux = {std::move(gates), std::move(cells), std::move(cell_tanh)};
    return hidden;
  }
};

class ReluLayer : public Layer {
 public:
  using Layer::Layer;

  Matrix Forward(const Matrix& x) const override {
    CheckInput(spec_, x);
    return x.cwiseMax(0.0);
  }

  Matrix Backward(const LayerCache& cache, const Matrix& grad_out,
                  std::vector<Matrix>&) const override {
    return (cache.input.array() > 0.0).select(grad_out.array(), 0.0).matrix();
  }

  std::unique_ptr<Layer> Clone() const override { return std::make_unique<ReluLayer>(*this); }
};

// Straight-through: the selection mask is a constant in the backward pass.
class CsSelectLayer : public Layer {
 public:
  using Layer::Layer;

  Matrix Forward(const Matrix& x) const override {
    CheckInput(spec_, x);
    return x.cwiseProduct(Mask(x));
  }

  Matrix ForwardTrain(const Matrix& x, LayerCache& cache) const override {
    CheckInput(spec_, x);
    cache.input = x;
    if (!cache.frozen_mask) cache.mask = Mask(x);
    cache.output = x.cwiseProduct(cache.mask);
    return cache.output;
  }

  Matrix Backward(const LayerCache& cache, const Matrix& grad_out,
                  std::vector<Matrix>&) const override {
    return grad_out.cwiseProduct(cache.mask);
  }

  std::unique_ptr<Layer> Clone() const override { return std::make_unique<CsSelectLayer>(*this); }

 private:
  Matrix Mask(const Matrix& x) const {
    Matrix mask = Matrix::Zero(x.rows(), x.cols());
    for (Eigen::Index t = 0; t < x.cols(); ++t) {
      for (int idx : CsSelectIndices(x.col(t), spec_.cs_k, spec_.cs_mode)) mask(idx, t) = 1.0;
    }
    return mask;
  }
};

}  // namespace

LayerSpec LayerSpec::Dense(int in, int out) {
  return {LayerKind::kDense, in, out};
}

LayerSpec LayerSpec::Conv1d(int in, int out, int kernel, int padding) {
  LayerSpec s{LayerKind::kConv1d, in, out};
  s.kernel = kernel;
  s.padding = padding;
  return s;
}

LayerSpec LayerSpec::Lstm(int in, int hidden, int bias_vectors) {
  LayerSpec s{LayerKind::kLstm, in, hidden};
  s.bias_vectors = bias_vectors;
  return s;
}

LayerSpec LayerSpec::Relu(int size) { return {LayerKind::kRelu, size, size}; }

LayerSpec LayerSpec::CsSelect(int size, int k, CsMode mode) {
  LayerSpec s{LayerKind::kCsSelect, size, size};
  s.cs_mode = mode;
  s.cs_k = k;
  return s;
}

void LayerSpec::Validate() const {
  if (in_size <= 0 || out_size <= 0) throw InvalidArgument("layer sizes must be positive");
  switch (kind) {
    case LayerKind::kDense:
      break;
    case LayerKind::kConv1d:
      if (kernel <= 0) throw InvalidArgument("conv1d kernel must be positive");
      if (padding != kernel - 1) {
        throw InvalidArgument("conv1d padding must equal kernel - 1 for causal operation");
      }
      break;
    case LayerKind::kLstm:
      if (bias_vectors != 1 && bias_vectors != 2) {
        throw InvalidArgument("lstm bias_vectors must be 1 or 2");
      }
      break;
    case LayerKind::kRelu:
      if (in_size != out_size) throw InvalidArgument("relu must preserve size");
      break;
    case LayerKind::kCsSelect:
      if (in_size != out_size) throw InvalidArgument("cs_select must preserve size");
      if (cs_k < 1 || cs_k > out_size) throw InvalidArgument("cs_select k must be in [1, size]");
      if (cs_mode != CsMode::kCustom && cs_mode != CsMode::kVanilla) {
        throw InvalidArgument("unknown cs_select mode");
      }
      break;
    default:
      throw InvalidArgument("unknown layer kind");
  }
}

size_t Layer::ParamCount() const {
  size_t n = 0;
  for (const auto& p : params_) n += static_cast<size_t>(p.size());
  return n;
}

Matrix Layer::ForwardTrain(const Matrix& x, LayerCache& cache) const {
  cache.input = x;
  cache.output = Forward(x);
  return cache.output;
}

void Layer::Initialize(std::mt19937_64&) {}

std::unique_ptr<Layer> MakeLayer(const LayerSpec& spec) {
  spec.Validate();
  switch (spec.kind) {
    case LayerKind::kDense:
      return std::make_unique<DenseLayer>(spec);
    case LayerKind::kConv1d:
      return std::make_unique<Conv1dLayer>(spec);
    case LayerKind::kLstm:
      return std::make_unique<LstmLayer>(spec);
    case LayerKind::kRelu:
      return std::make_unique<ReluLayer>(spec);
    case LayerKind::kCsSelect:
      return std::make_unique<CsSelectLayer>(spec);
  }
  throw InvalidArgument("unknown layer kind");
}

std::vector<int> CsSelectIndices(const Eigen::Ref<const Eigen::VectorXd>& x, int k, CsMode mode) {
  std::vector<int> order;
  order.reserve(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (mode == CsMode::kVanilla || x(i) > 0.0) order.push_back(static_cast<int>(i));
  }
  // Larger value first; equal values keep ascending index order.
  std::stable_sort(order.begin(), order.end(), [&x](int a, int b) { return x(a) > x(b); });
  if (static_cast<int>(order.size()) > k) order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

Eigen::VectorXd CsSelectForward(const Eigen::Ref<const Eigen::VectorXd>& x, int k, CsMode mode) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (int idx : CsSelectIndices(x, k, mode)) out(idx) = x(idx);
  return out;
}

}  // namespace electrodenet::nn
