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

#include "electrodenet/nn/network.h"

#include "electrodenet/errors.h"

namespace electrodenet::nn {

std::string_view ArchName(ArchId arch) {
  switch (arch) {
    case ArchId::kDnn:
      return "dnn";
    case ArchId::kCnn:
      return "cnn";
    case ArchId::kLstm:
      return "lstm";
    case ArchId::kDnnCs:
      return "dnn-cs";
    case ArchId::kDnnCsVt:
      return "dnn-cs-vt";
  }
  return "unknown";
}

ArchId ParseArch(std::string_view name) {
  for (ArchId a : {ArchId::kDnn, ArchId::kCnn, ArchId::kLstm, ArchId::kDnnCs, ArchId::kDnnCsVt}) {
    if (ArchName(a) == name) return a;
  }
  throw InvalidArgument("unknown architecture '" + std::string(name) +
                        "' (expected dnn, cnn, lstm, dnn-cs or dnn-cs-vt)");
}

bool IsCsArch(ArchId arch) { return arch == ArchId::kDnnCs || arch == ArchId::kDnnCsVt; }

Network::Network(ArchId arch, std::vector<LayerSpec> specs) : arch_(arch) {
  if (specs.empty()) throw InvalidArgument("network needs at least one layer");
  for (size_t i = 0; i < specs.size(); ++i) {
    if (i > 0 && specs[i].in_size != specs[i - 1].out_size) {
      throw InvalidArgument("layer " + std::to_string(i) + " input size does not match layer " +
                            std::to_string(i - 1) + " output size");
    }
    layers_.push_back(MakeLayer(specs[i]));
  }
}

Network::Network(const Network& other) : arch_(other.arch_), feature_scale_(other.feature_scale_) {
  for (const auto& l : other.layers_) layers_.push_back(l->Clone());
}

Network& Network::operator=(const Network& other) {
  if (this != &other) {
    Network copy(other);
    *this = std::move(copy);
  }
  return *this;
}

std::vector<LayerSpec> Network::specs() const {
  std::vector<LayerSpec> out;
  for (const auto& l : layers_) out.push_back(l->spec());
  return out;
}

bool Network::is_temporal() const {
  for (const auto& l : layers_) {
    if (l->spec().kind == LayerKind::kConv1d || l->spec().kind == LayerKind::kLstm) return true;
  }
  return false;
}

size_t Network::ParamCount() const {
  size_t n = 0;
  for (const auto& l : layers_) n += l->ParamCount();
  return n;
}

void Network::Initialize(uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (auto& l : layers_) l->Initialize(rng);
}

Matrix Network::Forward(const Matrix& x) const {
  if (x.rows() != input_size()) {
    throw InvalidArgument("network expects " + std::to_string(input_size()) +
                          " input features, got " + std::to_string(x.rows()));
  }
  Matrix h = x;
  for (const auto& l : layers_) h = l->Forward(h);
  return h;
}

Matrix Network::ForwardTrain(const Matrix& x, Tape& tape) const {
  if (x.rows() != input_size()) {
    throw InvalidArgument("network expects " + std::to_string(input_size()) +
                          " input features, got " + std::to_string(x.rows()));
  }
  tape.resize(layers_.size());
  Matrix h = x;
  for (size_t i = 0; i < layers_.size(); ++i) h = layers_[i]->ForwardTrain(h, tape[i]);
  return h;
}

Gradients Network::ZeroGradients() const {
  Gradients grads(layers_.size());
  for (size_t i = 0; i < layers_.size(); ++i) {
    for (const auto& p : layers_[i]->params()) grads[i].push_back(Matrix::Zero(p.rows(), p.cols()));
  }
  return grads;
}

void Network::Backward(const Tape& tape, const Matrix& grad_output, Gradients& grads) const {
  Matrix g = grad_output;
  for (size_t i = layers_.size(); i-- > 0;) g = layers_[i]->Backward(tape[i], g, grads[i]);
}

std::vector<LayerSpec> ArchitectureSpecs(ArchId arch, int n_topk, int lstm_bias_vectors) {
  const int in = kInputBins;
  const int out = kOutputChannels;
  std::vector<LayerSpec> dnn = {
      LayerSpec::Dense(in, 1024), LayerSpec::Relu(1024), LayerSpec::Dense(1024, 512),
      LayerSpec::Relu(512),       LayerSpec::Dense(512, 256), LayerSpec::Relu(256),
      LayerSpec::Dense(256, out)};
  switch (arch) {
    case ArchId::kDnn:
      return dnn;
    case ArchId::kCnn:
      return {LayerSpec::Conv1d(in, 1024),   LayerSpec::Relu(1024),
              LayerSpec::Conv1d(1024, 512),  LayerSpec::Relu(512),
              LayerSpec::Dense(512, 256),    LayerSpec::Relu(256),
              LayerSpec::Dense(256, out)};
    case ArchId::kLstm:
      return {LayerSpec::Conv1d(in, 1024),
              LayerSpec::Relu(1024),
              LayerSpec::Lstm(1024, 512, lstm_bias_vectors),
              LayerSpec::Dense(512, 256),
              LayerSpec::Relu(256),
              LayerSpec::Dense(256, out)};
    case ArchId::kDnnCs:
    case ArchId::kDnnCsVt:
      dnn.push_back(LayerSpec::CsSelect(
          out, n_topk, arch == ArchId::kDnnCs ? CsMode::kCustom : CsMode::kVanilla));
      dnn.push_back(LayerSpec::Relu(out));
      return dnn;
  }
  throw InvalidArgument("unknown architecture");
}

Network BuildNetwork(ArchId arch, int n_topk, int lstm_bias_vectors) {
  return Network(arch, ArchitectureSpecs(arch, n_topk, lstm_bias_vectors));
}

size_t CountParams(const Network& network) { return network.ParamCount(); }

double MaeLoss(const Matrix& output, const Matrix& target, Matrix* grad, double normalizer) {
  if (output.rows() != target.rows() || output.cols() != target.cols()) {
    throw InvalidArgument("loss: output and target shapes differ");
  }
  const double n = normalizer > 0.0 ? normalizer : static_cast<double>(output.size());
  Matrix diff = output - target;
  if (grad) *grad = diff.unaryExpr([n](double d) { return d > 0.0 ? 1.0 / n : d < 0.0 ? -1.0 / n : 0.0; });
  return diff.cwiseAbs().sum() / n;
}

}  // namespace electrodenet::nn
