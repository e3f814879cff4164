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

#include "electrodenet/nn/trainer.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "electrodenet/errors.h"

namespace electrodenet::nn {
namespace {

struct FrameRef {
  int sequence;
  Eigen::Index frame;
};

struct WindowRef {
  int sequence;
  Eigen::Index start;
  Eigen::Index length;
};

}  // namespace

void TrainConfig::Validate() const {
  if (!(learning_rate >= 0.0)) throw InvalidArgument("learning rate must be >= 0");
  if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (batch_size < 1) throw InvalidArgument("batch size must be >= 1");
  if (sequence_length < 1) throw InvalidArgument("sequence length must be >= 1");
}

AdamOptimizer::AdamOptimizer(const Network& network, const TrainConfig& cfg)
    : lr_(cfg.learning_rate),
      beta1_(cfg.beta1),
      beta2_(cfg.beta2),
      eps_(cfg.epsilon),
      m_(network.ZeroGradients()),
      v_(network.ZeroGradients()) {}

void AdamOptimizer::Step(Network& network, const Gradients& grads) {
  ++step_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(step_));
  for (size_t l = 0; l < grads.size(); ++l) {
    auto& params = network.layer(l).params();
    for (size_t p = 0; p < grads[l].size(); ++p) {
      m_[l][p] = beta1_ * m_[l][p] + (1.0 - beta1_) * grads[l][p];
      v_[l][p] = beta2_ * v_[l][p] + (1.0 - beta2_) * grads[l][p].cwiseAbs2();
      params[p].array() -=
          lr_ * (m_[l][p].array() / c1) / ((v_[l][p].array() / c2).sqrt() + eps_);
    }
  }
}

TrainHistory Train(Network& network, const std::vector<TrainingSequence>& data,
                   const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.Validate();
  size_t total_frames = 0;
  for (const auto& seq : data) {
    if (seq.input.rows() != network.input_size() || seq.target.rows() != network.output_size() ||
        seq.input.cols() != seq.target.cols()) {
      throw InvalidArgument("training sequence shape does not match the network");
    }
    total_frames += seq.input.cols();
  }
  if (total_frames == 0) throw InvalidArgument("training dataset is empty");

  std::mt19937_64 rng(cfg.seed);
  AdamOptimizer adam(network, cfg);
  Gradients grads = network.ZeroGradients();
  Network::Tape tape;
  Matrix grad_out;
  TrainHistory history;

  auto zero_grads = [&grads] {
    for (auto& layer : grads) {
      for (auto& g : layer) g.setZero();
    }
  };

  if (!network.is_temporal()) {
    std::vector<FrameRef> frames;
    frames.reserve(total_frames);
    for (size_t s = 0; s < data.size(); ++s) {
      for (Eigen::Index t = 0; t < data[s].input.cols(); ++t) {
        frames.push_back({static_cast<int>(s), t});
      }
    }
    Matrix x(network.input_size(), cfg.batch_size);
    Matrix y(network.output_size(), cfg.batch_size);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      std::shuffle(frames.begin(), frames.end(), rng);
      double loss_sum = 0.0;
      for (size_t begin = 0; begin < frames.size(); begin += cfg.batch_size) {
        const size_t n = std::min<size_t>(cfg.batch_size, frames.size() - begin);
        x.resize(network.input_size(), n);
        y.resize(network.output_size(), n);
        for (size_t i = 0; i < n; ++i) {
          const FrameRef& f = frames[begin + i];
          x.col(i) = data[f.sequence].input.col(f.frame);
          y.col(i) = data[f.sequence].target.col(f.frame);
        }
        Matrix out = network.ForwardTrain(x, tape);
        loss_sum += MaeLoss(out, y, &grad_out) * static_cast<double>(n);
        zero_grads();
        network.Backward(tape, grad_out, grads);
        adam.Step(network, grads);
      }
      history.epoch_loss.push_back(loss_sum / static_cast<double>(frames.size()));
      if (on_epoch) on_epoch(epoch, history.epoch_loss.back());
    }
    return history;
  }

  std::vector<WindowRef> windows;
  for (size_t s = 0; s < data.size(); ++s) {
    const Eigen::Index len = data[s].input.cols();
    for (Eigen::Index start = 0; start < len; start += cfg.sequence_length) {
      windows.push_back({static_cast<int>(s), start, std::min<Eigen::Index>(cfg.sequence_length, len - start)});
    }
  }
  const size_t windows_per_batch =
      std::max<size_t>(1, static_cast<size_t>(cfg.batch_size / cfg.sequence_length));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(windows.begin(), windows.end(), rng);
    double loss_sum = 0.0;
    for (size_t begin = 0; begin < windows.size(); begin += windows_per_batch) {
      const size_t end = std::min(windows.size(), begin + windows_per_batch);
      double elements = 0.0;
      for (size_t w = begin; w < end; ++w) elements += static_cast<double>(windows[w].length);
      elements *= network.output_size();
      zero_grads();
      for (size_t w = begin; w < end; ++w) {
        const WindowRef& win = windows[w];
        const auto& seq = data[win.sequence];
        Matrix out = network.ForwardTrain(seq.input.middleCols(win.start, win.length), tape);
        loss_sum += MaeLoss(out, seq.target.middleCols(win.start, win.length), &grad_out, elements) *
                    elements;
        network.Backward(tape, grad_out, grads);
      }
      adam.Step(network, grads);
    }
    history.epoch_loss.push_back(loss_sum /
                                 (static_cast<double>(total_frames) * network.output_size()));
    if (on_epoch) on_epoch(epoch, history.epoch_loss.back());
  }
  return history;
}

}  // namespace electrodenet::nn
