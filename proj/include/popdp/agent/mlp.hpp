// Copyright 2026 The popdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// From-scratch fully connected network used as the DQN value function:
// forward pass, backpropagation of the batch-mean squared TD loss, and an
// RMSProp optimizer.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/random.hpp"

namespace popdp::agent {

enum class Activation { kRelu, kIdentity };

template <class Scalar = double>
class Mlp {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  struct Layer {
    Matrix weight;  // out x in
    Vector bias;    // out
  };

  // Per-layer gradient with the same shapes as the parameters.
  using Gradient = std::vector<Layer>;

  Mlp() = default;

  // sizes = {input, hidden..., output}. Weights and biases are drawn from
  // U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
  Mlp(std::vector<std::size_t> sizes, Activation hidden, Rng& rng)
      : sizes_(std::move(sizes)), hidden_(hidden) {
    if (sizes_.size() < 2) throw InputError("network needs input and output sizes");
    for (auto s : sizes_)
      if (s == 0) throw InputError("layer sizes must be positive");
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
      const auto in = static_cast<Eigen::Index>(sizes_[l]);
      const auto out = static_cast<Eigen::Index>(sizes_[l + 1]);
      const double bound = 1.0 / std::sqrt(static_cast<double>(in));
      auto draw = [&] { return static_cast<Scalar>((2.0 * uniform01(rng) - 1.0) * bound); };
      Layer layer{Matrix(out, in), Vector(out)};
      for (Eigen::Index c = 0; c < in; ++c)
        for (Eigen::Index r = 0; r < out; ++r) layer.weight(r, c) = draw();
      for (Eigen::Index r = 0; r < out; ++r) layer.bias(r) = draw();
      layers_.push_back(std::move(layer));
    }
  }

  // Same layout, explicit parameters (checkpoint loading).
  Mlp(std::vector<std::size_t> sizes, Activation hidden, std::vector<Layer> layers)
      : sizes_(std::move(sizes)), hidden_(hidden), layers_(std::move(layers)) {
    if (layers_.size() + 1 != sizes_.size()) throw InputError("layer count mismatch");
    for (std::size_t l = 0; l < layers_.size(); ++l)
      if (static_cast<std::size_t>(layers_[l].weight.rows()) != sizes_[l + 1] ||
          static_cast<std::size_t>(layers_[l].weight.cols()) != sizes_[l] ||
          static_cast<std::size_t>(layers_[l].bias.size()) != sizes_[l + 1])
        throw InputError("layer shape mismatch");
  }

  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  Activation hidden_activation() const noexcept { return hidden_; }
  std::size_t input_size() const noexcept { return sizes_.front(); }
  std::size_t output_size() const noexcept { return sizes_.back(); }
  std::vector<Layer>& layers() noexcept { return layers_; }
  const std::vector<Layer>& layers() const noexcept { return layers_; }

  // inputs: input_size x B. Returns output_size x B.
  Matrix forward(const Matrix& inputs) const {
    Matrix a = inputs;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      Matrix z = (layers_[l].weight * a).colwise() + layers_[l].bias;
      if (l + 1 < layers_.size()) activate(z);
      a = std::move(z);
    }
    return a;
  }

  // Mean over the batch of 0.5 * (Q(s_b, a_b) - y_b)^2.
  Scalar loss(const Matrix& inputs, std::span<const std::size_t> actions,
              std::span<const Scalar> targets) const {
    check_batch(inputs, actions, targets);
    const Matrix q = forward(inputs);
    Scalar total = 0;
    for (Eigen::Index b = 0; b < inputs.cols(); ++b) {
      const Scalar r = q(static_cast<Eigen::Index>(actions[b]), b) - targets[b];
      total += Scalar(0.5) * r * r;
    }
    return total / static_cast<Scalar>(inputs.cols());
  }

  // Analytic gradient of loss() by backpropagation. Returns the loss too.
  Scalar loss_and_gradient(const Matrix& inputs, std::span<const std::size_t> actions,
                           std::span<const Scalar> targets, Gradient& grad) const {
    check_batch(inputs, actions, targets);
    const std::size_t depth = layers_.size();
    const auto batch = inputs.cols();

    std::vector<Matrix> pre(depth);   // z_l
    std::vector<Matrix> post(depth);  // a_l = act(z_l); post[depth-1] = output
    const Matrix* a = &inputs;
    for (std::size_t l = 0; l < depth; ++l) {
      pre[l] = (layers_[l].weight * *a).colwise() + layers_[l].bias;
      post[l] = pre[l];
      if (l + 1 < depth) activate(post[l]);
      a = &post[l];
    }

    Matrix delta = Matrix::Zero(static_cast<Eigen::Index>(output_size()), batch);
    Scalar total = 0;
    const Scalar inv_b = Scalar(1) / static_cast<Scalar>(batch);
    for (Eigen::Index b = 0; b < batch; ++b) {
      const auto row = static_cast<Eigen::Index>(actions[b]);
      const Scalar r = post[depth - 1](row, b) - targets[b];
      total += Scalar(0.5) * r * r;
      delta(row, b) = r * inv_b;
    }

    grad.resize(depth);
    for (std::size_t l = depth; l-- > 0;) {
      const Matrix& input = l == 0 ? inputs : post[l - 1];
      grad[l].weight.noalias() = delta * input.transpose();
      grad[l].bias = delta.rowwise().sum();
      if (l == 0) break;
      Matrix back = layers_[l].weight.transpose() * delta;
      if (hidden_ == Activation::kRelu)
        back.array() *= (pre[l - 1].array() > Scalar(0)).template cast<Scalar>();
      delta = std::move(back);
    }
    return total * inv_b;
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.weight.size() + l.bias.size();
    return n;
  }

  // Flat view: layer by layer, weights (column-major) then biases.
  Scalar& parameter(std::size_t index) { return locate(layers_, index); }
  static Scalar& gradient_entry(Gradient& g, std::size_t index) { return locate(g, index); }

 private:
  void activate(Matrix& z) const {
    if (hidden_ == Activation::kRelu) z = z.cwiseMax(Scalar(0));
  }

  void check_batch(const Matrix& inputs, std::span<const std::size_t> actions,
                   std::span<const Scalar> targets) const {
    if (static_cast<std::size_t>(inputs.rows()) != input_size())
      throw InputError("input dimension does not match the network");
    if (inputs.cols() == 0) throw InputError("empty batch");
    if (actions.size() != static_cast<std::size_t>(inputs.cols()) ||
        targets.size() != actions.size())
      throw InputError("batch arrays have inconsistent lengths");
    for (auto a : actions)
      if (a >= output_size()) throw InputError("action index out of range");
  }

  static Scalar& locate(std::vector<Layer>& layers, std::size_t index) {
    for (auto& l : layers) {
      const auto w = static_cast<std::size_t>(l.weight.size());
      if (index < w) return l.weight.data()[index];
      index -= w;
      const auto b = static_cast<std::size_t>(l.bias.size());
      if (index < b) return l.bias.data()[index];
      index -= b;
    }
    throw InputError("parameter index out of range");
  }

  std::vector<std::size_t> sizes_;
  Activation hidden_ = Activation::kRelu;
  std::vector<Layer> layers_;
};

// theta <- theta - lr * g / (sqrt(v) + floor),  v <- decay * v + (1 - decay) * g^2
template <class Scalar = double>
class RmsProp {
 public:
  RmsProp(double learning_rate = 0.01, double decay = 0.99, double floor = 1e-8)
      : lr_(learning_rate), decay_(decay), floor_(floor) {
    if (!(learning_rate > 0.0)) throw InputError("learning rate must be positive");
    if (!(decay >= 0.0 && decay < 1.0)) throw InputError("RMSProp decay must lie in [0, 1)");
    if (!(floor > 0.0)) throw InputError("RMSProp floor must be positive");
  }

  void step(Mlp<Scalar>& net, const typename Mlp<Scalar>::Gradient& grad) {
    auto& layers = net.layers();
    if (square_.size() != layers.size()) {
      square_.clear();
      for (const auto& l : layers)
        square_.push_back({Mlp<Scalar>::Matrix::Zero(l.weight.rows(), l.weight.cols()),
                           Mlp<Scalar>::Vector::Zero(l.bias.size())});
    }
    const auto lr = static_cast<Scalar>(lr_);
    const auto decay = static_cast<Scalar>(decay_);
    const auto floor = static_cast<Scalar>(floor_);
    for (std::size_t l = 0; l < layers.size(); ++l) {
      auto update = [&](auto& param, auto& sq, const auto& g) {
        sq.array() = decay * sq.array() + (Scalar(1) - decay) * g.array().square();
        param.array() -= lr * g.array() / (sq.array().sqrt() + floor);
      };
      update(layers[l].weight, square_[l].weight, grad[l].weight);
      update(layers[l].bias, square_[l].bias, grad[l].bias);
    }
  }

 private:
  double lr_, decay_, floor_;
  std::vector<typename Mlp<Scalar>::Layer> square_;
};

}  // namespace popdp::agent
