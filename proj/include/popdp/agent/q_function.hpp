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

// Value-function backends for the DQN agent: the MLP network and a
// tabular map keyed by histogram.

#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <unordered_map>
#include <vector>

#include "popdp/agent/config.hpp"
#include "popdp/agent/mlp.hpp"
#include "popdp/dprl/transition.hpp"
#include "popdp/error.hpp"
#include "popdp/histogram.hpp"
#include "popdp/random.hpp"

namespace popdp::agent {

using Batch = std::vector<const dprl::PrivatizedTransition*>;

template <class Q>
concept QFunction =
    std::copyable<Q> &&
    requires(const Q& cq, Q& q, const StateHistogram& s, const Batch& batch,
             std::span<const double> targets) {
      { cq.values(s) } -> std::same_as<std::vector<double>>;
      { cq.action_count() } -> std::convertible_to<std::size_t>;
      // max_a Q(next_state, a) for every batch entry
      { cq.max_values(batch) } -> std::same_as<std::vector<double>>;
      // one optimizer step on the batch-mean loss; returns that loss
      { q.fit(batch, targets) } -> std::convertible_to<double>;
      q.sync_from(cq);
    };

class MlpQ {
 public:
  using Net = Mlp<double>;

  MlpQ(std::size_t state_dim, std::size_t action_count, const AgentConfig& cfg, Rng& rng)
      : net_(layer_sizes(state_dim, action_count, cfg), Activation::kRelu, rng),
        optimizer_(cfg.learning_rate, cfg.rms_decay, cfg.rms_floor) {}

  MlpQ(Net net, const AgentConfig& cfg)
      : net_(std::move(net)), optimizer_(cfg.learning_rate, cfg.rms_decay, cfg.rms_floor) {}

  static std::vector<std::size_t> layer_sizes(std::size_t state_dim, std::size_t action_count,
                                              const AgentConfig& cfg) {
    std::vector<std::size_t> sizes{state_dim};
    for (std::size_t l = 1; l < cfg.layer_count; ++l) sizes.push_back(cfg.hidden_width);
    sizes.push_back(action_count);
    return sizes;
  }

  std::size_t action_count() const noexcept { return net_.output_size(); }

  std::vector<double> values(const StateHistogram& s) const {
    const Net::Matrix q = net_.forward(encode(s));
    return {q.data(), q.data() + q.size()};
  }

  std::vector<double> max_values(const Batch& batch) const {
    const Net::Matrix q = net_.forward(encode_next(batch));
    std::vector<double> out(batch.size());
    for (Eigen::Index b = 0; b < q.cols(); ++b) out[b] = q.col(b).maxCoeff();
    return out;
  }

  double fit(const Batch& batch, std::span<const double> targets) {
    std::vector<std::size_t> actions(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) actions[i] = batch[i]->action;
    const double loss = net_.loss_and_gradient(encode_states(batch), actions, targets, grad_);
    optimizer_.step(net_, grad_);
    return loss;
  }

  // Copies network weights only; the optimizer state stays with the caller.
  void sync_from(const MlpQ& other) { net_ = other.net_; }

  const Net& network() const noexcept { return net_; }
  Net& network() noexcept { return net_; }

  static Net::Matrix encode(const StateHistogram& s) {
    Net::Matrix m(static_cast<Eigen::Index>(s.size()), 1);
    for (std::size_t i = 0; i < s.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = s.proportion(i);
    return m;
  }

  static Net::Matrix encode_states(const Batch& batch) { return encode_batch(batch, false); }
  static Net::Matrix encode_next(const Batch& batch) { return encode_batch(batch, true); }

 private:
  static Net::Matrix encode_batch(const Batch& batch, bool next) {
    if (batch.empty()) throw InputError("empty batch");
    const auto k = static_cast<Eigen::Index>(batch.front()->state.size());
    Net::Matrix m(k, static_cast<Eigen::Index>(batch.size()));
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const StateHistogram& s = next ? batch[b]->next_state : batch[b]->state;
      for (Eigen::Index i = 0; i < k; ++i)
        m(i, static_cast<Eigen::Index>(b)) = s.proportion(static_cast<std::size_t>(i));
    }
    return m;
  }

  Net net_;
  RmsProp<double> optimizer_;
  Net::Gradient grad_;
};

// Gradient of the batch-mean loss 0.5 * (Q(s, a) - y)^2 for an MLP value function.
inline MlpQ::Net::Gradient mlp_gradient(const MlpQ& q, const Batch& batch,
                                        std::span<const double> targets) {
  std::vector<std::size_t> actions(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) actions[i] = batch[i]->action;
  MlpQ::Net::Gradient grad;
  q.network().loss_and_gradient(MlpQ::encode_states(batch), actions, targets, grad);
  return grad;
}

// Q-table; unseen (state, action) pairs read as 0. fit() applies
// Q(s, a) += lr * (y - Q(s, a)) for each batch entry in order.
class TabularQ {
 public:
  TabularQ(std::size_t action_count, double learning_rate)
      : actions_(action_count), lr_(learning_rate) {
    if (action_count == 0) throw InputError("tabular Q needs at least one action");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
      throw InputError("tabular learning rate must lie in (0, 1]");
  }

  std::size_t action_count() const noexcept { return actions_; }
  std::size_t size() const noexcept { return table_.size(); }

  std::vector<double> values(const StateHistogram& s) const {
    auto it = table_.find(s);
    return it == table_.end() ? std::vector<double>(actions_, 0.0) : it->second;
  }

  double value(const StateHistogram& s, std::size_t a) const { return values(s).at(a); }

  void set(const StateHistogram& s, std::size_t a, double v) { row(s).at(a) = v; }

  std::vector<double> max_values(const Batch& batch) const {
    std::vector<double> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto v = values(batch[i]->next_state);
      out[i] = *std::max_element(v.begin(), v.end());
    }
    return out;
  }

  double fit(const Batch& batch, std::span<const double> targets) {
    if (batch.size() != targets.size()) throw InputError("batch and targets differ in length");
    double loss = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) loss += update(batch[i]->state, batch[i]->action, targets[i]);
    return batch.empty() ? 0.0 : loss / static_cast<double>(batch.size());
  }

  // Q(s, a) += lr * (target - Q(s, a)). Returns the pre-update 0.5 * residual^2.
  double update(const StateHistogram& s, std::size_t a, double target) {
    double& q = row(s).at(a);
    const double r = q - target;
    q -= lr_ * r;
    return 0.5 * r * r;
  }

  void sync_from(const TabularQ& other) { table_ = other.table_; }

 private:
  std::vector<double>& row(const StateHistogram& s) {
    auto [it, inserted] = table_.try_emplace(s);
    if (inserted) it->second.assign(actions_, 0.0);
    return it->second;
  }

  std::size_t actions_;
  double lr_;
  std::unordered_map<StateHistogram, std::vector<double>, StateHistogramHash> table_;
};

}  // namespace popdp::agent
