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

// DQN with experience replay, a periodically synced target network and
// epsilon-greedy exploration, operating purely on privatized transitions.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "popdp/agent/config.hpp"
#include "popdp/agent/q_function.hpp"
#include "popdp/agent/replay_buffer.hpp"
#include "popdp/dprl/transition.hpp"
#include "popdp/histogram.hpp"
#include "popdp/random.hpp"

namespace popdp::agent {

// argmax with ties to the smallest index.
inline std::size_t greedy_action(std::span<const double> values) {
  if (values.empty()) throw InputError("no action values");
  std::size_t best = 0;
  for (std::size_t a = 1; a < values.size(); ++a)
    if (values[a] > values[best]) best = a;
  return best;
}

// p ~ U(0, 1]; greedy if p > eps_explore, uniform otherwise. eps = 0 is
// therefore always greedy and eps = 1 always uniform.
inline std::size_t select_action(std::span<const double> values, double eps_explore, Rng& rng) {
  const double p = uniform01_open_closed(rng);
  if (p > eps_explore) return greedy_action(values);
  return static_cast<std::size_t>(uniform_index(rng, values.size()));
}

template <QFunction Q>
std::size_t select_action(const Q& q, const StateHistogram& state, double eps_explore, Rng& rng) {
  const auto v = q.values(state);
  return select_action(v, eps_explore, rng);
}

// y = r + discount * max_a' target(s', a')
inline double td_target(double reward, double discount, double next_max) {
  return reward + discount * next_max;
}

// Samples B transitions uniformly (with replacement), regresses the online
// Q towards targets built from the frozen target Q, and returns the mean
// batch loss. Returns nothing if the buffer holds fewer than B transitions.
template <QFunction Q>
std::optional<double> train_step(Q& q, const Q& target,
                                 const ReplayBuffer<dprl::PrivatizedTransition>& buffer,
                                 const AgentConfig& cfg, Rng& rng) {
  if (buffer.size() < cfg.batch_size) return std::nullopt;
  Batch batch(cfg.batch_size);
  for (auto& item : batch) item = &buffer.sample(rng);
  const auto next_max = target.max_values(batch);
  std::vector<double> y(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i)
    y[i] = td_target(batch[i]->reward, cfg.discount, next_max[i]);
  return q.fit(batch, y);
}

// Copies the online parameters into the target whenever t is a multiple
// of the target period. Returns whether a copy happened.
template <QFunction Q>
bool sync_target(const Q& q, Q& target, std::uint64_t t, const AgentConfig& cfg) {
  if (t % cfg.target_period != 0) return false;
  target.sync_from(q);
  return true;
}

template <QFunction Q>
class DqnAgent {
 public:
  DqnAgent(Q online, AgentConfig cfg)
      : cfg_((cfg.validate(), cfg)),
        online_(std::move(online)),
        target_(online_),
        buffer_(cfg_.buffer_capacity),
        eps_(cfg_.eps_start) {}

  std::size_t act(const StateHistogram& observation, Rng& rng) const {
    return select_action(online_, observation, eps_, rng);
  }

  // Buffer append, gated SGD step (t > B), target sync, exploration decay.
  dprl::LearnStats learn(const dprl::PrivatizedTransition& tr, std::uint64_t t, Rng& rng) {
    buffer_.push(tr);
    dprl::LearnStats stats;
    if (t > cfg_.batch_size) stats.loss = train_step(online_, target_, buffer_, cfg_, rng);
    sync_target(online_, target_, t, cfg_);
    eps_ = decay_exploration(t, cfg_);
    return stats;
  }

  double exploration_rate() const noexcept { return eps_; }
  const Q& online() const noexcept { return online_; }
  const Q& target() const noexcept { return target_; }
  const ReplayBuffer<dprl::PrivatizedTransition>& buffer() const noexcept { return buffer_; }
  const AgentConfig& config() const noexcept { return cfg_; }

 private:
  AgentConfig cfg_;
  Q online_;
  Q target_;
  ReplayBuffer<dprl::PrivatizedTransition> buffer_;
  double eps_;
};

// Uniformly random actions; learns nothing.
class RandomAgent {
 public:
  explicit RandomAgent(std::size_t action_count) : actions_(action_count) {
    if (action_count == 0) throw InputError("random agent needs at least one action");
  }
  std::size_t act(const StateHistogram&, Rng& rng) const {
    return static_cast<std::size_t>(uniform_index(rng, actions_));
  }
  dprl::LearnStats learn(const dprl::PrivatizedTransition&, std::uint64_t, Rng&) { return {}; }
  double exploration_rate() const noexcept { return 1.0; }

 private:
  std::size_t actions_;
};

// Always the same action.
class FixedActionAgent {
 public:
  explicit FixedActionAgent(std::size_t action) : action_(action) {}
  std::size_t act(const StateHistogram&, Rng&) const { return action_; }
  dprl::LearnStats learn(const dprl::PrivatizedTransition&, std::uint64_t, Rng&) { return {}; }
  double exploration_rate() const noexcept { return 0.0; }

 private:
  std::size_t action_;
};

}  // namespace popdp::agent
