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

// The DP-RL meta loop. Every state is privatized before the agent sees
// it; actions and rewards are computed only from privatized states, so the
// whole transition stream is post-processing of the mechanism outputs.
// Raw states go to a separate diagnostics channel the agent never touches.

#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "popdp/accounting.hpp"
#include "popdp/dprl/transition.hpp"
#include "popdp/error.hpp"
#include "popdp/histogram.hpp"
#include "popdp/mech/projected_laplace.hpp"
#include "popdp/random.hpp"

namespace popdp::dprl {

// A value together with whether it was derived from an un-privatized state.
template <class T>
struct Tagged {
  T value;
  bool raw = false;
};

template <class E>
concept Environment = requires(E& e, const E& ce, Rng& rng, std::size_t a, const StateHistogram& s) {
  { e.reset(rng) } -> std::same_as<StateHistogram>;
  { e.step(a, rng) } -> std::same_as<StateHistogram>;
  { ce.reward(s, a) } -> std::convertible_to<double>;
  { ce.action_count() } -> std::convertible_to<std::size_t>;
};

template <class M>
concept Privatizer = requires(M& m, const M& cm, const StateHistogram& s, Rng& rng) {
  { m.privatize(s, rng) } -> std::same_as<Tagged<StateHistogram>>;
  { cm.epsilon_step() } -> std::convertible_to<double>;
  { cm.calls() } -> std::convertible_to<std::uint64_t>;
};

template <class A>
concept Learner = requires(A& a, const A& ca, const StateHistogram& s,
                           const PrivatizedTransition& tr, std::uint64_t t, Rng& rng) {
  { ca.act(s, rng) } -> std::convertible_to<std::size_t>;
  { a.learn(tr, t, rng) } -> std::same_as<LearnStats>;
  { ca.exploration_rate() } -> std::convertible_to<double>;
};

// Projected Laplace at a fixed per-step epsilon; the population is taken
// from each input histogram.
class ProjectedLaplacePrivatizer {
 public:
  explicit ProjectedLaplacePrivatizer(double epsilon_step) : epsilon_step_(epsilon_step) {
    mech::MechanismParams(epsilon_step, 1);  // validates epsilon_step
  }

  Tagged<StateHistogram> privatize(const StateHistogram& s, Rng& rng) {
    ++calls_;
    return {mech::projected_laplace(s, mech::MechanismParams(epsilon_step_, s.population()), rng),
            false};
  }

  double epsilon_step() const noexcept { return epsilon_step_; }
  std::uint64_t calls() const noexcept { return calls_; }

 private:
  double epsilon_step_;
  std::uint64_t calls_ = 0;
};

// Privacy switched off: states pass through untouched and stay tagged raw.
class PassThroughPrivatizer {
 public:
  Tagged<StateHistogram> privatize(const StateHistogram& s, Rng&) {
    ++calls_;
    return {s, true};
  }
  double epsilon_step() const noexcept { return std::numeric_limits<double>::infinity(); }
  std::uint64_t calls() const noexcept { return calls_; }

 private:
  std::uint64_t calls_ = 0;
};

struct RunOptions {
  std::uint64_t horizon = 0;
  // When set, the privatizer must run at exactly budget->epsilon_step and the
  // budget must cover horizon + 1 releases.
  std::optional<accounting::PrivacyBudget> budget = std::nullopt;
  // Deliberate wiring faults, used only to prove the taint audit catches them.
  bool leak_raw_observation = false;
  bool leak_raw_reward = false;
};

struct RunStreams {
  Rng environment;
  Rng mechanism;
  Rng agent;

  static RunStreams from_seed(std::uint64_t seed) {
    return {make_rng(seed, stream::kEnvironment), make_rng(seed, stream::kMechanism),
            make_rng(seed, stream::kAgent)};
  }
};

struct StepRecord {
  std::uint64_t t = 0;
  std::size_t action = 0;
  double action_value = 0.0;
  double reward = 0.0;          // r~_t = r(s~_{t+1}, a~_t)
  StateHistogram observation;   // s~_t
  double eps_explore = 0.0;     // exploration rate used to pick a~_t
  std::optional<double> loss;
  bool tainted = false;         // taint flag of the transition handed to the agent
};

// Everything the agent saw or produced.
struct RunLog {
  std::vector<StepRecord> steps;
  StateHistogram final_observation;  // s~_T
  std::uint64_t mechanism_calls = 0;
  double epsilon_step = 0.0;
};

// Evaluation-only channel: raw states and ground-truth quantities.
struct Diagnostics {
  std::vector<StateHistogram> raw_states;  // s_0 .. s_T
  std::vector<double> reward_true;         // r(s_{t+1}, a~_t)
  std::vector<double> burden_true;         // whole-population burden after step t, if available
};

struct RunResult {
  RunLog log;
  Diagnostics diagnostics;
};

template <Environment E, Learner A, Privatizer M>
RunResult run(E& env, A& agent, M& mechanism, const RunOptions& options, RunStreams& streams) {
  if (options.budget && options.budget->epsilon_step != mechanism.epsilon_step())
    throw ConfigError("mechanism epsilon does not match the per-step privacy budget");
  if (options.budget && options.budget->horizon != options.horizon + 1)
    throw ConfigError("privacy budget must cover the horizon plus the initial release");

  RunResult out;
  RunLog& log = out.log;
  Diagnostics& diag = out.diagnostics;
  log.epsilon_step = mechanism.epsilon_step();
  const std::uint64_t calls_before = mechanism.calls();
  log.steps.reserve(options.horizon);

  StateHistogram raw = env.reset(streams.environment);
  diag.raw_states.push_back(raw);
  Tagged<StateHistogram> observation = mechanism.privatize(raw, streams.mechanism);
  if (options.leak_raw_observation) observation = {raw, true};

  for (std::uint64_t t = 0; t < options.horizon; ++t) {
    StepRecord rec;
    rec.t = t;
    rec.eps_explore = agent.exploration_rate();
    rec.observation = observation.value;
    const std::size_t action = agent.act(observation.value, streams.agent);
    const bool action_raw = observation.raw;

    StateHistogram raw_next = env.step(action, streams.environment);
    Tagged<StateHistogram> next = mechanism.privatize(raw_next, streams.mechanism);
    if (options.leak_raw_observation) next = {raw_next, true};

    Tagged<double> reward{env.reward(next.value, action), next.raw};
    if (options.leak_raw_reward) reward = {env.reward(raw_next, action), true};

    PrivatizedTransition tr{observation.value, action, reward.value, next.value,
                            observation.raw || action_raw || reward.raw || next.raw};
    const LearnStats stats = agent.learn(tr, t, streams.agent);

    rec.action = action;
    if constexpr (requires { env.action_value(action); })
      rec.action_value = env.action_value(action);
    else
      rec.action_value = static_cast<double>(action);
    rec.reward = reward.value;
    rec.loss = stats.loss;
    rec.tainted = tr.tainted;
    log.steps.push_back(std::move(rec));

    diag.reward_true.push_back(env.reward(raw_next, action));
    if constexpr (requires { env.true_burden(); }) diag.burden_true.push_back(env.true_burden());
    diag.raw_states.push_back(std::move(raw_next));

    observation = std::move(next);
  }
  log.final_observation = observation.value;
  log.mechanism_calls = mechanism.calls() - calls_before;
  return out;
}

struct AuditResult {
  bool pass = true;
  std::size_t tainted_steps = 0;
  std::optional<std::uint64_t> first_tainted;
};

// Fails iff any transition delivered to the agent carries a taint flag.
inline AuditResult taint_audit(const RunLog& log) {
  AuditResult out;
  for (const auto& step : log.steps) {
    if (!step.tainted) continue;
    out.pass = false;
    ++out.tainted_steps;
    if (!out.first_tainted) out.first_tainted = step.t;
  }
  return out;
}

}  // namespace popdp::dprl
