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

// Empirical transition matrices of privatization mechanisms over a grid.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/mech/projected_laplace.hpp"
#include "popdp/oracle/enumerate.hpp"
#include "popdp/oracle/finite_mdp.hpp"
#include "popdp/random.hpp"

namespace popdp::oracle {

inline constexpr std::uint64_t kMinMechanismTrials = 10000;

struct MechanismMatrix {
  std::vector<StateHistogram> states;
  Matrix probability;     // row = source state, column = output state
  std::uint64_t trials = 0;  // per row; 0 for an exact matrix
  Matrix standard_error;  // sqrt(p (1 - p) / trials) per entry

  static MechanismMatrix exact(std::vector<StateHistogram> states, Matrix p) {
    if (p.rows() != static_cast<Eigen::Index>(states.size()) || p.cols() != p.rows())
      throw InputError("MechanismMatrix: shape does not match the state list");
    check_stochastic(p, "mechanism matrix");
    MechanismMatrix m;
    m.states = std::move(states);
    m.standard_error = Matrix::Zero(p.rows(), p.cols());
    m.probability = std::move(p);
    return m;
  }

  static MechanismMatrix identity(std::vector<StateHistogram> states) {
    const auto n = static_cast<Eigen::Index>(states.size());
    return exact(std::move(states), Matrix::Identity(n, n));
  }
};

// Monte Carlo estimate of P(sample(s) = s') with `trials` draws per row. Row
// r uses its own stream derived from `seed`, so rows are independent of
// evaluation order.
template <class Sampler>
MechanismMatrix estimate_matrix(const std::vector<StateHistogram>& states, std::uint64_t trials,
                                std::uint64_t seed, Sampler&& sample) {
  if (trials < kMinMechanismTrials) throw InputError("estimate_matrix: need at least 1e4 trials per row");
  const StateIndex index(states);
  const auto n = static_cast<Eigen::Index>(states.size());
  MechanismMatrix m;
  m.states = states;
  m.trials = trials;
  m.probability = Matrix::Zero(n, n);
  std::vector<std::uint64_t> counts(states.size());
  for (Eigen::Index r = 0; r < n; ++r) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(r));
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t k = 0; k < trials; ++k) ++counts[index(sample(states[r], rng))];
    for (Eigen::Index c = 0; c < n; ++c)
      m.probability(r, c) = static_cast<double>(counts[c]) / static_cast<double>(trials);
  }
  m.standard_error =
      (m.probability.array() * (1.0 - m.probability.array()) / static_cast<double>(trials)).sqrt();
  return m;
}

inline auto projected_laplace_sampler(double epsilon_step, std::int64_t population) {
  const mech::MechanismParams params(epsilon_step, population);
  return [params](const StateHistogram& s, Rng& rng) { return mech::projected_laplace(s, params, rng); };
}

inline MechanismMatrix estimate_mechanism_matrix(std::int64_t population, std::size_t bins,
                                                 double epsilon_step, std::uint64_t trials, Rng& rng,
                                                 std::size_t cap = kDefaultStateCap) {
  const auto states = enumerate_states(population, bins, cap);
  return estimate_matrix(states, trials, rng(), projected_laplace_sampler(epsilon_step, population));
}

// Independent replicate estimates; replicate i uses derive_seed(seed, i).
template <class Sampler>
std::vector<MechanismMatrix> estimate_replicates(const std::vector<StateHistogram>& states,
                                                 std::uint64_t trials, std::size_t replicates,
                                                 std::uint64_t seed, Sampler&& sample) {
  if (replicates < 2) throw InputError("estimate_replicates: need at least two replicates");
  std::vector<MechanismMatrix> out;
  out.reserve(replicates);
  for (std::size_t i = 0; i < replicates; ++i)
    out.push_back(estimate_matrix(states, trials, derive_seed(seed, i), sample));
  return out;
}

// Average of equally sized replicates: the estimate from all their trials.
inline MechanismMatrix pool(const std::vector<MechanismMatrix>& replicates) {
  if (replicates.empty()) throw InputError("pool: no replicates");
  MechanismMatrix m;
  m.states = replicates.front().states;
  m.probability = Matrix::Zero(replicates.front().probability.rows(), replicates.front().probability.cols());
  for (const auto& r : replicates) {
    if (r.trials != replicates.front().trials) throw InputError("pool: unequal trial counts");
    m.probability += r.probability;
  }
  m.probability /= static_cast<double>(replicates.size());
  m.trials = replicates.front().trials * replicates.size();
  m.standard_error =
      (m.probability.array() * (1.0 - m.probability.array()) / static_cast<double>(m.trials)).sqrt();
  return m;
}

// Mean and standard error of the mean of a scalar across replicates.
struct ReplicateStat {
  double mean = 0.0;
  double standard_error = 0.0;
};

inline ReplicateStat replicate_stat(const std::vector<double>& xs) {
  ReplicateStat out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.standard_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return out;
}

}  // namespace popdp::oracle
