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

// How far optimal values move when the agent plans on privatized states.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "popdp/oracle/finite_mdp.hpp"
#include "popdp/oracle/fixtures.hpp"
#include "popdp/oracle/induced.hpp"
#include "popdp/oracle/mechanism_matrix.hpp"

namespace popdp::oracle {

struct TrendOptions {
  std::uint64_t trials = 20000;  // per row per replicate
  std::size_t replicates = 10;
  std::uint64_t seed = 1;
};

struct GapEstimate {
  std::int64_t population = 0;
  double epsilon_step = 0.0;
  double gap = 0.0;             // || Q* - Q~* ||_inf from the pooled mechanism estimate
  double standard_error = 0.0;  // spread of the per-replicate gaps
};

inline double optimal_value_gap(const FiniteMdp& mdp, const InducedModel& induced) {
  return (value_iteration(mdp) - value_iteration(induced.mdp)).cwiseAbs().maxCoeff();
}

// Uniform behavior policy; the mechanism is projected Laplace at epsilon_step.
inline GapEstimate value_gap(const FiniteMdp& mdp, double epsilon_step, const TrendOptions& opt) {
  const std::int64_t population = mdp.states.front().population();
  const auto replicates = estimate_replicates(mdp.states, opt.trials, opt.replicates, opt.seed,
                                              projected_laplace_sampler(epsilon_step, population));
  const Policy behavior = uniform_policy(mdp.state_count(), mdp.action_count);
  const QTable q_star = value_iteration(mdp);
  auto gap_for = [&](const MechanismMatrix& pm) {
    return (q_star - value_iteration(induced_transition(mdp, behavior, pm).mdp)).cwiseAbs().maxCoeff();
  };
  std::vector<double> gaps;
  for (const auto& r : replicates) gaps.push_back(gap_for(r));
  GapEstimate out;
  out.population = population;
  out.epsilon_step = epsilon_step;
  out.gap = gap_for(pool(replicates));
  out.standard_error = replicate_stat(gaps).standard_error;
  return out;
}

// Gap table over the birth-death family, one row per (N, epsilon) with
// epsilon varying fastest. Each cell uses its own derived seed.
inline std::vector<GapEstimate> theorem2_trend(const std::vector<std::int64_t>& populations,
                                               const std::vector<double>& epsilons,
                                               const BirthDeathParams& base, const TrendOptions& opt) {
  std::vector<GapEstimate> out;
  std::uint64_t cell = 0;
  for (std::int64_t n : populations) {
    BirthDeathParams p = base;
    p.population = n;
    const FiniteMdp mdp = birth_death_mdp(p);
    for (double eps : epsilons) {
      TrendOptions o = opt;
      o.seed = derive_seed(opt.seed, cell++);
      out.push_back(value_gap(mdp, eps, o));
    }
  }
  return out;
}

// a should not exceed b: passes when a <= b + z * sqrt(se_a^2 + se_b^2).
inline bool not_above(const GapEstimate& a, const GapEstimate& b, double z = 3.0) {
  return a.gap <= b.gap + z * std::hypot(a.standard_error, b.standard_error) + 1e-12;
}

}  // namespace popdp::oracle
