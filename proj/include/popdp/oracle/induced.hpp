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

// The Markov model an agent implicitly fits when it treats privatized
// states as if they were the true ones.

#pragma once

#include <cmath>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/oracle/finite_mdp.hpp"
#include "popdp/oracle/markov.hpp"
#include "popdp/oracle/mechanism_matrix.hpp"

namespace popdp::oracle {

struct InducedModel {
  Policy behavior;           // pi(a | s~), |S| x |A|
  Vector joint_stationary;   // mu(s, s~) at index s * |S| + s~
  Matrix action_posterior;   // nu(s | a~), |A| x |S|
  Matrix posterior;          // nu(s | s~, a~), row s~ * |A| + a~
  Matrix transition;         // P~(s~' | s~, a~), row s~ * |A| + a~
  FiniteMdp mdp;             // same states, actions, rewards and discount as the source
};

// Joint chain over (s, s~) when actions are drawn from behavior(. | s~):
//   P((s', s~') | (s, s~)) = sum_a pi(a | s~) P(s' | s, a) P_M(s~' | s').
inline Matrix joint_chain(const FiniteMdp& mdp, const Policy& behavior, const Matrix& pm) {
  const auto n = static_cast<Eigen::Index>(mdp.state_count());
  const auto m = static_cast<Eigen::Index>(mdp.action_count);
  Matrix joint = Matrix::Zero(n * n, n * n);
  Eigen::RowVectorXd next(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (Eigen::Index st = 0; st < n; ++st) {
      next.setZero();
      for (Eigen::Index a = 0; a < m; ++a) next += behavior(st, a) * mdp.transition.row(s * m + a);
      auto row = joint.row(s * n + st);
      for (Eigen::Index s2 = 0; s2 < n; ++s2)
        if (next(s2) != 0.0) row.segment(s2 * n, n) = next(s2) * pm.row(s2);
    }
  }
  return joint;
}

inline InducedModel induced_transition(const FiniteMdp& mdp, const Policy& behavior,
                                       const MechanismMatrix& mechanism) {
  mdp.validate();
  const auto n = static_cast<Eigen::Index>(mdp.state_count());
  const auto m = static_cast<Eigen::Index>(mdp.action_count);
  if (behavior.rows() != n || behavior.cols() != m)
    throw InputError("induced_transition: behavior policy has wrong shape");
  check_stochastic(behavior, "behavior policy");
  if ((behavior.array() <= 0.0).any())
    throw AssumptionError("behavior policy must give every action positive probability");
  if (mechanism.probability.rows() != n || mechanism.probability.cols() != n)
    throw InputError("induced_transition: mechanism matrix does not match the state space");
  if (mechanism.states != mdp.states)
    throw InputError("induced_transition: mechanism and MDP use different state grids");
  const Matrix& pm = mechanism.probability;

  InducedModel out;
  out.behavior = behavior;
  out.joint_stationary = stationary_distribution(joint_chain(mdp, behavior, pm));

  // nu(s | a~) proportional to sum_{s~} mu(s, s~) pi(a~ | s~).
  out.action_posterior = Matrix::Zero(m, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index st = 0; st < n; ++st) {
      const double w = out.joint_stationary(s * n + st);
      if (w == 0.0) continue;
      for (Eigen::Index a = 0; a < m; ++a) out.action_posterior(a, s) += w * behavior(st, a);
    }
  for (Eigen::Index a = 0; a < m; ++a) out.action_posterior.row(a) /= out.action_posterior.row(a).sum();

  // Bayes: nu(s | s~, a~) = P_M(s~ | s) nu(s | a~) / sum_s' P_M(s~ | s') nu(s' | a~).
  // Outputs with zero stationary probability fall back to nu(. | a~).
  out.posterior = Matrix::Zero(n * m, n);
  out.transition = Matrix::Zero(n * m, n);
  for (Eigen::Index st = 0; st < n; ++st) {
    for (Eigen::Index a = 0; a < m; ++a) {
      auto post = out.posterior.row(st * m + a);
      post = pm.col(st).transpose().cwiseProduct(out.action_posterior.row(a));
      const double z = post.sum();
      if (z > 0.0)
        post /= z;
      else
        post = out.action_posterior.row(a);
      Eigen::RowVectorXd mixed = Eigen::RowVectorXd::Zero(n);
      for (Eigen::Index s = 0; s < n; ++s)
        if (post(s) != 0.0) mixed += post(s) * mdp.transition.row(s * m + a);
      out.transition.row(st * m + a) = mixed * pm;
    }
  }
  check_stochastic(out.transition, "induced transition");

  out.mdp = mdp;
  out.mdp.transition = out.transition;
  return out;
}

// Point estimate from pooled replicates plus per-entry standard errors of
// the induced transition from the spread across replicates.
struct InducedEstimate {
  InducedModel model;
  Matrix standard_error;
  std::vector<InducedModel> replicates;
};

inline InducedEstimate estimate_induced(const FiniteMdp& mdp, const Policy& behavior,
                                        const std::vector<MechanismMatrix>& replicates) {
  if (replicates.size() < 2) throw InputError("estimate_induced: need at least two replicates");
  InducedEstimate out;
  out.model = induced_transition(mdp, behavior, pool(replicates));
  const Matrix& ref = out.model.transition;
  Matrix mean = Matrix::Zero(ref.rows(), ref.cols());
  Matrix sq = Matrix::Zero(ref.rows(), ref.cols());
  for (const auto& r : replicates) {
    out.replicates.push_back(induced_transition(mdp, behavior, r));
    mean += out.replicates.back().transition;
  }
  const double k = static_cast<double>(replicates.size());
  mean /= k;
  for (const auto& r : out.replicates) sq += (r.transition - mean).cwiseAbs2();
  out.standard_error = (sq / (k - 1.0) / k).cwiseSqrt();
  return out;
}

}  // namespace popdp::oracle
