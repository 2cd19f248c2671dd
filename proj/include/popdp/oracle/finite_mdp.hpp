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

// Dense finite MDPs over an enumerated histogram grid, with exact solvers.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/histogram.hpp"

namespace popdp::oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Q tables and policies are |S| x |A|.
using QTable = Matrix;
using Policy = Matrix;

inline void check_stochastic(const Matrix& p, const std::string& what, double tol = 1e-9) {
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      const double v = p(r, c);
      if (!std::isfinite(v) || v < 0.0)
        throw InputError(what + ": negative or non-finite entry in row " + std::to_string(r));
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw InputError(what + ": row " + std::to_string(r) + " sums to " + std::to_string(sum));
  }
}

struct FiniteMdp {
  std::vector<StateHistogram> states;
  std::size_t action_count = 0;
  Matrix transition;  // row s * |A| + a, columns s'
  Matrix reward;      // |S| x |A|
  double discount = 0.9;

  std::size_t state_count() const noexcept { return states.size(); }
  Eigen::Index row(std::size_t s, std::size_t a) const noexcept {
    return static_cast<Eigen::Index>(s * action_count + a);
  }

  void validate() const {
    const auto n = static_cast<Eigen::Index>(states.size());
    const auto m = static_cast<Eigen::Index>(action_count);
    if (n == 0 || m == 0) throw InputError("FiniteMdp: empty state or action set");
    if (transition.rows() != n * m || transition.cols() != n)
      throw InputError("FiniteMdp: transition has wrong shape");
    if (reward.rows() != n || reward.cols() != m) throw InputError("FiniteMdp: reward has wrong shape");
    if (!reward.allFinite()) throw InputError("FiniteMdp: non-finite reward");
    if (!(discount >= 0.0 && discount < 1.0)) throw InputError("FiniteMdp: discount must be in [0, 1)");
    check_stochastic(transition, "FiniteMdp transition");
  }
};

inline Policy uniform_policy(std::size_t states, std::size_t actions) {
  return Policy::Constant(static_cast<Eigen::Index>(states), static_cast<Eigen::Index>(actions),
                          1.0 / static_cast<double>(actions));
}

// Deterministic greedy policy; ties go to the smallest action.
inline Policy greedy_policy(const QTable& q) {
  Policy pi = Policy::Zero(q.rows(), q.cols());
  for (Eigen::Index s = 0; s < q.rows(); ++s) {
    Eigen::Index best = 0;
    for (Eigen::Index a = 1; a < q.cols(); ++a)
      if (q(s, a) > q(s, best)) best = a;
    pi(s, best) = 1.0;
  }
  return pi;
}

inline Vector state_values(const QTable& q, const Policy& pi) {
  return q.cwiseProduct(pi).rowwise().sum();
}

inline Vector greedy_values(const QTable& q) { return q.rowwise().maxCoeff(); }

// r + discount * P v, reshaped to |S| x |A|.
inline QTable backup(const FiniteMdp& mdp, const Vector& v) {
  const Vector pv = mdp.transition * v;
  const auto n = static_cast<Eigen::Index>(mdp.state_count());
  const auto m = static_cast<Eigen::Index>(mdp.action_count);
  return mdp.reward + mdp.discount * Eigen::Map<const RowMajorMatrix>(pv.data(), n, m);
}

// Iterates the Bellman optimality operator until the sup-norm residual of
// the returned table is at most tol.
inline QTable value_iteration(const FiniteMdp& mdp, double tol = 1e-10,
                              std::uint64_t max_iterations = 100000000) {
  if (!(mdp.discount < 1.0)) throw InputError("value_iteration: discount must be < 1");
  mdp.validate();
  QTable q = QTable::Zero(mdp.reward.rows(), mdp.reward.cols());
  for (std::uint64_t it = 0; it < max_iterations; ++it) {
    QTable next = backup(mdp, greedy_values(q));
    const double residual = (next - q).cwiseAbs().maxCoeff();
    q = std::move(next);
    if (mdp.discount * residual <= tol || residual == 0.0) return q;
  }
  throw InputError("value_iteration: no convergence");
}

inline Matrix policy_transition(const FiniteMdp& mdp, const Policy& pi) {
  const auto n = static_cast<Eigen::Index>(mdp.state_count());
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (std::size_t a = 0; a < mdp.action_count; ++a)
      p.row(s) += pi(s, static_cast<Eigen::Index>(a)) *
                  mdp.transition.row(mdp.row(static_cast<std::size_t>(s), a));
  return p;
}

// Exact Q^pi by a linear solve of (I - discount P_pi) V = r_pi.
inline QTable evaluate_policy(const FiniteMdp& mdp, const Policy& pi) {
  mdp.validate();
  if (pi.rows() != mdp.reward.rows() || pi.cols() != mdp.reward.cols())
    throw InputError("evaluate_policy: policy has wrong shape");
  check_stochastic(pi, "policy");
  const auto n = static_cast<Eigen::Index>(mdp.state_count());
  const Matrix a = Matrix::Identity(n, n) - mdp.discount * policy_transition(mdp, pi);
  const Vector r_pi = state_values(mdp.reward, pi);
  const Vector v = a.partialPivLu().solve(r_pi);
  return backup(mdp, v);
}

}  // namespace popdp::oracle
