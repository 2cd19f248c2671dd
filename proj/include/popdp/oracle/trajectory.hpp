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

// Long-run transition frequencies between privatized states, measured by
// simulating the true chain and privatizing every visited state.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/oracle/enumerate.hpp"
#include "popdp/oracle/finite_mdp.hpp"
#include "popdp/random.hpp"

namespace popdp::oracle {

struct TrajectoryEstimate {
  Matrix frequency;       // row s~ * |A| + a, column s~'
  Matrix standard_error;  // batch-means standard error of each ratio estimate
  std::vector<std::uint64_t> visits;  // per row
  std::uint64_t steps = 0;
};

inline std::size_t sample_categorical(const double* cumulative, std::size_t n, Rng& rng) {
  const double u = uniform01(rng);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (u < cumulative[i]) return i;
  return n - 1;
}

template <class Sampler>
TrajectoryEstimate trajectory_transition_estimate(const FiniteMdp& mdp, const Policy& behavior,
                                                  Sampler&& privatize, std::uint64_t steps,
                                                  std::size_t batches, Rng& rng,
                                                  std::uint64_t burn_in = 1000) {
  mdp.validate();
  if (batches < 2 || steps < batches) throw InputError("trajectory estimate: need steps >= batches >= 2");
  const std::size_t n = mdp.state_count();
  const std::size_t m = mdp.action_count;
  const StateIndex index(mdp.states);

  RowMajorMatrix cum_p = mdp.transition;
  for (Eigen::Index r = 0; r < cum_p.rows(); ++r)
    for (Eigen::Index c = 1; c < cum_p.cols(); ++c) cum_p(r, c) += cum_p(r, c - 1);
  RowMajorMatrix cum_pi = behavior;
  for (Eigen::Index r = 0; r < cum_pi.rows(); ++r)
    for (Eigen::Index c = 1; c < cum_pi.cols(); ++c) cum_pi(r, c) += cum_pi(r, c - 1);

  const std::size_t rows = n * m;
  // Per batch: pair counts (rows x n) and row counts.
  std::vector<std::vector<double>> pair(batches, std::vector<double>(rows * n, 0.0));
  std::vector<std::vector<double>> row_count(batches, std::vector<double>(rows, 0.0));

  std::size_t s = 0;
  std::size_t obs = index(privatize(mdp.states[s], rng));
  auto advance = [&](std::size_t& a_out) {
    a_out = sample_categorical(cum_pi.row(static_cast<Eigen::Index>(obs)).data(), m, rng);
    s = sample_categorical(cum_p.row(static_cast<Eigen::Index>(s * m + a_out)).data(), n, rng);
    return index(privatize(mdp.states[s], rng));
  };
  std::size_t a = 0;
  for (std::uint64_t t = 0; t < burn_in; ++t) obs = advance(a);

  const std::uint64_t per_batch = steps / batches;
  const std::uint64_t used = per_batch * batches;
  for (std::uint64_t t = 0; t < used; ++t) {
    const std::size_t b = static_cast<std::size_t>(t / per_batch);
    const std::size_t next = advance(a);
    const std::size_t r = obs * m + a;
    pair[b][r * n + next] += 1.0;
    row_count[b][r] += 1.0;
    obs = next;
  }

  TrajectoryEstimate out;
  out.steps = used;
  out.frequency = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  out.standard_error = Matrix::Zero(out.frequency.rows(), out.frequency.cols());
  out.visits.assign(rows, 0);
  const double k = static_cast<double>(batches);
  for (std::size_t r = 0; r < rows; ++r) {
    double total_row = 0.0;
    for (std::size_t b = 0; b < batches; ++b) total_row += row_count[b][r];
    out.visits[r] = static_cast<std::uint64_t>(total_row);
    if (total_row == 0.0) continue;
    for (std::size_t c = 0; c < n; ++c) {
      double total_pair = 0.0;
      for (std::size_t b = 0; b < batches; ++b) total_pair += pair[b][r * n + c];
      const double ratio = total_pair / total_row;
      // Ratio estimator variance from batch residuals.
      double ss = 0.0;
      for (std::size_t b = 0; b < batches; ++b) {
        const double e = pair[b][r * n + c] - ratio * row_count[b][r];
        ss += e * e;
      }
      const auto ri = static_cast<Eigen::Index>(r);
      const auto ci = static_cast<Eigen::Index>(c);
      out.frequency(ri, ci) = ratio;
      out.standard_error(ri, ci) = std::sqrt(k / (k - 1.0) * ss) / total_row;
    }
  }
  return out;
}

struct MatrixAgreement {
  std::size_t cells = 0;
  std::size_t failures = 0;
  double max_z = 0.0;  // largest |a - b| / combined standard error
  double max_abs_difference = 0.0;
  bool pass = false;
};

// Entrywise |a - b| <= z * sqrt(se_a^2 + se_b^2). Cells where both standard
// errors vanish must agree to 1e-12.
inline MatrixAgreement compare_within(const Matrix& a, const Matrix& se_a, const Matrix& b,
                                      const Matrix& se_b, double z = 3.0) {
  MatrixAgreement out;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const double diff = std::abs(a(r, c) - b(r, c));
      const double se = std::hypot(se_a(r, c), se_b(r, c));
      ++out.cells;
      out.max_abs_difference = std::max(out.max_abs_difference, diff);
      const bool ok = se > 0.0 ? diff <= z * se : diff <= 1e-12;
      if (se > 0.0) out.max_z = std::max(out.max_z, diff / se);
      if (!ok) ++out.failures;
    }
  out.pass = out.failures == 0;
  return out;
}

}  // namespace popdp::oracle
