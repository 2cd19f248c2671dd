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

// Privacy budget arithmetic for T-fold adaptive composition of pure
// epsilon'-DP steps.

#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "popdp/error.hpp"

namespace popdp::accounting {

namespace detail {
inline void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
}
inline void check_horizon(double horizon) {
  if (!(horizon >= 1.0) || !std::isfinite(horizon))
    throw InputError("horizon must be >= 1");
}
}  // namespace detail

// Cumulative epsilon after T adaptive uses of an eps_step-DP mechanism,
// with composition slack delta:
//   eps = sqrt(2 T ln(1/delta)) eps_step + T eps_step (e^eps_step - 1).
inline double advanced_composition(double eps_step, double horizon, double delta) {
  detail::check_delta(delta);
  if (!(horizon >= 0.0)) throw InputError("horizon must be nonnegative");
  if (!(eps_step >= 0.0)) throw InputError("per-step epsilon must be nonnegative");
  return std::sqrt(2.0 * horizon * std::log(1.0 / delta)) * eps_step +
         horizon * eps_step * std::expm1(eps_step);
}

// Per-step budget that spends half the target on the square-root term:
//   eps_step = eps / (2 sqrt(2 T ln(1/delta))).
inline double per_step_budget(double eps_target, double delta, double horizon) {
  if (!(eps_target > 0.0) || !std::isfinite(eps_target))
    throw InputError("target epsilon must be positive and finite");
  detail::check_delta(delta);
  detail::check_horizon(horizon);
  return eps_target / (2.0 * std::sqrt(2.0 * horizon * std::log(1.0 / delta)));
}

struct PrivacyBudget {
  double epsilon_target;
  double delta;
  std::uint64_t horizon;
  double epsilon_step;

  static PrivacyBudget make(double eps_target, double delta, std::uint64_t horizon) {
    return {eps_target, delta, horizon,
            per_step_budget(eps_target, delta, static_cast<double>(horizon))};
  }

  double achieved() const {
    return advanced_composition(epsilon_step, static_cast<double>(horizon), delta);
  }
};

struct CurvePoint {
  double target;
  double achieved;
};

inline std::vector<CurvePoint> achieved_curve(double delta, double horizon,
                                              const std::vector<double>& targets) {
  std::vector<CurvePoint> out;
  out.reserve(targets.size());
  for (double eps : targets)
    out.push_back({eps, advanced_composition(per_step_budget(eps, delta, horizon),
                                             horizon, delta)});
  return out;
}

}  // namespace popdp::accounting
