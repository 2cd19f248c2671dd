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

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "popdp/error.hpp"

namespace popdp::mech {

// Euclidean projection onto the probability simplex {x >= 0, sum x = 1}
// by the sorting method: with v sorted descending,
//   pi(m) = (sum_{r<=m} v_(r) - 1) / m,
//   rho   = max{m : v_(m) - pi(m) > 0},
//   out_i = max(0, v_i - pi(rho)).
inline std::vector<double> simplex_project(std::span<const double> v) {
  if (v.empty()) return {};
  for (double x : v)
    if (!std::isfinite(x)) throw InputError("simplex projection of a non-finite vector");

  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  double prefix = 0.0;
  double threshold = 0.0;
  for (std::size_t m = 1; m <= sorted.size(); ++m) {
    prefix += sorted[m - 1];
    const double pi_m = (prefix - 1.0) / static_cast<double>(m);
    // rho = 1 always qualifies, so threshold is set at least once.
    if (sorted[m - 1] - pi_m > 0.0) threshold = pi_m;
  }

  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(0.0, v[i] - threshold);
  return out;
}

}  // namespace popdp::mech
