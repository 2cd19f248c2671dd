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

#include <cmath>

#include "popdp/error.hpp"
#include "popdp/random.hpp"

namespace popdp::mech {

// Inverse CDF of the zero-mean Laplace distribution at u - 1/2, for
// u in (-1/2, 1/2): -scale * sign(u) * ln(1 - 2|u|).
inline double laplace_from_uniform(double scale, double u) {
  if (u == 0.0) return 0.0;
  const double magnitude = -scale * std::log1p(-2.0 * std::fabs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

inline double laplace_sample(double scale, Rng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InputError("Laplace scale must be positive and finite");
  double u;
  do {
    u = uniform01(rng) - 0.5;
  } while (u == -0.5);
  return laplace_from_uniform(scale, u);
}

}  // namespace popdp::mech
