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

// Status inference in a community that is either entirely infected or
// entirely healthy, from one count released with Laplace(1 / eps) noise.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "popdp/error.hpp"

namespace popdp::oracle {

struct AttackPosterior {
  double all_infected = 0.0;
  double none_infected = 0.0;
};

inline AttackPosterior correlation_attack(double prior_all, double prior_none, std::int64_t population,
                                          double epsilon, double observed) {
  if (!(prior_all >= 0.0 && prior_none >= 0.0) || std::abs(prior_all + prior_none - 1.0) > 1e-12)
    throw InputError("correlation_attack: prior masses must be nonnegative and sum to 1");
  if (population < 1 || !(epsilon >= 0.0) || !std::isfinite(observed))
    throw InputError("correlation_attack: bad arguments");
  const double n = static_cast<double>(population);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double la = prior_all > 0.0 ? std::log(prior_all) - epsilon * std::abs(observed - n) : neg_inf;
  const double ln = prior_none > 0.0 ? std::log(prior_none) - epsilon * std::abs(observed) : neg_inf;
  const double hi = std::max(la, ln);
  const double ea = std::exp(la - hi), en = std::exp(ln - hi);
  return {ea / (ea + en), en / (ea + en)};
}

}  // namespace popdp::oracle
