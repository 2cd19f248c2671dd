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
#include <cstddef>
#include <span>

namespace popdp::testing {

// Upper quantile of chi-square with `dof` degrees of freedom at normal
// quantile z (Wilson-Hilferty). z = 4.265 is roughly the 1e-5 tail.
inline double chi_square_quantile(double dof, double z = 4.265) {
  const double a = 2.0 / (9.0 * dof);
  const double c = 1.0 - a + z * std::sqrt(a);
  return dof * c * c * c;
}

// Pearson statistic of observed counts against equal expected counts.
inline double chi_square_uniform(std::span<const std::size_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// Binomial proportion standard error.
inline double proportion_se(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace popdp::testing
