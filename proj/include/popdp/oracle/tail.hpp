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

// Empirical check of the projected Laplace concentration bound
//   P(|| s - M(s) ||_inf >= alpha + 1 / (sqrt(2) N)) <= K exp(-N alpha eps / (2 sqrt(K))).

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/histogram.hpp"
#include "popdp/mech/projected_laplace.hpp"
#include "popdp/random.hpp"

namespace popdp::oracle {

inline double tail_bound(std::int64_t population, std::size_t bins, double epsilon_step, double alpha) {
  return static_cast<double>(bins) *
         std::exp(-static_cast<double>(population) * alpha * epsilon_step /
                  (2.0 * std::sqrt(static_cast<double>(bins))));
}

inline double tail_threshold(std::int64_t population, double alpha) {
  return alpha + 1.0 / (std::sqrt(2.0) * static_cast<double>(population));
}

// Counts spread as evenly as possible, larger bins first. Interior when N >= K.
inline StateHistogram interior_state(std::int64_t population, std::size_t bins) {
  if (population < static_cast<std::int64_t>(bins))
    throw InputError("interior_state: need N >= K");
  const auto k = static_cast<std::int64_t>(bins);
  std::vector<std::int64_t> counts(bins, population / k);
  for (std::int64_t i = 0; i < population % k; ++i) ++counts[static_cast<std::size_t>(i)];
  return StateHistogram(std::move(counts), population);
}

struct TailCell {
  std::int64_t population = 0;
  std::size_t bins = 0;
  double epsilon_step = 0.0;
  double alpha = 0.0;
  double threshold = 0.0;
  double frequency = 0.0;
  double bound = 0.0;
  double standard_error = 0.0;
  bool pass = false;
};

// One set of `trials` mechanism draws from the interior state, scored
// against every alpha in the grid.
inline std::vector<TailCell> tail_bound_check(std::int64_t population, std::size_t bins,
                                              double epsilon_step, const std::vector<double>& alphas,
                                              std::uint64_t trials, Rng& rng) {
  if (trials == 0) throw InputError("tail_bound_check: need trials > 0");
  const StateHistogram source = interior_state(population, bins);
  const mech::MechanismParams params(epsilon_step, population);
  std::vector<std::uint64_t> exceed(alphas.size(), 0);
  std::vector<double> thresholds;
  for (double a : alphas) {
    if (!(a >= 0.0)) throw InputError("tail_bound_check: alpha must be >= 0");
    thresholds.push_back(tail_threshold(population, a));
  }
  for (std::uint64_t k = 0; k < trials; ++k) {
    const double d = sup_distance(source, mech::projected_laplace(source, params, rng));
    for (std::size_t i = 0; i < alphas.size(); ++i)
      if (d >= thresholds[i]) ++exceed[i];
  }
  std::vector<TailCell> out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    TailCell c;
    c.population = population;
    c.bins = bins;
    c.epsilon_step = epsilon_step;
    c.alpha = alphas[i];
    c.threshold = thresholds[i];
    c.frequency = static_cast<double>(exceed[i]) / static_cast<double>(trials);
    c.bound = tail_bound(population, bins, epsilon_step, alphas[i]);
    c.standard_error = std::sqrt(c.frequency * (1.0 - c.frequency) / static_cast<double>(trials));
    c.pass = c.frequency <= c.bound + 3.0 * c.standard_error;
    out.push_back(c);
  }
  return out;
}

}  // namespace popdp::oracle
