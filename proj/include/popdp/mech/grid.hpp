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

// Snapping a simplex point to the nearest histogram on the 1/N grid.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/histogram.hpp"

namespace popdp::mech {

namespace detail {

inline double squared_gap(std::span<const std::int64_t> counts,
                          std::span<const double> scaled) {
  double acc = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double d = static_cast<double>(counts[i]) - scaled[i];
    acc += d * d;
  }
  return acc;
}

// Best valid grid point in the {-1, 0, +1}^K box around `rounded`, scanned
// in lexicographic offset order; first minimum wins.
inline std::vector<std::int64_t> neighborhood_search(
    std::span<const std::int64_t> rounded, std::span<const double> scaled,
    std::int64_t population) {
  const std::size_t k = rounded.size();
  std::vector<int> offset(k, -1);
  std::vector<std::int64_t> candidate(k), best;
  double best_gap = std::numeric_limits<double>::infinity();
  while (true) {
    std::int64_t total = 0;
    bool valid = true;
    for (std::size_t i = 0; i < k; ++i) {
      candidate[i] = rounded[i] + offset[i];
      if (candidate[i] < 0) valid = false;
      total += candidate[i];
    }
    if (valid && total == population) {
      const double gap = squared_gap(candidate, scaled);
      if (gap < best_gap) {
        best_gap = gap;
        best = candidate;
      }
    }
    std::size_t pos = k;
    while (pos > 0 && offset[pos - 1] == 1) offset[--pos] = -1;
    if (pos == 0) break;
    ++offset[pos - 1];
  }
  if (best.empty()) throw InputError("no valid grid point near the simplex point");
  return best;
}

}  // namespace detail

// Maps a point on the simplex to a histogram over population N:
//   1. round every coordinate to the nearest multiple of 1/N (half away
//      from zero) and record residuals e_i;
//   2. drop the index j with the largest |e_j| (smallest j on ties) and
//      let coordinate j absorb the rounding error of all the others.
// If step 2 would make coordinate j negative, the best valid point in the
// 3^K box around the rounded point is returned instead.
inline StateHistogram grid_snap(std::span<const double> point, std::int64_t population) {
  if (population < 1) throw InputError("grid population must be >= 1");
  if (point.empty()) throw InputError("grid snap of an empty vector");
  const std::size_t k = point.size();
  const double n = static_cast<double>(population);

  std::vector<double> scaled(k);
  std::vector<std::int64_t> counts(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(point[i])) throw InputError("grid snap of a non-finite vector");
    scaled[i] = std::max(0.0, point[i]) * n;
    counts[i] = std::llround(scaled[i]);
  }

  // Residuals in count units; ties within 1e-9 of a count go to the smaller index.
  constexpr double kTieTolerance = 1e-9;
  std::size_t absorb = 0;
  double largest = -1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double e = std::fabs(static_cast<double>(counts[i]) - scaled[i]);
    if (e > largest + kTieTolerance) {
      largest = e;
      absorb = i;
    }
  }

  std::int64_t others = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (i != absorb) others += counts[i];
  const std::int64_t absorbed = population - others;

  if (absorbed >= 0) {
    counts[absorb] = absorbed;
    return StateHistogram(std::move(counts), population);
  }
  return StateHistogram(detail::neighborhood_search(counts, scaled, population),
                        population);
}

}  // namespace popdp::mech
