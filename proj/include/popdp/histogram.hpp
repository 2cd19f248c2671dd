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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/random.hpp"

namespace popdp {

// Agent-visible state: K proportions on the grid {0, 1/N, ..., 1}.
//
// Stored as integer counts over a population N so that every entry is
// exactly k/N and the entries sum to exactly 1.
class StateHistogram {
 public:
  StateHistogram() = default;

  StateHistogram(std::vector<std::int64_t> counts, std::int64_t population)
      : counts_(std::move(counts)), population_(population) {
    if (population_ < 1) throw InputError("histogram population must be >= 1");
    if (counts_.empty()) throw InputError("histogram needs at least one bin");
    std::int64_t total = 0;
    for (auto c : counts_) {
      if (c < 0) throw InputError("histogram counts must be nonnegative");
      total += c;
    }
    if (total != population_)
      throw InputError("histogram counts must sum to the population");
  }

  std::size_t size() const noexcept { return counts_.size(); }
  std::int64_t population() const noexcept { return population_; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::int64_t count(std::size_t i) const { return counts_.at(i); }

  double proportion(std::size_t i) const {
    return static_cast<double>(counts_.at(i)) / static_cast<double>(population_);
  }

  std::vector<double> proportions() const {
    std::vector<double> out(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) out[i] = proportion(i);
    return out;
  }

  friend bool operator==(const StateHistogram&, const StateHistogram&) = default;

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t population_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const StateHistogram& s) {
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ", ";
    os << s.count(i) << '/' << s.population();
  }
  return os << ')';
}

struct StateHistogramHash {
  std::size_t operator()(const StateHistogram& s) const noexcept {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(s.population()));
    for (auto c : s.counts()) h = mix64(h ^ static_cast<std::uint64_t>(c));
    return static_cast<std::size_t>(h);
  }
};

// Largest coordinate-wise gap in proportion units.
inline double sup_distance(const StateHistogram& a, const StateHistogram& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.proportion(i) - b.proportion(i);
    best = std::max(best, d < 0 ? -d : d);
  }
  return best;
}

}  // namespace popdp
