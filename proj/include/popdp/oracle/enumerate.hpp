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

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/histogram.hpp"

namespace popdp::oracle {

inline constexpr std::size_t kDefaultStateCap = 100000;

// C(N+K-1, K-1), saturating at UINT64_MAX.
inline std::uint64_t grid_size(std::int64_t population, std::size_t bins) {
  if (population < 0 || bins == 0) throw InputError("grid_size: need N >= 0 and K >= 1");
  unsigned __int128 c = 1;
  for (std::size_t i = 1; i < bins; ++i) {
    c = c * static_cast<unsigned __int128>(population + static_cast<std::int64_t>(i)) / i;
    if (c > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

// All count vectors with K bins summing to N, lexicographically increasing.
inline std::vector<StateHistogram> enumerate_states(std::int64_t population, std::size_t bins,
                                                    std::size_t cap = kDefaultStateCap) {
  if (population < 1 || bins < 1) throw InputError("enumerate_states: need N >= 1 and K >= 1");
  const std::uint64_t n = grid_size(population, bins);
  if (n > cap)
    throw CapacityError("state space of " + std::to_string(n) + " points exceeds cap " +
                        std::to_string(cap));
  std::vector<StateHistogram> out;
  out.reserve(n);
  std::vector<std::int64_t> counts(bins, 0);
  auto fill = [&](auto&& self, std::size_t pos, std::int64_t left) -> void {
    if (pos + 1 == bins) {
      counts[pos] = left;
      out.emplace_back(counts, population);
      return;
    }
    for (std::int64_t c = 0; c <= left; ++c) {
      counts[pos] = c;
      self(self, pos + 1, left - c);
    }
  };
  fill(fill, 0, population);
  return out;
}

class StateIndex {
 public:
  explicit StateIndex(const std::vector<StateHistogram>& states) {
    index_.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
      if (!index_.emplace(states[i], i).second) throw InputError("duplicate state in index");
  }

  std::size_t operator()(const StateHistogram& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw InputError("state not in enumerated grid");
    return it->second;
  }

  std::size_t size() const noexcept { return index_.size(); }

 private:
  std::unordered_map<StateHistogram, std::size_t, StateHistogramHash> index_;
};

}  // namespace popdp::oracle
