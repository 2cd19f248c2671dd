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

// Data curator side: sample N individuals, answer the histogram query.

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/histogram.hpp"
#include "popdp/popproc/seirs.hpp"
#include "popdp/random.hpp"

namespace popdp::popproc {

// Uniform sampling without replacement of a fixed number of individuals,
// redrawn independently at every step. Each individual is included with
// marginal probability sample_size / N*.
struct SamplerConfig {
  std::size_t sample_size = 1;

  void validate(std::size_t population) const {
    if (sample_size < 1) throw InputError("sample size must be >= 1");
    if (sample_size > population)
      throw InputError("sample size " + std::to_string(sample_size) +
                       " exceeds population " + std::to_string(population));
  }
};

struct Record {
  NodeId id;
  std::uint8_t status;  // status index in [0, K)
};

using Dataset = std::vector<Record>;

// Partial Fisher-Yates over the node ids; records come out in draw order.
inline Dataset sample_dataset(const PopulationState& pop,
                              const SamplerConfig& cfg, Rng& rng) {
  cfg.validate(pop.size());
  std::vector<NodeId> ids(pop.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  Dataset out;
  out.reserve(cfg.sample_size);
  for (std::size_t i = 0; i < cfg.sample_size; ++i) {
    const std::size_t j = i + uniform_index(rng, ids.size() - i);
    std::swap(ids[i], ids[j]);
    out.push_back({ids[i], static_cast<std::uint8_t>(pop.statuses[ids[i]])});
  }
  return out;
}

// q(D) = (1/N) * (#{records with status k})_k.
inline StateHistogram histogram_query(const Dataset& data,
                                      std::size_t status_count = kSeirsStatusCount) {
  if (data.empty()) throw InputError("histogram query on an empty dataset");
  std::vector<std::int64_t> counts(status_count, 0);
  for (const auto& r : data) {
    if (r.status >= status_count)
      throw InputError("status index outside [0, K)");
    ++counts[r.status];
  }
  return StateHistogram(std::move(counts), static_cast<std::int64_t>(data.size()));
}

}  // namespace popdp::popproc
