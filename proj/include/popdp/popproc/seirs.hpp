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

// SEIRS dynamics on a contact graph with per-step Bernoulli transitions.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/popproc/graph.hpp"
#include "popdp/random.hpp"

namespace popdp::popproc {

enum class Status : std::uint8_t {
  kSusceptible = 0,
  kExposed = 1,
  kInfected = 2,
  kRecovered = 3,
};

inline constexpr std::size_t kSeirsStatusCount = 4;

constexpr std::size_t index_of(Status s) { return static_cast<std::size_t>(s); }

struct SeirsParams {
  double beta = 0.2;        // infection probability per infected contact
  double sigma = 0.3;       // E -> I
  double gamma_rate = 0.1;  // I -> R
  double rho = 0.01;        // R -> S

  // beta, sigma and gamma_rate must lie in (0, 1]. rho may also be 0,
  // which turns the process into SEIR (no waning immunity).
  void validate() const {
    auto in_unit = [](double x) { return x > 0.0 && x <= 1.0; };
    if (!in_unit(beta)) throw InputError("beta must lie in (0, 1]");
    if (!in_unit(sigma)) throw InputError("sigma must lie in (0, 1]");
    if (!in_unit(gamma_rate)) throw InputError("gamma_rate must lie in (0, 1]");
    if (!(rho >= 0.0 && rho <= 1.0)) throw InputError("rho must lie in [0, 1]");
  }
};

struct PopulationState {
  std::vector<Status> statuses;
  std::uint64_t step = 0;

  std::size_t size() const noexcept { return statuses.size(); }
};

// Probability that a susceptible node with `infected_contacts` infected,
// non-quarantined neighbours becomes exposed in one step.
inline double exposure_probability(double beta, std::size_t infected_contacts) {
  if (infected_contacts == 0) return 0.0;
  return 1.0 - std::pow(1.0 - beta, static_cast<double>(infected_contacts));
}

// Every node independently Infected with probability p0, else Susceptible.
inline PopulationState initial_population(std::size_t node_count, double p0,
                                          Rng& rng) {
  if (!(p0 >= 0.0 && p0 <= 1.0))
    throw InputError("initial infection probability must lie in [0, 1]");
  PopulationState pop;
  pop.statuses.resize(node_count, Status::kSusceptible);
  for (auto& s : pop.statuses)
    if (bernoulli(rng, p0)) s = Status::kInfected;
  return pop;
}

// Quarantine membership, one flag per node.
using QuarantineMask = std::vector<std::uint8_t>;

inline QuarantineMask make_mask(std::size_t node_count,
                                std::span<const NodeId> quarantined) {
  QuarantineMask mask(node_count, 0);
  for (NodeId id : quarantined) {
    if (id >= node_count)
      throw InputError("quarantined node id out of range: " + std::to_string(id));
    mask[id] = 1;
  }
  return mask;
}

// One synchronous SEIRS step. Exactly one uniform draw is consumed per node,
// in node order, so the stream position after a step depends only on N*.
inline PopulationState step_statuses(const PopulationState& pop,
                                     const ContactGraph& graph,
                                     const QuarantineMask& quarantined,
                                     const SeirsParams& params, Rng& rng) {
  const std::size_t n = graph.node_count();
  if (pop.size() != n)
    throw InputError("population size does not match the contact graph");
  if (quarantined.size() != n)
    throw InputError("quarantine mask size does not match the contact graph");

  PopulationState next;
  next.statuses = pop.statuses;
  next.step = pop.step + 1;
  for (NodeId i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    switch (pop.statuses[i]) {
      case Status::kSusceptible: {
        if (quarantined[i]) break;
        std::size_t d = 0;
        for (NodeId j : graph.neighbors(i))
          if (!quarantined[j] && pop.statuses[j] == Status::kInfected) ++d;
        if (u < exposure_probability(params.beta, d))
          next.statuses[i] = Status::kExposed;
        break;
      }
      case Status::kExposed:
        if (u < params.sigma) next.statuses[i] = Status::kInfected;
        break;
      case Status::kInfected:
        if (u < params.gamma_rate) next.statuses[i] = Status::kRecovered;
        break;
      case Status::kRecovered:
        if (u < params.rho) next.statuses[i] = Status::kSusceptible;
        break;
    }
  }
  return next;
}

inline PopulationState step_statuses(const PopulationState& pop,
                                     const ContactGraph& graph,
                                     std::span<const NodeId> quarantined,
                                     const SeirsParams& params, Rng& rng) {
  return step_statuses(pop, graph, make_mask(graph.node_count(), quarantined),
                       params, rng);
}

// Whole-population status counts.
inline std::array<std::size_t, kSeirsStatusCount> status_counts(
    const PopulationState& pop) {
  std::array<std::size_t, kSeirsStatusCount> counts{};
  for (Status s : pop.statuses) ++counts[index_of(s)];
  return counts;
}

}  // namespace popdp::popproc
