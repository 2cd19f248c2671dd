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

// Quarantine actions, the epidemic-control reward, and the environment
// bundle that the DP-RL loop drives.

#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/histogram.hpp"
#include "popdp/popproc/graph.hpp"
#include "popdp/popproc/sampling.hpp"
#include "popdp/popproc/seirs.hpp"
#include "popdp/random.hpp"

namespace popdp::popproc {

// Quarantine the top `quarantine_fraction` of nodes by base-graph degree.
struct Action {
  double quarantine_fraction = 0.0;

  void validate() const {
    if (!(quarantine_fraction >= 0.0 && quarantine_fraction <= 1.0))
      throw InputError("quarantine fraction must lie in [0, 1]");
  }
};

inline std::vector<Action> default_actions() {
  return {{0.0}, {0.25}, {0.5}, {0.75}, {1.0}};
}

// Number of nodes quarantined by `fraction`: ceil(fraction * N*), with a
// small tolerance so that e.g. 0.5 * 4 is not pushed to 3 by rounding.
inline std::size_t quarantine_count(std::size_t node_count, double fraction) {
  const double raw = fraction * static_cast<double>(node_count);
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(k, node_count);
}

inline std::vector<NodeId> quarantine_set(std::span<const NodeId> ranking,
                                          const Action& action) {
  action.validate();
  const std::size_t k = quarantine_count(ranking.size(), action.quarantine_fraction);
  return {ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(k)};
}

inline std::vector<NodeId> quarantine_set(const ContactGraph& graph,
                                          const Action& action) {
  const auto ranking = graph.degree_ranking();
  return quarantine_set(ranking, action);
}

// Proportion of Exposed plus Infected in an SEIRS histogram.
inline double infection_burden(const StateHistogram& s) {
  if (s.size() != kSeirsStatusCount)
    throw InputError("infection burden needs a 4-bin SEIRS histogram");
  return static_cast<double>(s.count(index_of(Status::kExposed)) +
                             s.count(index_of(Status::kInfected))) /
         static_cast<double>(s.population());
}

// r(s, a) = -(alpha * I(s) + (1 - alpha) * C(a)), in [-1, 0].
inline double reward(const StateHistogram& s, const Action& a, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
  a.validate();
  return -(alpha * infection_burden(s) + (1.0 - alpha) * a.quarantine_fraction);
}

struct EpidemicConfig {
  SeirsParams seirs;
  std::size_t sample_size = 1;
  double alpha = 0.8;
  double initial_infected = 0.01;
  std::vector<Action> actions = default_actions();
};

// SEIRS population process plus data curator. reset/step return the raw
// (un-privatized) histogram of a fresh sample.
class EpidemicEnv {
 public:
  EpidemicEnv(std::shared_ptr<const ContactGraph> graph, EpidemicConfig cfg)
      : graph_(std::move(graph)), cfg_(std::move(cfg)) {
    if (!graph_) throw InputError("environment needs a contact graph");
    cfg_.seirs.validate();
    SamplerConfig{cfg_.sample_size}.validate(graph_->node_count());
    if (cfg_.actions.empty()) throw InputError("action set is empty");
    if (!(cfg_.alpha >= 0.0 && cfg_.alpha <= 1.0))
      throw InputError("alpha must lie in [0, 1]");
    const auto ranking = graph_->degree_ranking();
    masks_.reserve(cfg_.actions.size());
    for (const auto& a : cfg_.actions)
      masks_.push_back(make_mask(graph_->node_count(), quarantine_set(ranking, a)));
  }

  StateHistogram reset(Rng& rng) {
    pop_ = initial_population(graph_->node_count(), cfg_.initial_infected, rng);
    return observe(rng);
  }

  StateHistogram step(std::size_t action, Rng& rng) {
    if (action >= masks_.size()) throw InputError("action index out of range");
    pop_ = step_statuses(pop_, *graph_, masks_[action], cfg_.seirs, rng);
    return observe(rng);
  }

  double reward(const StateHistogram& s, std::size_t action) const {
    return popproc::reward(s, cfg_.actions.at(action), cfg_.alpha);
  }

  std::size_t action_count() const noexcept { return cfg_.actions.size(); }
  double action_value(std::size_t action) const {
    return cfg_.actions.at(action).quarantine_fraction;
  }
  std::size_t status_count() const noexcept { return kSeirsStatusCount; }

  // Whole-population E+I proportion (evaluation only).
  double true_burden() const {
    const auto counts = status_counts(pop_);
    return static_cast<double>(counts[index_of(Status::kExposed)] +
                               counts[index_of(Status::kInfected)]) /
           static_cast<double>(pop_.size());
  }

  const PopulationState& population() const noexcept { return pop_; }
  const ContactGraph& graph() const noexcept { return *graph_; }
  const EpidemicConfig& config() const noexcept { return cfg_; }

 private:
  StateHistogram observe(Rng& rng) const {
    return histogram_query(sample_dataset(pop_, SamplerConfig{cfg_.sample_size}, rng));
  }

  std::shared_ptr<const ContactGraph> graph_;
  EpidemicConfig cfg_;
  std::vector<QuarantineMask> masks_;
  PopulationState pop_;
};

}  // namespace popdp::popproc
