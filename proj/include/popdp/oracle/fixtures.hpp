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

// Small reference MDPs over two-bin histograms.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/oracle/enumerate.hpp"
#include "popdp/oracle/finite_mdp.hpp"
#include "popdp/random.hpp"

namespace popdp::oracle {

// Bin 1 counts infected individuals c out of N, z = c / N. Each step every
// infected individual recovers with probability `down` and every
// susceptible one is infected with probability up[a] * (1 + 2 z) / 4, all
// independently. With probability `shock` the step is replaced by a jump to
// a uniformly drawn count (importation). Reward is
// -(alpha z + (1 - alpha) cost[a]).
struct BirthDeathParams {
  std::int64_t population = 5;
  std::vector<double> up{0.5, 0.25};
  double down = 0.3;
  double shock = 0.2;
  std::vector<double> cost{0.0, 0.5};
  double alpha = 0.8;
  double discount = 0.9;

  void validate() const {
    if (population < 1) throw InputError("birth-death: population must be >= 1");
    if (up.empty() || up.size() != cost.size()) throw InputError("birth-death: up and cost sizes differ");
    for (double u : up)
      if (!(u > 0.0 && u <= 1.0)) throw InputError("birth-death: up rates must be in (0, 1]");
    if (!(down > 0.0 && down < 1.0)) throw InputError("birth-death: down must be in (0, 1)");
    if (!(shock >= 0.0 && shock <= 1.0)) throw InputError("birth-death: shock must be in [0, 1]");
    if (!(discount >= 0.0 && discount < 1.0)) throw InputError("birth-death: discount must be in [0, 1)");
  }

  double infection_probability(std::size_t action, double z) const {
    return up[action] * (1.0 + 2.0 * z) / 4.0;
  }
};

inline std::vector<double> binomial_pmf(std::int64_t n, double p) {
  std::vector<double> pmf(static_cast<std::size_t>(n + 1), 0.0);
  double coef = 1.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (k > 0) coef = coef * static_cast<double>(n - k + 1) / static_cast<double>(k);
    pmf[static_cast<std::size_t>(k)] = coef * std::pow(p, static_cast<double>(k)) *
                                       std::pow(1.0 - p, static_cast<double>(n - k));
  }
  return pmf;
}

inline FiniteMdp birth_death_mdp(const BirthDeathParams& p) {
  p.validate();
  FiniteMdp mdp;
  mdp.states = enumerate_states(p.population, 2);
  mdp.action_count = p.up.size();
  mdp.discount = p.discount;
  const StateIndex index(mdp.states);
  const auto n = static_cast<Eigen::Index>(mdp.states.size());
  const auto m = static_cast<Eigen::Index>(mdp.action_count);
  mdp.transition = Matrix::Zero(n * m, n);
  mdp.reward = Matrix::Zero(n, m);
  const double big_n = static_cast<double>(p.population);
  std::vector<Eigen::Index> by_infected(static_cast<std::size_t>(p.population + 1));
  for (std::int64_t c = 0; c <= p.population; ++c)
    by_infected[static_cast<std::size_t>(c)] =
        static_cast<Eigen::Index>(index(StateHistogram({p.population - c, c}, p.population)));
  for (Eigen::Index s = 0; s < n; ++s) {
    const std::int64_t c = mdp.states[static_cast<std::size_t>(s)].count(1);
    const double z = static_cast<double>(c) / big_n;
    // Survivors among the infected, new infections among the susceptible.
    const auto stay = binomial_pmf(c, 1.0 - p.down);
    for (Eigen::Index a = 0; a < m; ++a) {
      const auto fresh = binomial_pmf(p.population - c, p.infection_probability(static_cast<std::size_t>(a), z));
      auto row = mdp.transition.row(s * m + a);
      for (std::size_t i = 0; i < stay.size(); ++i)
        for (std::size_t j = 0; j < fresh.size(); ++j) row(by_infected[i + j]) += stay[i] * fresh[j];
      row /= row.sum();
      if (p.shock > 0.0) {
        row *= 1.0 - p.shock;
        for (Eigen::Index j = 0; j < n; ++j) row(j) += p.shock / static_cast<double>(n);
      }
      mdp.reward(s, a) = -(p.alpha * z + (1.0 - p.alpha) * p.cost[static_cast<std::size_t>(a)]);
    }
  }
  mdp.validate();
  return mdp;
}

// Row-stochastic matrix with strictly positive entries.
inline Matrix random_stochastic(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix p(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) p(r, c) = -std::log(uniform01_open_closed(rng)) + 1e-3;
    p.row(r) /= p.row(r).sum();
  }
  return p;
}

// Dense random MDP over the (N, K) grid with full-support transitions.
inline FiniteMdp random_mdp(std::int64_t population, std::size_t bins, std::size_t actions,
                            double discount, Rng& rng) {
  FiniteMdp mdp;
  mdp.states = enumerate_states(population, bins);
  mdp.action_count = actions;
  mdp.discount = discount;
  const auto n = static_cast<Eigen::Index>(mdp.states.size());
  const auto m = static_cast<Eigen::Index>(actions);
  mdp.transition = random_stochastic(n * m, n, rng);
  mdp.reward = Matrix(n, m);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index a = 0; a < m; ++a) mdp.reward(s, a) = -uniform01(rng);
  mdp.validate();
  return mdp;
}

}  // namespace popdp::oracle
