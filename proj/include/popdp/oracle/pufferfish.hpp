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

// Membership-secret audit on an enumerable two-status population process.
//
// The adversary knows the data-generating distribution (graph prior,
// initial infections, SIS dynamics, uniform fixed-size sampling). A secret
// sigma(i, S) says individual i is in the sampled dataset exactly at the
// time steps in S. For every pair (sigma(i, S), sigma(i, S \ R)) and every
// output sequence w we compare (P(w | a) - delta) / P(w | b) with e^eps.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "popdp/accounting.hpp"
#include "popdp/error.hpp"
#include "popdp/histogram.hpp"
#include "popdp/mech/projected_laplace.hpp"
#include "popdp/random.hpp"

namespace popdp::oracle {

inline constexpr std::size_t kMaxPufferfishIndividuals = 4;
inline constexpr std::size_t kMaxPufferfishHorizon = 3;
inline constexpr std::uint64_t kMinPufferfishTrials = 100000;

// Statuses: 0 susceptible, 1 infected.
struct PufferfishScenario {
  std::size_t individuals = 3;
  std::size_t sample_size = 2;
  std::size_t horizon = 2;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> graphs;
  std::vector<double> graph_probability;
  std::vector<double> initial_infected;  // per individual, independent
  double infection = 0.4;                // per infected neighbour per step
  double recovery = 0.3;

  void validate() const {
    if (individuals < 1 || individuals > kMaxPufferfishIndividuals || horizon < 1 ||
        horizon > kMaxPufferfishHorizon)
      throw CapacityError("pufferfish scenario too large to enumerate");
    if (sample_size < 1 || sample_size > individuals) throw InputError("pufferfish: bad sample size");
    if (graphs.empty() || graphs.size() != graph_probability.size())
      throw InputError("pufferfish: graph list and probabilities differ");
    double total = 0.0;
    for (double p : graph_probability) {
      if (!(p >= 0.0)) throw InputError("pufferfish: negative graph probability");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InputError("pufferfish: graph probabilities must sum to 1");
    for (const auto& g : graphs)
      for (auto [u, v] : g)
        if (u >= individuals || v >= individuals || u == v) throw InputError("pufferfish: bad edge");
    if (initial_infected.size() != individuals) throw InputError("pufferfish: initial_infected size");
    for (double p : initial_infected)
      if (!(p >= 0.0 && p <= 1.0)) throw InputError("pufferfish: initial probability outside [0, 1]");
    if (!(infection >= 0.0 && infection <= 1.0 && recovery >= 0.0 && recovery <= 1.0))
      throw InputError("pufferfish: rates outside [0, 1]");
  }
};

// Three individuals, two sampled per step, two steps; the graph is a
// triangle or a path with equal probability.
inline PufferfishScenario reference_scenario() {
  PufferfishScenario s;
  s.graphs = {{{0, 1}, {1, 2}, {0, 2}}, {{0, 1}, {1, 2}}};
  s.graph_probability = {0.5, 0.5};
  s.initial_infected = {0.3, 0.3, 0.3};
  return s;
}

// Individual 0 is always infected and nobody else ever is, so the sampled
// histogram reveals whether 0 was sampled.
inline PufferfishScenario presence_revealing_scenario() {
  PufferfishScenario s;
  s.graphs = {{{0, 1}, {1, 2}}};
  s.graph_probability = {1.0};
  s.initial_infected = {1.0, 0.0, 0.0};
  s.infection = 0.0;
  s.recovery = 0.0;
  return s;
}

// Distribution of the sequence of sampled infected counts, packed base
// (sample_size + 1) with step 0 in the lowest digit.
struct DatasetLaw {
  std::vector<std::uint32_t> keys;
  std::vector<double> probability;
  double secret_probability = 0.0;
};

struct PufferfishEnumeration {
  // Indexed by individual * 2^horizon + membership mask.
  std::vector<DatasetLaw> laws;
  double total_probability = 0.0;
};

inline PufferfishEnumeration enumerate_scenario(const PufferfishScenario& sc) {
  sc.validate();
  const std::size_t n = sc.individuals;
  const std::size_t t_max = sc.horizon;
  const std::uint32_t base = static_cast<std::uint32_t>(sc.sample_size + 1);

  // Status trajectories as bitmasks of infected individuals per step.
  std::vector<std::pair<double, std::vector<std::uint32_t>>> trajectories;
  for (std::size_t g = 0; g < sc.graphs.size(); ++g) {
    if (sc.graph_probability[g] == 0.0) continue;
    std::vector<std::uint32_t> nbr(n, 0);
    for (auto [u, v] : sc.graphs[g]) {
      nbr[u] |= 1u << v;
      nbr[v] |= 1u << u;
    }
    auto step_prob = [&](std::uint32_t from, std::uint32_t to) {
      double p = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const bool inf = from >> i & 1u, next = to >> i & 1u;
        double p_inf;
        if (inf) {
          p_inf = 1.0 - sc.recovery;
        } else {
          const int k = std::popcount(from & nbr[i]);
          p_inf = 1.0 - std::pow(1.0 - sc.infection, k);
        }
        p *= next ? p_inf : 1.0 - p_inf;
      }
      return p;
    };
    std::vector<std::uint32_t> path(t_max);
    auto extend = [&](auto&& self, std::size_t t, double p) -> void {
      if (p == 0.0) return;
      if (t == t_max) {
        trajectories.emplace_back(p, path);
        return;
      }
      for (std::uint32_t x = 0; x < (1u << n); ++x) {
        double q;
        if (t == 0) {
          q = 1.0;
          for (std::size_t i = 0; i < n; ++i)
            q *= (x >> i & 1u) ? sc.initial_infected[i] : 1.0 - sc.initial_infected[i];
        } else {
          q = step_prob(path[t - 1], x);
        }
        path[t] = x;
        self(self, t + 1, p * q);
      }
    };
    extend(extend, 0, sc.graph_probability[g]);
  }

  std::vector<std::uint32_t> subsets;
  for (std::uint32_t x = 0; x < (1u << n); ++x)
    if (static_cast<std::size_t>(std::popcount(x)) == sc.sample_size) subsets.push_back(x);
  const double subset_p = 1.0 / static_cast<double>(subsets.size());

  const std::size_t masks = std::size_t{1} << t_max;
  std::vector<std::map<std::uint32_t, double>> acc(n * masks);
  PufferfishEnumeration out;
  std::vector<std::size_t> choice(t_max, 0);
  for (const auto& [p_traj, states] : trajectories) {
    // Odometer over the sampled subset at each step.
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      double w = p_traj;
      std::uint32_t key = 0, scale = 1;
      for (std::size_t t = 0; t < t_max; ++t) {
        const std::uint32_t d = subsets[choice[t]];
        w *= subset_p;
        key += scale * static_cast<std::uint32_t>(std::popcount(d & states[t]));
        scale *= base;
      }
      out.total_probability += w;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t mask = 0;
        for (std::size_t t = 0; t < t_max; ++t)
          if (subsets[choice[t]] >> i & 1u) mask |= std::size_t{1} << t;
        acc[i * masks + mask][key] += w;
      }
      std::size_t t = 0;
      while (t < t_max && ++choice[t] == subsets.size()) choice[t++] = 0;
      if (t == t_max) break;
    }
  }

  out.laws.resize(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) {
    DatasetLaw& law = out.laws[k];
    for (const auto& [key, w] : acc[k]) law.secret_probability += w;
    for (const auto& [key, w] : acc[k]) {
      law.keys.push_back(key);
      law.probability.push_back(w / law.secret_probability);
    }
  }
  return out;
}

// Monte Carlo distribution of the mechanism output sequence under one law.
template <class Mechanism>
std::vector<double> output_frequencies(const PufferfishScenario& sc, const DatasetLaw& law,
                                       Mechanism& mechanism, std::uint64_t trials, Rng& rng) {
  const auto big_n = static_cast<std::int64_t>(sc.sample_size);
  const std::uint32_t base = static_cast<std::uint32_t>(sc.sample_size + 1);
  std::uint32_t outputs = 1;
  for (std::size_t t = 0; t < sc.horizon; ++t) outputs *= base;
  std::vector<double> cumulative(law.probability.size());
  double run = 0.0;
  for (std::size_t k = 0; k < cumulative.size(); ++k) cumulative[k] = run += law.probability[k];

  std::vector<std::uint64_t> counts(outputs, 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const double u = uniform01(rng) * run;
    std::size_t pick = 0;
    while (pick + 1 < cumulative.size() && u >= cumulative[pick]) ++pick;
    std::uint32_t key = law.keys[pick], omega = 0, scale = 1;
    for (std::size_t t = 0; t < sc.horizon; ++t) {
      const auto infected = static_cast<std::int64_t>(key % base);
      key /= base;
      const StateHistogram out = mechanism(StateHistogram({big_n - infected, infected}, big_n), rng);
      if (out.size() != 2 || out.population() != big_n)
        throw InputError("pufferfish: mechanism output is not on the sample grid");
      omega += scale * static_cast<std::uint32_t>(out.count(1));
      scale *= base;
    }
    ++counts[omega];
  }
  std::vector<double> freq(outputs);
  for (std::uint32_t w = 0; w < outputs; ++w)
    freq[w] = static_cast<double>(counts[w]) / static_cast<double>(trials);
  return freq;
}

struct PufferfishReport {
  double epsilon = 0.0;
  double delta = 0.0;
  double bound = 0.0;  // e^epsilon
  double max_ratio = 0.0;
  double max_ratio_standard_error = 0.0;
  std::string worst;
  std::size_t pairs = 0;
  std::size_t comparisons = 0;
  std::size_t failures = 0;
  double total_probability = 0.0;
  std::uint64_t trials = 0;
  bool pass = false;
};

template <class Mechanism>
PufferfishReport pufferfish_audit(const PufferfishScenario& sc, Mechanism&& mechanism, double epsilon,
                                  double delta, std::uint64_t trials, Rng& rng) {
  if (trials < kMinPufferfishTrials) throw InputError("pufferfish_audit: need at least 1e5 trials");
  const PufferfishEnumeration en = enumerate_scenario(sc);
  if (std::abs(en.total_probability - 1.0) > 1e-9)
    throw InputError("pufferfish: enumerated probability does not sum to 1");

  PufferfishReport rep;
  rep.epsilon = epsilon;
  rep.delta = delta;
  rep.bound = std::exp(epsilon);
  rep.total_probability = en.total_probability;
  rep.trials = trials;

  std::vector<std::vector<double>> freq(en.laws.size());
  for (std::size_t k = 0; k < en.laws.size(); ++k)
    if (en.laws[k].secret_probability > 0.0)
      freq[k] = output_frequencies(sc, en.laws[k], mechanism, trials, rng);

  const double nt = static_cast<double>(trials);
  const std::size_t masks = std::size_t{1} << sc.horizon;
  auto compare = [&](std::size_t a, std::size_t b, const std::string& label) {
    for (std::size_t w = 0; w < freq[a].size(); ++w) {
      ++rep.comparisons;
      const double pa = freq[a][w], pb = freq[b][w];
      const double num = pa - delta;
      if (num <= 0.0) continue;
      double ratio, se = 0.0;
      bool ok;
      if (pb == 0.0) {
        ratio = std::numeric_limits<double>::infinity();
        ok = false;
      } else {
        ratio = num / pb;
        const double va = pa * (1.0 - pa) / nt, vb = pb * (1.0 - pb) / nt;
        se = std::sqrt(va / (pb * pb) + num * num * vb / (pb * pb * pb * pb));
        ok = ratio <= rep.bound + 3.0 * se;
      }
      if (!ok) ++rep.failures;
      if (ratio > rep.max_ratio || rep.worst.empty()) {
        rep.max_ratio = ratio;
        rep.max_ratio_standard_error = se;
        rep.worst = label + " output " + std::to_string(w);
      }
    }
  };
  for (std::size_t i = 0; i < sc.individuals; ++i)
    for (std::size_t s = 0; s < masks; ++s)
      for (std::size_t r = s; r != 0; r = (r - 1) & s) {
        const std::size_t a = i * masks + s, b = i * masks + (s & ~r);
        if (freq[a].empty() || freq[b].empty()) continue;
        ++rep.pairs;
        const std::string label = "individual " + std::to_string(i) + " S=" + std::to_string(s) +
                                  " R=" + std::to_string(r);
        compare(a, b, label);
        compare(b, a, label + " reversed");
      }
  rep.pass = rep.failures == 0;
  return rep;
}

// Projected Laplace at epsilon_step on every release; the privacy claim is
// the composed budget over the scenario horizon.
inline PufferfishReport pufferfish_audit(const PufferfishScenario& sc, double epsilon_step, double delta,
                                         std::uint64_t trials, Rng& rng) {
  const mech::MechanismParams params(epsilon_step, static_cast<std::int64_t>(sc.sample_size));
  auto mech = [&](const StateHistogram& s, Rng& r) { return mech::projected_laplace(s, params, r); };
  return pufferfish_audit(sc, mech,
                          accounting::advanced_composition(epsilon_step, sc.horizon, delta), delta,
                          trials, rng);
}

}  // namespace popdp::oracle
