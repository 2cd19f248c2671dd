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

// Replicated runs over a list of privacy budgets. Replica r of every budget
// uses seed derive_seed(base.seed, r), so budgets are compared on common
// random numbers.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include "popdp/cli/experiment.hpp"

namespace popdp::cli {

struct SweepRow {
  std::optional<double> epsilon;  // empty: privacy off
  std::optional<double> epsilon_achieved;
  std::size_t seeds = 0;
  double mean_reward = 0.0;  // across replicas of the trailing-window mean of reward_true
  double sd_reward = 0.0;    // sample standard deviation across replicas
  double mean_infected = 0.0;
  double sd_infected = 0.0;
  std::vector<double> replica_rewards;
  std::vector<double> replica_infected;
};

inline std::pair<double, double> mean_sd(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

inline std::vector<SweepRow> sweep(const ExperimentConfig& base, const std::vector<std::optional<double>>& epsilons,
                                   std::size_t seed_count, std::size_t workers = 0) {
  base.validate();
  if (epsilons.empty() || seed_count == 0) throw ConfigError("sweep needs at least one epsilon and one seed");
  for (const auto& e : epsilons)
    if (e && !(*e > 0.0 && std::isfinite(*e))) throw ConfigError("sweep epsilons must be positive");
  const auto graph = build_graph(base);

  struct Outcome {
    double reward = 0.0, infected = 0.0;
  };
  const std::size_t jobs = epsilons.size() * seed_count;
  std::vector<Outcome> results(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
      try {
        ExperimentConfig cfg = base;
        cfg.epsilon = epsilons[j / seed_count];
        cfg.seed = derive_seed(base.seed, j % seed_count);
        const ExperimentResult r = run_experiment(cfg, graph);
        results[j].reward = trailing_mean(r.rows, [](const RunRow& x) { return x.reward_true; });
        results[j].infected = trailing_mean(r.rows, [](const RunRow& x) { return x.infected_prop_true; });
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, jobs);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRow> rows;
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    SweepRow row;
    row.epsilon = epsilons[e];
    if (row.epsilon)
      row.epsilon_achieved = accounting::PrivacyBudget::make(*row.epsilon, base.delta, base.horizon + 1).achieved();
    row.seeds = seed_count;
    for (std::size_t r = 0; r < seed_count; ++r) {
      row.replica_rewards.push_back(results[e * seed_count + r].reward);
      row.replica_infected.push_back(results[e * seed_count + r].infected);
    }
    std::tie(row.mean_reward, row.sd_reward) = mean_sd(row.replica_rewards);
    std::tie(row.mean_infected, row.sd_infected) = mean_sd(row.replica_infected);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline constexpr std::array<std::string_view, 7> kSweepColumns{
    "epsilon", "epsilon_achieved", "seeds", "mean_reward", "sd_reward", "mean_infected", "sd_infected"};

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << join_header(kSweepColumns) << '\n';
  for (const auto& r : rows) {
    out << (r.epsilon ? format_real(*r.epsilon) : "off") << ','
        << (r.epsilon_achieved ? format_real(*r.epsilon_achieved) : "off") << ',' << r.seeds << ','
        << format_real(r.mean_reward) << ',' << format_real(r.sd_reward) << ',' << format_real(r.mean_infected)
        << ',' << format_real(r.sd_infected) << '\n';
  }
}

}  // namespace popdp::cli
