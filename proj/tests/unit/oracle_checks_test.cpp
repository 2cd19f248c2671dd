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

#include <gtest/gtest.h>

#include <cmath>

#include "popdp/oracle/attack.hpp"
#include "popdp/oracle/fixtures.hpp"
#include "popdp/oracle/lemma.hpp"
#include "popdp/oracle/report.hpp"
#include "popdp/oracle/tail.hpp"
#include "popdp/oracle/trend.hpp"

namespace popdp::oracle {
namespace {

TEST(SimulationLemma, IdentityMechanismGivesZero) {
  Rng rng(1);
  const auto mdp = random_mdp(3, 2, 2, 0.9, rng);
  const Policy pi = uniform_policy(mdp.state_count(), 2);
  const auto model = induced_transition(mdp, pi, MechanismMatrix::identity(mdp.states));
  const auto r = check_simulation_lemma(mdp, model, greedy_policy(value_iteration(mdp)));
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.holds);
}

TEST(SimulationLemma, HoldsOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const auto mdp = random_mdp(3, 2, 2, 0.8, rng);
    const auto pm = estimate_mechanism_matrix(3, 2, 0.7, 10000, rng);
    const Policy pi = uniform_policy(mdp.state_count(), 2);
    const auto model = induced_transition(mdp, pi, pm);
    for (const Policy& target : {pi, greedy_policy(value_iteration(mdp))}) {
      const auto r = check_simulation_lemma(mdp, model, target);
      EXPECT_TRUE(r.holds) << seed << ": " << r.lhs << " > " << r.rhs;
      EXPECT_GT(r.rhs, 0.0);
    }
  }
}

TEST(SimulationLemma, RhsWithinPropagatedError) {
  BirthDeathParams p;
  p.population = 4;
  const auto mdp = birth_death_mdp(p);
  const Policy pi = uniform_policy(mdp.state_count(), 2);
  const auto reps = estimate_replicates(mdp.states, 10000, 8, 21, projected_laplace_sampler(1.0, 4));
  const auto est = estimate_induced(mdp, pi, reps);
  const Vector v = state_values(evaluate_policy(mdp, pi), pi);
  std::vector<double> rhs;
  for (const auto& r : est.replicates) rhs.push_back(simulation_lemma_rhs(mdp, r.transition, v));
  const auto stat = replicate_stat(rhs);
  const double pooled = check_simulation_lemma(mdp, est.model, pi).rhs;
  EXPECT_LE(std::fabs(pooled - stat.mean), 3 * stat.standard_error + 1e-12);
}

TEST(Trend, GapShrinksWithEpsilon) {
  BirthDeathParams base;
  TrendOptions opt{10000, 4, 3};
  const auto rows = theorem2_trend({5}, {0.5, 2, 10, 1e9}, base, opt);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(not_above(rows[1], rows[0]));
  EXPECT_TRUE(not_above(rows[2], rows[1]));
  EXPECT_TRUE(not_above(rows[3], rows[2]));
  EXPECT_LE(rows[3].gap, 1e-9);
  EXPECT_GT(rows[0].gap, rows[2].gap);
}

TEST(TailBound, FormulaAndThreshold) {
  EXPECT_NEAR(tail_bound(100, 4, 1.0, 0.2), 4 * std::exp(-5.0), 1e-15);
  EXPECT_NEAR(tail_bound(100, 4, 1.0, 0.2), 0.0269, 1e-4);
  EXPECT_EQ(tail_bound(10, 3, 1.0, 0.0), 3.0);
  EXPECT_NEAR(tail_threshold(20, 0.1), 0.1 + 1 / (std::sqrt(2.0) * 20), 1e-15);
  EXPECT_EQ(interior_state(10, 4), StateHistogram({3, 3, 2, 2}, 10));
  EXPECT_THROW(interior_state(3, 4), InputError);
}

TEST(TailBound, ExampleCellPasses) {
  Rng rng(1);
  const auto cells = tail_bound_check(100, 4, 1.0, {0.0, 0.2}, 100000, rng);
  ASSERT_EQ(cells.size(), 2u);
  for (const auto& c : cells) EXPECT_TRUE(c.pass);
  EXPECT_EQ(cells[0].bound, 4.0);
}

TEST(TailBound, HugeBudgetNeverExceeds) {
  Rng rng(2);
  for (const auto& c : tail_bound_check(20, 2, 1e9, {0.05, 0.1}, 10000, rng)) EXPECT_EQ(c.frequency, 0.0);
}

TEST(CorrelationAttack, Examples) {
  const auto p = correlation_attack(0.5, 0.5, 100, 1.0, 80);
  EXPECT_GE(p.all_infected, 0.999);
  EXPECT_NEAR(std::log(p.all_infected / p.none_infected), 60.0, 1e-9);
  const auto mid = correlation_attack(0.5, 0.5, 100, 1.0, 50);
  EXPECT_NEAR(mid.all_infected, 0.5, 1e-12);
  const auto none = correlation_attack(0.3, 0.7, 100, 0.0, 80);
  EXPECT_NEAR(none.all_infected, 0.3, 1e-12);
  EXPECT_THROW(correlation_attack(0.5, 0.6, 10, 1, 0), InputError);
}

TEST(Report, JsonShape) {
  CheckReport c{"x", {{"n", 3}}, 1.5, INFINITY, 0.1, true, {}};
  const auto j = c.to_json();
  EXPECT_EQ(j["name"], "x");
  EXPECT_EQ(j["bound"], "inf");
  EXPECT_EQ(j["statistic"], 1.5);
  EXPECT_EQ(j["standard_error"], 0.1);
  EXPECT_TRUE(j["pass"].get<bool>());
  SuiteReport s{"demo", {c}};
  EXPECT_TRUE(s.pass());
  s.checks.push_back(CheckReport{"y"});
  EXPECT_FALSE(s.pass());
  EXPECT_FALSE(s.to_json()["pass"].get<bool>());
}

}  // namespace
}  // namespace popdp::oracle
