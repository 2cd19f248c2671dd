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

// Verification suites built on the oracle module. Each suite returns a
// report whose checks carry a statistic, the bound it is held to and a
// standard error where the statistic is estimated.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "popdp/accounting.hpp"
#include "popdp/cli/csv.hpp"
#include "popdp/oracle/attack.hpp"
#include "popdp/oracle/fixtures.hpp"
#include "popdp/oracle/induced.hpp"
#include "popdp/oracle/lemma.hpp"
#include "popdp/oracle/pufferfish.hpp"
#include "popdp/oracle/report.hpp"
#include "popdp/oracle/tail.hpp"
#include "popdp/oracle/trajectory.hpp"
#include "popdp/oracle/trend.hpp"

namespace popdp::cli {

using oracle::CheckReport;
using oracle::SuiteReport;

struct VerifyOptions {
  std::uint64_t seed = 1;
};

// Extra files a suite produces, by file name.
using SuiteFiles = std::map<std::string, std::string>;

inline std::vector<double> accounting_targets() { return {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}; }

inline std::string accounting_curve_csv(const std::vector<double>& deltas, double horizon,
                                        const std::vector<double>& targets) {
  std::ostringstream out;
  out << "delta,horizon,epsilon_target,epsilon_step,epsilon_achieved\n";
  for (double d : deltas)
    for (const auto& p : accounting::achieved_curve(d, horizon, targets))
      out << format_real(d) << ',' << format_real(horizon) << ',' << format_real(p.target) << ','
          << format_real(accounting::per_step_budget(p.target, d, horizon)) << ',' << format_real(p.achieved)
          << '\n';
  return out.str();
}

inline SuiteReport suite_accounting(SuiteFiles* files = nullptr) {
  SuiteReport rep{"accounting", {}};
  const double horizon = 5e5;
  {
    CheckReport c;
    c.name = "per_step_budget";
    c.inputs = {{"epsilon", 10.0}, {"delta", 1e-5}, {"horizon", horizon}};
    c.statistic = accounting::per_step_budget(10.0, 1e-5, horizon);
    c.bound = 1.4736e-3;
    c.details = {{"tolerance", 1e-7}};
    c.pass = std::abs(c.statistic - c.bound) <= 1e-7;
    rep.checks.push_back(c);
  }
  {
    CheckReport c;
    c.name = "composed_budget";
    c.inputs = {{"epsilon_step", 1.4736e-3}, {"delta", 1e-5}, {"horizon", horizon}};
    c.statistic = accounting::advanced_composition(1.4736e-3, horizon, 1e-5);
    c.bound = 6.0866;
    c.details = {{"tolerance", 1e-3}};
    c.pass = std::abs(c.statistic - c.bound) <= 1e-3;
    rep.checks.push_back(c);
  }
  const std::vector<double> deltas{1e-2, 1e-5};
  for (double d : deltas) {
    for (const auto& p : accounting::achieved_curve(d, horizon, accounting_targets())) {
      CheckReport c;
      c.name = "achieved_within_target";
      c.inputs = {{"epsilon_target", p.target}, {"delta", d}, {"horizon", horizon}};
      c.statistic = p.achieved;
      c.bound = p.target;
      c.pass = p.achieved <= p.target;
      rep.checks.push_back(c);
    }
  }
  if (files) (*files)["accounting_curve.csv"] = accounting_curve_csv(deltas, horizon, accounting_targets());
  return rep;
}

inline SuiteReport suite_tail(const VerifyOptions& opt, std::uint64_t trials = 100000) {
  SuiteReport rep{"tail", {}};
  std::uint64_t cell = 0;
  for (std::int64_t n : {20, 100})
    for (std::size_t k : {2, 4})
      for (double eps : {0.5, 1.0, 5.0}) {
        Rng rng = make_rng(opt.seed, cell++);
        for (const auto& t : oracle::tail_bound_check(n, k, eps, {0.05, 0.1, 0.2}, trials, rng)) {
          CheckReport c;
          c.name = "tail_bound";
          c.inputs = {{"N", n}, {"K", k}, {"epsilon_step", eps}, {"alpha", t.alpha}, {"trials", trials}};
          c.statistic = t.frequency;
          c.bound = t.bound;
          c.standard_error = t.standard_error;
          c.details = {{"threshold", t.threshold}};
          c.pass = t.pass;
          rep.checks.push_back(c);
        }
      }
  return rep;
}

struct InducedSuiteParams {
  std::int64_t population = 5;
  double epsilon_step = 1.0;
  std::uint64_t mechanism_trials = 100000;  // per row per replicate
  std::size_t replicates = 32;
  std::uint64_t trajectory_steps = 10000000;
  std::size_t batches = 200;
};

inline SuiteReport suite_induced(const VerifyOptions& opt, const InducedSuiteParams& p = {}) {
  SuiteReport rep{"induced", {}};
  oracle::BirthDeathParams bd;
  bd.population = p.population;
  const oracle::FiniteMdp mdp = oracle::birth_death_mdp(bd);
  const oracle::Policy uniform = oracle::uniform_policy(mdp.state_count(), mdp.action_count);
  {
    const auto model = oracle::induced_transition(mdp, uniform, oracle::MechanismMatrix::identity(mdp.states));
    CheckReport c;
    c.name = "identity_mechanism_reduction";
    c.inputs = {{"N", p.population}, {"K", 2}};
    c.statistic = (model.transition - mdp.transition).cwiseAbs().maxCoeff();
    c.bound = 0.0;
    c.pass = c.statistic == 0.0;
    rep.checks.push_back(c);
  }
  {
    auto sampler = oracle::projected_laplace_sampler(p.epsilon_step, p.population);
    const auto reps = oracle::estimate_replicates(mdp.states, p.mechanism_trials, p.replicates,
                                                  derive_seed(opt.seed, 0), sampler);
    const auto est = oracle::estimate_induced(mdp, uniform, reps);
    Rng rng = make_rng(opt.seed, 1);
    const auto traj = oracle::trajectory_transition_estimate(mdp, uniform, sampler, p.trajectory_steps,
                                                             p.batches, rng);
    const auto cmp = oracle::compare_within(est.model.transition, est.standard_error, traj.frequency,
                                            traj.standard_error);
    CheckReport c;
    c.name = "induced_matches_trajectory";
    c.inputs = {{"N", p.population},
                {"K", 2},
                {"epsilon_step", p.epsilon_step},
                {"mechanism_trials", p.mechanism_trials},
                {"replicates", p.replicates},
                {"trajectory_steps", traj.steps}};
    c.statistic = cmp.max_z;
    c.bound = 3.0;
    c.standard_error = 0.0;
    c.details = {{"cells", cmp.cells},
                 {"cells_outside", cmp.failures},
                 {"max_abs_difference", cmp.max_abs_difference}};
    c.pass = cmp.pass;
    rep.checks.push_back(c);

    CheckReport s;
    s.name = "induced_rows_stochastic";
    s.statistic = (est.model.transition.rowwise().sum().array() - 1.0).abs().maxCoeff();
    s.bound = 1e-9;
    s.pass = s.statistic <= s.bound;
    rep.checks.push_back(s);
  }
  return rep;
}

// Random tiny instance number i for the simulation-lemma suite.
inline std::pair<oracle::FiniteMdp, oracle::InducedModel> lemma_instance(std::uint64_t seed, std::uint64_t i,
                                                                         oracle::Policy* target) {
  Rng rng = make_rng(seed, i);
  const std::int64_t n = 2 + static_cast<std::int64_t>(uniform_index(rng, 4));
  const std::size_t k = 2 + static_cast<std::size_t>(uniform_index(rng, 2));
  const std::size_t actions = 2 + static_cast<std::size_t>(uniform_index(rng, 2));
  const double discount = 0.5 + 0.45 * uniform01(rng);
  const double eps = 0.2 + 4.8 * uniform01(rng);
  oracle::FiniteMdp mdp = oracle::random_mdp(n, k, actions, discount, rng);
  const auto s = static_cast<Eigen::Index>(mdp.state_count());
  const auto a = static_cast<Eigen::Index>(actions);
  const oracle::Policy behavior = oracle::random_stochastic(s, a, rng);
  *target = oracle::random_stochastic(s, a, rng);
  const auto pm = oracle::estimate_matrix(mdp.states, oracle::kMinMechanismTrials, rng(),
                                          oracle::projected_laplace_sampler(eps, n));
  auto model = oracle::induced_transition(mdp, behavior, pm);
  return {std::move(mdp), std::move(model)};
}

inline SuiteReport suite_lemma(const VerifyOptions& opt, std::size_t instances = 50) {
  SuiteReport rep{"lemma", {}};
  for (std::size_t i = 0; i < instances; ++i) {
    oracle::Policy target;
    const auto [mdp, model] = lemma_instance(opt.seed, i, &target);
    const auto r = oracle::check_simulation_lemma(mdp, model, target);
    CheckReport c;
    c.name = "simulation_lemma";
    c.inputs = {{"instance", i},
                {"states", mdp.state_count()},
                {"actions", mdp.action_count},
                {"discount", mdp.discount}};
    c.statistic = r.lhs;
    c.bound = r.rhs;
    c.pass = r.holds;
    rep.checks.push_back(c);
  }
  return rep;
}

struct TrendSuiteParams {
  std::vector<std::int64_t> populations{5, 10, 20};
  std::vector<double> epsilons{0.5, 2.0, 10.0, 1e9};
  oracle::TrendOptions options{};
};

inline SuiteReport suite_trend(const VerifyOptions& opt, TrendSuiteParams p = {}) {
  SuiteReport rep{"trend", {}};
  p.options.seed = opt.seed;
  const auto cells = oracle::theorem2_trend(p.populations, p.epsilons, oracle::BirthDeathParams{}, p.options);
  const std::size_t ne = p.epsilons.size();
  auto at = [&](std::size_t ni, std::size_t ei) -> const oracle::GapEstimate& { return cells[ni * ne + ei]; };
  auto compare = [&](const oracle::GapEstimate& lo, const oracle::GapEstimate& hi, const std::string& name) {
    // lo is the cell with more privacy budget or more individuals; its gap
    // must not exceed hi's beyond three combined standard errors.
    CheckReport c;
    c.name = name;
    c.inputs = {{"N", lo.population}, {"epsilon_step", lo.epsilon_step},
                {"reference_N", hi.population}, {"reference_epsilon_step", hi.epsilon_step}};
    c.statistic = lo.gap;
    c.bound = hi.gap;
    c.standard_error = std::hypot(lo.standard_error, hi.standard_error);
    c.pass = oracle::not_above(lo, hi);
    rep.checks.push_back(c);
  };
  for (std::size_t ni = 0; ni < p.populations.size(); ++ni)
    for (std::size_t ei = 1; ei < ne; ++ei) compare(at(ni, ei), at(ni, ei - 1), "gap_non_increasing_in_epsilon");
  for (std::size_t ei = 0; ei < ne; ++ei)
    for (std::size_t ni = 1; ni < p.populations.size(); ++ni)
      compare(at(ni, ei), at(ni - 1, ei), "gap_non_increasing_in_N");
  for (std::size_t ni = 0; ni < p.populations.size(); ++ni) {
    const auto& g = at(ni, ne - 1);
    CheckReport c;
    c.name = "gap_at_noise_floor";
    c.inputs = {{"N", g.population}, {"epsilon_step", g.epsilon_step}};
    c.statistic = g.gap;
    c.standard_error = g.standard_error;
    c.bound = 3.0 * g.standard_error + 1e-9;
    c.pass = g.gap <= c.bound;
    rep.checks.push_back(c);
  }
  return rep;
}

struct PufferfishSuiteParams {
  double epsilon = 2.0;
  double delta = 0.01;
  std::uint64_t trials = 200000;
};

inline CheckReport pufferfish_check(const std::string& name, const oracle::PufferfishReport& r) {
  CheckReport c;
  c.name = name;
  c.inputs = {{"epsilon_composed", r.epsilon}, {"delta", r.delta}, {"trials", r.trials}};
  c.statistic = r.max_ratio;
  c.bound = r.bound;
  c.standard_error = r.max_ratio_standard_error;
  c.details = {{"pairs", r.pairs},
               {"comparisons", r.comparisons},
               {"comparisons_outside", r.failures},
               {"worst", r.worst},
               {"total_probability", r.total_probability}};
  c.pass = r.pass;
  return c;
}

inline SuiteReport suite_pufferfish(const VerifyOptions& opt, const PufferfishSuiteParams& p = {}) {
  SuiteReport rep{"pufferfish", {}};
  const auto sc = oracle::reference_scenario();
  const double eps_step = accounting::per_step_budget(p.epsilon, p.delta, static_cast<double>(sc.horizon));
  {
    Rng rng = make_rng(opt.seed, 0);
    auto r = oracle::pufferfish_audit(sc, eps_step, p.delta, p.trials, rng);
    CheckReport c = pufferfish_check("projected_laplace_membership_odds", r);
    c.inputs["epsilon_target"] = p.epsilon;
    c.inputs["epsilon_step"] = eps_step;
    rep.checks.push_back(c);
  }
  {
    // A release that ignores its input leaks nothing.
    Rng rng = make_rng(opt.seed, 1);
    const auto big_n = static_cast<std::int64_t>(sc.sample_size);
    auto constant = [big_n](const StateHistogram&, Rng&) { return StateHistogram({big_n, 0}, big_n); };
    const double eps = accounting::advanced_composition(eps_step, static_cast<double>(sc.horizon), p.delta);
    rep.checks.push_back(pufferfish_check("constant_mechanism_membership_odds",
                                          oracle::pufferfish_audit(sc, constant, eps, p.delta, p.trials, rng)));
  }
  {
    // Releasing the raw histogram must be caught.
    Rng rng = make_rng(opt.seed, 2);
    const auto fixture = oracle::presence_revealing_scenario();
    auto identity = [](const StateHistogram& s, Rng&) { return s; };
    const double eps = accounting::advanced_composition(eps_step, static_cast<double>(fixture.horizon), p.delta);
    auto r = oracle::pufferfish_audit(fixture, identity, eps, p.delta, p.trials, rng);
    CheckReport c = pufferfish_check("identity_mechanism_detected", r);
    c.pass = !r.pass;
    c.details["audit_pass"] = r.pass;
    rep.checks.push_back(c);
  }
  return rep;
}

inline SuiteReport suite_attack() {
  SuiteReport rep{"attack", {}};
  {
    const auto post = oracle::correlation_attack(0.5, 0.5, 100, 1.0, 80.0);
    CheckReport c;
    c.name = "status_recovered";
    c.inputs = {{"prior_all_infected", 0.5}, {"N", 100}, {"epsilon", 1.0}, {"observed", 80.0}};
    c.statistic = post.all_infected;
    c.bound = 0.999;
    c.pass = post.all_infected >= 0.999;
    rep.checks.push_back(c);
  }
  {
    const auto post = oracle::correlation_attack(0.5, 0.5, 100, 1.0, 50.0);
    CheckReport c;
    c.name = "midpoint_keeps_prior";
    c.inputs = {{"prior_all_infected", 0.5}, {"N", 100}, {"epsilon", 1.0}, {"observed", 50.0}};
    c.statistic = post.all_infected;
    c.bound = 0.5;
    c.pass = std::abs(post.all_infected - 0.5) <= 1e-12;
    rep.checks.push_back(c);
  }
  {
    const auto post = oracle::correlation_attack(0.3, 0.7, 100, 1e-12, 80.0);
    CheckReport c;
    c.name = "no_budget_keeps_prior";
    c.inputs = {{"prior_all_infected", 0.3}, {"N", 100}, {"epsilon", 1e-12}, {"observed", 80.0}};
    c.statistic = post.all_infected;
    c.bound = 0.3;
    c.pass = std::abs(post.all_infected - 0.3) <= 1e-6;
    rep.checks.push_back(c);
  }
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"accounting", "tail", "induced", "trend", "pufferfish", "lemma", "attack"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const VerifyOptions& opt, SuiteFiles* files = nullptr) {
  if (name == "accounting") return suite_accounting(files);
  if (name == "tail") return suite_tail(opt);
  if (name == "induced") return suite_induced(opt);
  if (name == "trend") return suite_trend(opt);
  if (name == "pufferfish") return suite_pufferfish(opt);
  if (name == "lemma") return suite_lemma(opt);
  if (name == "attack") return suite_attack();
  throw ConfigError("unknown verification suite: " + name);
}

}  // namespace popdp::cli
