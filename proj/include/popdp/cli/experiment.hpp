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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "popdp/accounting.hpp"
#include "popdp/agent/dqn.hpp"
#include "popdp/agent/q_function.hpp"
#include "popdp/cli/config.hpp"
#include "popdp/cli/csv.hpp"
#include "popdp/cli/generators.hpp"
#include "popdp/cli/graph_io.hpp"
#include "popdp/dprl/run.hpp"
#include "popdp/popproc/env.hpp"

namespace popdp::cli {

struct GraphInfo {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

inline std::shared_ptr<const popproc::ContactGraph> build_graph(const ExperimentConfig& cfg,
                                                                 GraphInfo* info = nullptr) {
  std::shared_ptr<const popproc::ContactGraph> g;
  GraphInfo gi;
  if (!cfg.graph_path.empty()) {
    LoadedGraph loaded = load_graph(cfg.graph_path);
    gi.self_loops_dropped = loaded.self_loops_dropped;
    gi.duplicates_dropped = loaded.duplicates_dropped;
    g = std::move(loaded.graph);
  } else {
    Rng rng = make_rng(cfg.graph_seed, stream::kGraph);
    g = std::make_shared<const popproc::ContactGraph>(
        preferential_attachment(cfg.graph_nodes, cfg.graph_edges_per_node, rng));
  }
  gi.nodes = g->node_count();
  gi.edges = g->edge_count();
  if (info) *info = gi;
  return g;
}

struct ExperimentResult {
  std::vector<RunRow> rows;
  Json footer;
  dprl::AuditResult audit;
  std::uint64_t mechanism_calls = 0;
  std::optional<agent::Mlp<double>> network;  // trained weights of a dqn agent
};

// Mean of one column over the last 10% of steps (at least one step).
template <class Get>
double trailing_mean(const std::vector<RunRow>& rows, Get get) {
  if (rows.empty()) return 0.0;
  const std::size_t window = std::max<std::size_t>(1, (rows.size() + 9) / 10);
  double sum = 0.0;
  for (std::size_t i = rows.size() - window; i < rows.size(); ++i) sum += get(rows[i]);
  return sum / static_cast<double>(window);
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       std::shared_ptr<const popproc::ContactGraph> graph = nullptr) {
  cfg.validate();
  GraphInfo ginfo;
  if (!graph) {
    graph = build_graph(cfg, &ginfo);
  } else {
    ginfo.nodes = graph->node_count();
    ginfo.edges = graph->edge_count();
  }
  const std::uint64_t sample = cfg.resolved_sample_size(graph->node_count());
  if (sample > graph->node_count()) throw ConfigError("sample_size exceeds the population");

  popproc::EpidemicConfig ec;
  ec.seirs = cfg.seirs();
  ec.sample_size = sample;
  ec.alpha = cfg.alpha;
  ec.initial_infected = cfg.initial_infected;
  popproc::EpidemicEnv env(graph, ec);

  dprl::RunStreams streams = dprl::RunStreams::from_seed(cfg.seed);
  dprl::RunOptions options;
  options.horizon = cfg.horizon;
  std::optional<accounting::PrivacyBudget> budget;
  if (cfg.privacy_on()) {
    // The initial state is released too, so T steps make T + 1 releases.
    budget = accounting::PrivacyBudget::make(*cfg.epsilon, cfg.delta, cfg.horizon + 1);
    options.budget = budget;
  }

  ExperimentResult out;
  dprl::RunResult run;
  auto execute = [&](auto& learner) {
    if (budget) {
      dprl::ProjectedLaplacePrivatizer mech(budget->epsilon_step);
      run = dprl::run(env, learner, mech, options, streams);
    } else {
      dprl::PassThroughPrivatizer mech;
      run = dprl::run(env, learner, mech, options, streams);
    }
  };
  const agent::AgentConfig acfg = cfg.agent_config();
  const std::size_t actions = env.action_count();
  if (cfg.agent == "dqn") {
    agent::DqnAgent<agent::MlpQ> learner(agent::MlpQ(env.status_count(), actions, acfg, streams.agent), acfg);
    execute(learner);
    out.network = learner.online().network();
  } else if (cfg.agent == "tabular") {
    agent::DqnAgent<agent::TabularQ> learner(agent::TabularQ(actions, cfg.tabular_learning_rate), acfg);
    execute(learner);
  } else if (cfg.agent == "random") {
    agent::RandomAgent learner(actions);
    execute(learner);
  } else {
    agent::FixedActionAgent learner(cfg.fixed_action);
    execute(learner);
  }

  const auto& steps = run.log.steps;
  out.rows.reserve(steps.size());
  for (std::size_t t = 0; t < steps.size(); ++t) {
    RunRow r;
    r.t = steps[t].t;
    r.action_fraction = steps[t].action_value;
    r.reward_privatized = steps[t].reward;
    r.reward_true = run.diagnostics.reward_true[t];
    r.infected_prop_true = run.diagnostics.burden_true[t];
    r.eps_explore = steps[t].eps_explore;
    r.loss = steps[t].loss;
    out.rows.push_back(r);
  }
  out.mechanism_calls = run.log.mechanism_calls;
  out.audit = dprl::taint_audit(run.log);

  Json f = Json::object();
  f["seed"] = cfg.seed;
  f["agent"] = cfg.agent;
  f["population"] = graph->node_count();
  f["edges"] = graph->edge_count();
  f["sample_size"] = sample;
  f["horizon"] = cfg.horizon;
  f["mechanism_calls"] = out.mechanism_calls;
  if (budget) {
    f["epsilon_target"] = budget->epsilon_target;
    f["delta"] = budget->delta;
    f["epsilon_step"] = budget->epsilon_step;
    f["epsilon_achieved"] = accounting::advanced_composition(
        budget->epsilon_step, static_cast<double>(out.mechanism_calls), budget->delta);
    f["taint_audit"] = out.audit.pass ? "pass" : "fail";
  } else {
    f["epsilon_target"] = "off";
    f["epsilon_achieved"] = "off";
    f["taint_audit"] = "not applicable";
  }
  f["trailing_mean_reward_true"] = trailing_mean(out.rows, [](const RunRow& r) { return r.reward_true; });
  if (ginfo.self_loops_dropped || ginfo.duplicates_dropped) {
    f["self_loops_dropped"] = ginfo.self_loops_dropped;
    f["duplicates_dropped"] = ginfo.duplicates_dropped;
  }
  out.footer = std::move(f);
  return out;
}

inline void ensure_parent(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
}

inline void write_experiment(const ExperimentResult& result, const std::filesystem::path& path) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write_run_log(out, result.rows, result.footer);
  if (!out) throw InputError("error writing " + path.string());
}

}  // namespace popdp::cli
