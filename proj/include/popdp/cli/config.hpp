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

// Flat experiment configuration. One table of fields drives JSON parsing,
// serialization and command-line flags, so the three never drift apart.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "popdp/agent/config.hpp"
#include "popdp/error.hpp"
#include "popdp/popproc/seirs.hpp"

namespace popdp::cli {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  // Graph: an edge-list file, or a preferential-attachment graph when empty.
  std::string graph_path;
  std::uint64_t graph_nodes = 5000;
  std::uint64_t graph_edges_per_node = 3;
  std::uint64_t graph_seed = 1;
  // Epidemic and reward.
  double beta = 0.2;
  double sigma = 0.3;
  double gamma_rate = 0.1;
  double rho = 0.01;
  double initial_infected = 0.01;
  double alpha = 0.8;
  // Run.
  std::uint64_t horizon = 500000;
  std::uint64_t sample_size = 0;  // 0 selects 90% of the population
  std::optional<double> epsilon = 10.0;  // empty: privacy off
  double delta = 1e-5;
  std::string agent = "dqn";  // dqn | tabular | random | fixed
  std::uint64_t fixed_action = 0;
  // Agent.
  std::uint64_t batch_size = 128;
  std::uint64_t target_period = 800;
  double discount = 0.999;
  double eps_start = 0.9999;
  double kappa = 1e-5;
  double eps_floor = 0.03;
  std::uint64_t buffer_capacity = 100000;
  double learning_rate = 0.01;
  double rms_decay = 0.99;
  double rms_floor = 1e-8;
  std::uint64_t hidden_width = 64;
  std::uint64_t layer_count = 6;
  double tabular_learning_rate = 0.1;
  // Output.
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;

  bool privacy_on() const noexcept { return epsilon.has_value(); }

  agent::AgentConfig agent_config() const {
    agent::AgentConfig c;
    c.batch_size = batch_size;
    c.target_period = target_period;
    c.discount = discount;
    c.eps_start = eps_start;
    c.kappa = kappa;
    c.eps_floor = eps_floor;
    c.buffer_capacity = buffer_capacity;
    c.learning_rate = learning_rate;
    c.rms_decay = rms_decay;
    c.rms_floor = rms_floor;
    c.hidden_width = hidden_width;
    c.layer_count = layer_count;
    return c;
  }

  popproc::SeirsParams seirs() const { return {beta, sigma, gamma_rate, rho}; }

  std::uint64_t resolved_sample_size(std::uint64_t population) const {
    return sample_size == 0 ? std::max<std::uint64_t>(1, population * 9 / 10) : sample_size;
  }

  void validate() const {
    auto require = [](bool ok, const std::string& what) {
      if (!ok) throw ConfigError(what);
    };
    if (graph_path.empty()) {
      require(graph_nodes >= 2, "graph_nodes must be at least 2");
      require(graph_edges_per_node >= 1 && graph_edges_per_node < graph_nodes,
              "graph_edges_per_node must be in [1, graph_nodes)");
    }
    try {
      seirs().validate();
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
    require(initial_infected >= 0.0 && initial_infected <= 1.0, "initial_infected must be in [0, 1]");
    require(alpha >= 0.0 && alpha <= 1.0, "alpha must be in [0, 1]");
    require(horizon >= 1, "horizon must be at least 1");
    if (epsilon) require(*epsilon > 0.0 && std::isfinite(*epsilon), "epsilon must be positive and finite, or \"off\"");
    require(delta > 0.0 && delta < 1.0, "delta must be in (0, 1)");
    require(agent == "dqn" || agent == "tabular" || agent == "random" || agent == "fixed",
            "agent must be one of dqn, tabular, random, fixed");
    require(fixed_action < 5, "fixed_action must index one of the 5 quarantine actions");
    try {
      agent_config().validate();
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
    require(tabular_learning_rate > 0.0 && tabular_learning_rate <= 1.0,
            "tabular_learning_rate must be in (0, 1]");
    require(!output_dir.empty(), "output_dir must not be empty");
  }
};

using Member = std::variant<std::string ExperimentConfig::*, std::uint64_t ExperimentConfig::*,
                            double ExperimentConfig::*, std::optional<double> ExperimentConfig::*>;

struct Field {
  const char* name;
  Member member;
  const char* help;
};

inline const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> table{
      {"graph_path", &C::graph_path, "edge-list file; empty selects the synthetic graph"},
      {"graph_nodes", &C::graph_nodes, "synthetic graph node count"},
      {"graph_edges_per_node", &C::graph_edges_per_node, "edges added per new node (synthetic graph)"},
      {"graph_seed", &C::graph_seed, "seed of the synthetic graph"},
      {"beta", &C::beta, "per-contact transmission probability"},
      {"sigma", &C::sigma, "exposed to infected rate"},
      {"gamma_rate", &C::gamma_rate, "infected to recovered rate"},
      {"rho", &C::rho, "recovered to susceptible rate"},
      {"initial_infected", &C::initial_infected, "initially infected fraction"},
      {"alpha", &C::alpha, "reward weight on infection burden"},
      {"horizon", &C::horizon, "number of steps T"},
      {"sample_size", &C::sample_size, "sampled individuals per step; 0 means 90% of the population"},
      {"epsilon", &C::epsilon, "target privacy budget, or \"off\""},
      {"delta", &C::delta, "privacy slack"},
      {"agent", &C::agent, "dqn, tabular, random or fixed"},
      {"fixed_action", &C::fixed_action, "action index for the fixed agent"},
      {"batch_size", &C::batch_size, "replay batch size"},
      {"target_period", &C::target_period, "target network sync period"},
      {"discount", &C::discount, "reward discount"},
      {"eps_start", &C::eps_start, "initial exploration rate"},
      {"kappa", &C::kappa, "exploration decay rate"},
      {"eps_floor", &C::eps_floor, "exploration floor"},
      {"buffer_capacity", &C::buffer_capacity, "replay buffer capacity"},
      {"learning_rate", &C::learning_rate, "optimizer learning rate"},
      {"rms_decay", &C::rms_decay, "optimizer smoothing constant"},
      {"rms_floor", &C::rms_floor, "optimizer numerical floor"},
      {"hidden_width", &C::hidden_width, "hidden layer width"},
      {"layer_count", &C::layer_count, "number of linear layers"},
      {"tabular_learning_rate", &C::tabular_learning_rate, "tabular agent step size"},
      {"seed", &C::seed, "master seed"},
      {"output_dir", &C::output_dir, "directory for output files"},
  };
  return table;
}

inline const Field& field(const std::string& name) {
  for (const auto& f : fields())
    if (name == f.name) return f;
  throw ConfigError("unknown configuration key: " + name);
}

// "off" and "inf" both disable privacy.
inline std::optional<double> parse_epsilon(const std::string& text) {
  if (text == "off" || text == "inf" || text == "Inf" || text == "infinity") return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') throw ConfigError("epsilon: expected a number or \"off\", got " + text);
  if (std::isinf(v) && v > 0) return std::nullopt;
  return v;
}

inline void set_from_json(ExperimentConfig& cfg, const std::string& key, const Json& v) {
  const Field& f = field(key);
  std::visit(
      [&](auto m) {
        using T = std::remove_cvref_t<decltype(cfg.*m)>;
        if constexpr (std::is_same_v<T, std::string>) {
          if (!v.is_string()) throw ConfigError(key + ": expected a string");
          cfg.*m = v.get<std::string>();
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          if (!v.is_number_unsigned()) throw ConfigError(key + ": expected a nonnegative integer");
          cfg.*m = v.get<std::uint64_t>();
        } else if constexpr (std::is_same_v<T, double>) {
          if (!v.is_number()) throw ConfigError(key + ": expected a number");
          cfg.*m = v.get<double>();
        } else {
          if (v.is_string())
            cfg.*m = parse_epsilon(v.get<std::string>());
          else if (v.is_number())
            cfg.*m = v.get<double>();
          else
            throw ConfigError(key + ": expected a number or \"off\"");
        }
      },
      f.member);
}

inline void set_from_string(ExperimentConfig& cfg, const std::string& key, const std::string& text) {
  const Field& f = field(key);
  std::visit(
      [&](auto m) {
        using T = std::remove_cvref_t<decltype(cfg.*m)>;
        if constexpr (std::is_same_v<T, std::string>) {
          cfg.*m = text;
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          std::uint64_t x = 0;
          const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
          if (ec != std::errc() || p != text.data() + text.size())
            throw ConfigError(key + ": expected a nonnegative integer, got " + text);
          cfg.*m = x;
        } else if constexpr (std::is_same_v<T, double>) {
          char* end = nullptr;
          const double x = std::strtod(text.c_str(), &end);
          if (text.empty() || *end != '\0') throw ConfigError(key + ": expected a number, got " + text);
          cfg.*m = x;
        } else {
          cfg.*m = parse_epsilon(text);
        }
      },
      f.member);
}

// Keys not in the table are rejected; missing keys keep their defaults.
inline ExperimentConfig parse_config(const Json& j, ExperimentConfig base = {}) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, value] : j.items()) set_from_json(base, key, value);
  return base;
}

inline ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {}) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  return parse_config(j, std::move(base));
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

// Every field, in table order.
inline Json to_json(const ExperimentConfig& cfg) {
  Json j = Json::object();
  for (const auto& f : fields())
    std::visit(
        [&](auto m) {
          using T = std::remove_cvref_t<decltype(cfg.*m)>;
          if constexpr (std::is_same_v<T, std::optional<double>>) {
            if (cfg.*m)
              j[f.name] = *(cfg.*m);
            else
              j[f.name] = "off";
          } else {
            j[f.name] = cfg.*m;
          }
        },
        f.member);
  return j;
}

inline std::string serialize(const ExperimentConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

}  // namespace popdp::cli
