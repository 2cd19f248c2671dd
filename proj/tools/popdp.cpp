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

// popdp: run, sweep and verify differentially private epidemic control.
//
// Exit status: 0 success, 1 a check failed, 2 usage or configuration error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "popdp/agent/checkpoint.hpp"
#include "popdp/cli/config.hpp"
#include "popdp/cli/experiment.hpp"
#include "popdp/cli/sweep.hpp"
#include "popdp/cli/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace popdp;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

// Options shared by every subcommand that takes an experiment config.
struct ConfigOptions {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool dump = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app->add_flag("--dump-config", dump, "print the resolved configuration and exit");
    for (const auto& f : cli::fields()) {
      std::string dashed = f.name;
      for (char& c : dashed)
        if (c == '_') c = '-';
      std::string names = "--" + dashed;
      if (dashed != f.name) names += std::string(",--") + f.name;
      app->add_option(names, values[f.name], f.help);
    }
  }

  cli::ExperimentConfig resolve(CLI::App* app) const {
    cli::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = cli::load_config(config_path);
    for (const auto& f : cli::fields())
      if (app->count(std::string("--") + f.name) > 0) cli::set_from_string(cfg, f.name, values.at(f.name));
    cfg.validate();
    return cfg;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  cli::ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write " + path.string());
}

std::vector<std::optional<double>> parse_epsilon_list(const std::string& text) {
  std::vector<std::optional<double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(cli::parse_epsilon(item));
  if (out.empty()) throw ConfigError("empty epsilon list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw ConfigError(std::string(what) + ": bad number " + item);
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

int run_single(const cli::ExperimentConfig& cfg, const std::string& out_path, const std::string& checkpoint) {
  const cli::ExperimentResult result = cli::run_experiment(cfg);
  const fs::path path = out_path.empty() ? fs::path(cfg.output_dir) / "run.csv" : fs::path(out_path);
  cli::write_experiment(result, path);
  if (result.network) {
    const fs::path ck = checkpoint.empty() ? fs::path(cfg.output_dir) / "model.ckpt" : fs::path(checkpoint);
    cli::ensure_parent(ck);
    std::ofstream os(ck, std::ios::binary);
    agent::save_checkpoint(os, *result.network);
    if (!os) throw InputError("cannot write " + ck.string());
  }
  std::printf("wrote %s (%zu steps)\n", path.string().c_str(), result.rows.size());
  std::printf("%s\n", result.footer.dump().c_str());
  if (cfg.privacy_on() && !result.audit.pass) {
    std::fprintf(stderr, "taint audit failed at step %llu\n",
                 static_cast<unsigned long long>(result.audit.first_tainted.value_or(0)));
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private reinforcement learning on population processes"};
  app.require_subcommand(1);

  // simulate: non-learning policies.
  auto* simulate = app.add_subcommand("simulate", "run a fixed or random policy and log every step");
  ConfigOptions sim_cfg;
  std::string sim_out;
  sim_cfg.attach(simulate);
  simulate->add_option("--out", sim_out, "run log path (default <output_dir>/run.csv)");

  auto* train = app.add_subcommand("train", "train a dqn or tabular agent and log every step");
  ConfigOptions train_cfg;
  std::string train_out, train_ckpt;
  train_cfg.attach(train);
  train->add_option("--out", train_out, "run log path (default <output_dir>/run.csv)");
  train->add_option("--checkpoint", train_ckpt, "weight file for dqn (default <output_dir>/model.ckpt)");

  auto* sweep = app.add_subcommand("sweep", "replicated runs over a list of privacy budgets");
  ConfigOptions sweep_cfg;
  std::string sweep_eps = "off,10,0.5", sweep_out;
  std::size_t sweep_seeds = 5, sweep_workers = 0;
  sweep_cfg.attach(sweep);
  sweep->add_option("--epsilons", sweep_eps, "comma-separated budgets; off disables privacy")
      ->capture_default_str();
  sweep->add_option("--seeds", sweep_seeds, "replicas per budget")->capture_default_str();
  sweep->add_option("--workers", sweep_workers, "worker threads (0: one per core)");
  sweep->add_option("--out", sweep_out, "sweep CSV path (default <output_dir>/sweep.csv)");

  auto* verify = app.add_subcommand("verify", "run verification suites and write JSON reports");
  std::string suite;
  std::uint64_t verify_seed = 1;
  std::string verify_dir = "out/verify";
  verify->add_option("suite", suite, "accounting, tail, induced, trend, pufferfish, lemma, attack or all")
      ->required();
  verify->add_option("--seed", verify_seed, "master seed")->capture_default_str();
  verify->add_option("--output-dir", verify_dir, "report directory")->capture_default_str();

  auto* curve = app.add_subcommand("accounting-curve", "achieved epsilon against target epsilon");
  std::string curve_deltas = "0.01,0.00001", curve_targets = "0.1,0.5,1,2,5,10", curve_out;
  double curve_horizon = 5e5;
  curve->add_option("--deltas", curve_deltas, "comma-separated delta values")->capture_default_str();
  curve->add_option("--horizon", curve_horizon, "number of releases T")->capture_default_str();
  curve->add_option("--targets", curve_targets, "comma-separated target epsilons")->capture_default_str();
  curve->add_option("--out", curve_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (simulate->parsed()) {
      const auto cfg = sim_cfg.resolve(simulate);
      if (sim_cfg.dump) return std::printf("%s", cli::serialize(cfg).c_str()), kOk;
      if (cfg.agent != "random" && cfg.agent != "fixed")
        throw ConfigError("simulate runs the random or fixed agent; use train for " + cfg.agent);
      return run_single(cfg, sim_out, "");
    }
    if (train->parsed()) {
      const auto cfg = train_cfg.resolve(train);
      if (train_cfg.dump) return std::printf("%s", cli::serialize(cfg).c_str()), kOk;
      if (cfg.agent != "dqn" && cfg.agent != "tabular")
        throw ConfigError("train runs the dqn or tabular agent; use simulate for " + cfg.agent);
      return run_single(cfg, train_out, train_ckpt);
    }
    if (sweep->parsed()) {
      const auto cfg = sweep_cfg.resolve(sweep);
      if (sweep_cfg.dump) return std::printf("%s", cli::serialize(cfg).c_str()), kOk;
      const auto rows = cli::sweep(cfg, parse_epsilon_list(sweep_eps), sweep_seeds, sweep_workers);
      std::ostringstream csv;
      cli::write_sweep_csv(csv, rows);
      const fs::path path = sweep_out.empty() ? fs::path(cfg.output_dir) / "sweep.csv" : fs::path(sweep_out);
      write_text(path, csv.str());
      std::printf("%s", csv.str().c_str());
      return kOk;
    }
    if (verify->parsed()) {
      const auto& known = cli::suite_names();
      std::vector<std::string> suites{suite};
      if (suite == "all")
        suites = known;
      else if (std::find(known.begin(), known.end(), suite) == known.end())
        throw ConfigError("unknown verification suite: " + suite);
      bool all_pass = true;
      for (const auto& name : suites) {
        cli::SuiteFiles files;
        const auto report = cli::run_suite(name, {verify_seed}, &files);
        write_text(fs::path(verify_dir) / (name + ".json"), report.to_json().dump(2) + "\n");
        for (const auto& [file, text] : files) write_text(fs::path(verify_dir) / file, text);
        std::size_t failed = 0;
        for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
        std::printf("%-11s %s  %zu checks, %zu failed\n", name.c_str(), report.pass() ? "PASS" : "FAIL",
                    report.checks.size(), failed);
        all_pass = all_pass && report.pass();
      }
      return all_pass ? kOk : kCheckFailed;
    }
    if (curve->parsed()) {
      const std::string csv = cli::accounting_curve_csv(parse_real_list(curve_deltas, "deltas"), curve_horizon,
                                                        parse_real_list(curve_targets, "targets"));
      if (curve_out.empty())
        std::printf("%s", csv.c_str());
      else
        write_text(curve_out, csv);
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
