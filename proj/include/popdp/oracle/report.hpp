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
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace popdp::oracle {

// JSON has no infinities; non-finite values are written as strings.
inline nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

struct CheckReport {
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  double statistic = 0.0;
  double bound = 0.0;
  double standard_error = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const {
    nlohmann::json j{{"name", name},
                     {"inputs", inputs},
                     {"statistic", json_number(statistic)},
                     {"bound", json_number(bound)},
                     {"standard_error", json_number(standard_error)},
                     {"pass", pass}};
    if (!details.empty()) j["details"] = details;
    return j;
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckReport> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    return {{"suite", suite}, {"pass", pass()}, {"checks", std::move(arr)}};
  }
};

}  // namespace popdp::oracle
