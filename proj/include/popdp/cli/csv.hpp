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

#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "popdp/error.hpp"

namespace popdp::cli {

inline constexpr std::array<std::string_view, 7> kRunLogColumns{
    "t", "action_fraction", "reward_privatized", "reward_true", "infected_prop_true", "eps_explore", "loss"};

// Marks the trailing JSON line of a run log.
inline constexpr std::string_view kFooterPrefix = "# ";

struct RunRow {
  std::uint64_t t = 0;
  double action_fraction = 0.0;
  double reward_privatized = 0.0;
  double reward_true = 0.0;
  double infected_prop_true = 0.0;
  double eps_explore = 0.0;
  std::optional<double> loss;  // empty when no training step ran

  bool operator==(const RunRow&) const = default;
};

inline std::string format_real(double v) {
  // Shortest text that reads back to the same double.
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string join_header(const auto& columns) {
  std::string out;
  for (const auto& c : columns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

inline void write_run_log(std::ostream& out, const std::vector<RunRow>& rows, const nlohmann::ordered_json& footer) {
  out << join_header(kRunLogColumns) << '\n';
  for (const auto& r : rows) {
    out << r.t << ',' << format_real(r.action_fraction) << ',' << format_real(r.reward_privatized) << ','
        << format_real(r.reward_true) << ',' << format_real(r.infected_prop_true) << ','
        << format_real(r.eps_explore) << ',';
    if (r.loss) out << format_real(*r.loss);
    out << '\n';
  }
  out << kFooterPrefix << footer.dump() << '\n';
}

struct RunLogFile {
  std::vector<RunRow> rows;
  nlohmann::ordered_json footer;
};

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Strict reader: the header must match exactly, every row must have all
// columns and the footer must be the last line.
inline RunLogFile read_run_log(std::istream& in) {
  RunLogFile out;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != join_header(kRunLogColumns)) throw ParseError("bad run log header", 1);
  bool footer_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (footer_seen) throw ParseError("data after footer", line_no);
    if (line.rfind(kFooterPrefix, 0) == 0) {
      try {
        out.footer = nlohmann::ordered_json::parse(line.substr(kFooterPrefix.size()));
      } catch (const nlohmann::json::parse_error&) {
        throw ParseError("footer is not JSON", line_no);
      }
      footer_seen = true;
      continue;
    }
    const auto cells = split_csv(line);
    if (cells.size() != kRunLogColumns.size()) throw ParseError("wrong column count", line_no);
    try {
      RunRow r;
      r.t = std::stoull(cells[0]);
      r.action_fraction = std::stod(cells[1]);
      r.reward_privatized = std::stod(cells[2]);
      r.reward_true = std::stod(cells[3]);
      r.infected_prop_true = std::stod(cells[4]);
      r.eps_explore = std::stod(cells[5]);
      if (!cells[6].empty()) r.loss = std::stod(cells[6]);
      out.rows.push_back(r);
    } catch (const std::logic_error&) {
      throw ParseError("malformed number", line_no);
    }
  }
  if (!footer_seen) throw ParseError("missing footer", line_no);
  return out;
}

}  // namespace popdp::cli
