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

#include "popdp/cli/csv.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "popdp/error.hpp"

namespace popdp::cli {
namespace {

std::vector<RunRow> sample_rows() {
  std::vector<RunRow> rows;
  for (std::uint64_t t = 0; t < 5; ++t) {
    RunRow r;
    r.t = t;
    r.action_fraction = 0.25 * static_cast<double>(t % 5);
    r.reward_privatized = -0.1 * static_cast<double>(t) + 1.0 / 3.0;
    r.reward_true = -0.07 * static_cast<double>(t);
    r.infected_prop_true = 0.01 * static_cast<double>(t);
    r.eps_explore = 0.9999 * std::exp(-1e-5 * static_cast<double>(t));
    if (t >= 2) r.loss = 1e-3 / static_cast<double>(t);
    rows.push_back(r);
  }
  return rows;
}

TEST(RunLog, HeaderSchema) {
  std::ostringstream out;
  write_run_log(out, {}, {{"epsilon_achieved", 1.5}});
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,action_fraction,reward_privatized,reward_true,infected_prop_true,eps_explore,loss");
}

TEST(RunLog, RoundTripIsExact) {
  const auto rows = sample_rows();
  nlohmann::ordered_json footer{{"seed", 3}, {"epsilon_achieved", 6.0866}};
  std::ostringstream out;
  write_run_log(out, rows, footer);
  std::istringstream in(out.str());
  const auto back = read_run_log(in);
  EXPECT_EQ(back.rows, rows);
  EXPECT_EQ(back.footer, footer);
}

TEST(RunLog, FooterIsTheLastLineAndJson) {
  std::ostringstream out;
  write_run_log(out, sample_rows(), {{"epsilon_achieved", "off"}});
  const std::string s = out.str();
  const auto last = s.rfind('\n', s.size() - 2);
  const std::string tail = s.substr(last + 1);
  ASSERT_EQ(tail.rfind(kFooterPrefix, 0), 0u);
  const auto j = nlohmann::json::parse(tail.substr(kFooterPrefix.size()));
  EXPECT_EQ(j.at("epsilon_achieved"), "off");
}

TEST(RunLog, ReaderIsStrict) {
  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(read_run_log(in), ParseError) << text;
  };
  const std::string h = "t,action_fraction,reward_privatized,reward_true,infected_prop_true,eps_explore,loss\n";
  fails("");
  fails("t,action\n# {}\n");
  fails(h);
  fails(h + "0,0,0,0,0,0\n# {}\n");
  fails(h + "0,0,0,0,0,0,0,0\n# {}\n");
  fails(h + "0,a,0,0,0,0,\n# {}\n");
  fails(h + "# {}\n0,0,0,0,0,0,\n");
  fails(h + "# not json\n");
  std::istringstream ok(h + "0,0,0,0,0,1,\n# {}\n");
  const auto r = read_run_log(ok);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_FALSE(r.rows[0].loss.has_value());
}

TEST(RunLog, SplitKeepsTrailingEmptyCell) {
  EXPECT_EQ(split_csv("a,b,"), (std::vector<std::string>{"a", "b", ""}));
  EXPECT_EQ(split_csv("a,,c"), (std::vector<std::string>{"a", "", "c"}));
}

}  // namespace
}  // namespace popdp::cli
