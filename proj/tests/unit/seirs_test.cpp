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

#include "popdp/popproc/seirs.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "../support/stats.hpp"
#include "popdp/popproc/env.hpp"

namespace popdp::popproc {
namespace {

PopulationState make_pop(std::vector<Status> s) { return PopulationState{std::move(s), 0}; }

// Star with hub 0 and leaves 1..3.
ContactGraph star4() { return ContactGraph(4, {{0, 1}, {0, 2}, {0, 3}}); }

TEST(Seirs, ExposureProbability) {
  EXPECT_NEAR(exposure_probability(0.2, 3), 0.488, 1e-12);
  EXPECT_EQ(exposure_probability(0.2, 0), 0.0);
  EXPECT_EQ(exposure_probability(1.0, 1), 1.0);
}

TEST(Seirs, ParamsValidation) {
  EXPECT_NO_THROW((SeirsParams{0.2, 0.3, 0.1, 0.0}.validate()));
  EXPECT_THROW((SeirsParams{0.0, 0.3, 0.1, 0.1}.validate()), InputError);
  EXPECT_THROW((SeirsParams{0.2, 1.3, 0.1, 0.1}.validate()), InputError);
  EXPECT_THROW((SeirsParams{0.2, 0.3, 0.1, -0.1}.validate()), InputError);
}

TEST(Seirs, ExposureFrequencyMatchesFormula) {
  // hub susceptible, three infected leaves
  const auto g = star4();
  const auto pop = make_pop({Status::kSusceptible, Status::kInfected, Status::kInfected,
                             Status::kInfected});
  const SeirsParams params{0.2, 0.3, 0.1, 0.01};
  Rng rng(1);
  const int n = 100000;
  int exposed = 0;
  for (int i = 0; i < n; ++i)
    exposed += step_statuses(pop, g, std::vector<NodeId>{}, params, rng).statuses[0] ==
               Status::kExposed;
  EXPECT_NEAR(exposed / double(n), 0.488, 4 * testing::proportion_se(0.488, n));
}

TEST(Seirs, NoInfectedContactsNoExposure) {
  const auto g = star4();
  const auto pop = make_pop(std::vector<Status>(4, Status::kSusceptible));
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto next = step_statuses(pop, g, std::vector<NodeId>{}, SeirsParams{}, rng);
    for (auto s : next.statuses) ASSERT_EQ(s, Status::kSusceptible);
  }
}

TEST(Seirs, DegenerateRates) {
  ContactGraph g(3, {{0, 1}});
  const auto pop = make_pop({Status::kSusceptible, Status::kInfected, Status::kExposed});
  const SeirsParams ones{1.0, 1.0, 1.0, 1.0};
  Rng rng(3);
  const auto next = step_statuses(pop, g, std::vector<NodeId>{}, ones, rng);
  EXPECT_EQ(next.statuses[0], Status::kExposed);
  EXPECT_EQ(next.statuses[1], Status::kRecovered);
  EXPECT_EQ(next.statuses[2], Status::kInfected);
  EXPECT_EQ(next.step, 1u);
}

TEST(Seirs, QuarantinedEndpointBlocksEdge) {
  const auto g = star4();
  const auto pop = make_pop({Status::kSusceptible, Status::kInfected, Status::kInfected,
                             Status::kSusceptible});
  const SeirsParams ones{1.0, 1.0, 1.0, 1.0};
  Rng rng(4);
  // infected leaves quarantined: hub has no effective infected contacts
  auto next = step_statuses(pop, g, std::vector<NodeId>{1, 2}, ones, rng);
  EXPECT_EQ(next.statuses[0], Status::kSusceptible);
  // quarantined susceptible hub cannot be exposed either
  next = step_statuses(pop, g, std::vector<NodeId>{0}, ones, rng);
  EXPECT_EQ(next.statuses[0], Status::kSusceptible);
  // quarantine does not stop recovery
  EXPECT_EQ(next.statuses[1], Status::kRecovered);
}

TEST(Seirs, FullQuarantineCreatesNoExposed) {
  ContactGraph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  Rng rng(5);
  auto pop = initial_population(6, 0.5, rng);
  std::vector<NodeId> all{0, 1, 2, 3, 4, 5};
  for (int t = 0; t < 200; ++t) {
    const auto next = step_statuses(pop, g, all, SeirsParams{}, rng);
    for (std::size_t i = 0; i < 6; ++i)
      if (pop.statuses[i] == Status::kSusceptible) {
        ASSERT_EQ(next.statuses[i], Status::kSusceptible);
      }
    pop = next;
  }
}

TEST(Seirs, ConservesPopulationAndIsDeterministic) {
  ContactGraph g(50, [] {
    std::vector<Edge> e;
    for (NodeId i = 0; i + 1 < 50; ++i) e.push_back({i, i + 1});
    return e;
  }());
  Rng a(9), b(9);
  auto pa = initial_population(50, 0.2, a);
  auto pb = initial_population(50, 0.2, b);
  for (int t = 0; t < 100; ++t) {
    pa = step_statuses(pa, g, std::vector<NodeId>{3, 4}, SeirsParams{}, a);
    pb = step_statuses(pb, g, std::vector<NodeId>{3, 4}, SeirsParams{}, b);
    ASSERT_EQ(pa.statuses, pb.statuses);
    ASSERT_EQ(pa.size(), 50u);
    const auto c = status_counts(pa);
    ASSERT_EQ(c[0] + c[1] + c[2] + c[3], 50u);
  }
}

TEST(Seirs, ReplayFromSnapshot) {
  ContactGraph g(10, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {0, 9}});
  Rng rng(13);
  auto pop = initial_population(10, 0.4, rng);
  for (int t = 0; t < 20; ++t) pop = step_statuses(pop, g, std::vector<NodeId>{}, SeirsParams{}, rng);
  const auto snapshot = pop;
  Rng r1(77), r2(77);
  EXPECT_EQ(step_statuses(snapshot, g, std::vector<NodeId>{}, SeirsParams{}, r1).statuses,
            step_statuses(snapshot, g, std::vector<NodeId>{}, SeirsParams{}, r2).statuses);
}

TEST(Seirs, RejectsOutOfRangeQuarantine) {
  const auto g = star4();
  const auto pop = make_pop(std::vector<Status>(4, Status::kSusceptible));
  Rng rng(1);
  EXPECT_THROW(step_statuses(pop, g, std::vector<NodeId>{4}, SeirsParams{}, rng), InputError);
  EXPECT_THROW(step_statuses(make_pop({Status::kSusceptible}), g, std::vector<NodeId>{},
                             SeirsParams{}, rng),
               InputError);
}

TEST(Seirs, FullQuarantineLimitsCumulativeInfection) {
  // rho = 0: compare ever-infected counts under fraction 1 versus fraction 0.
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 40; ++i)
    for (NodeId j = i + 1; j < 40; j += 7) edges.push_back({i, j});
  ContactGraph g(40, edges);
  const SeirsParams params{0.3, 0.5, 0.2, 0.0};
  std::vector<NodeId> all(40);
  for (NodeId i = 0; i < 40; ++i) all[i] = i;
  double ever_full = 0, ever_none = 0;
  for (int run = 0; run < 200; ++run) {
    for (int mode = 0; mode < 2; ++mode) {
      auto rng = make_rng(run, 1);
      auto pop = initial_population(40, 0.1, rng);
      std::vector<bool> ever(40, false);
      for (int t = 0; t < 30; ++t) {
        for (std::size_t i = 0; i < 40; ++i)
          if (pop.statuses[i] != Status::kSusceptible) ever[i] = true;
        pop = step_statuses(pop, g, mode == 0 ? std::span<const NodeId>(all)
                                              : std::span<const NodeId>(),
                            params, rng);
      }
      const double count = static_cast<double>(std::count(ever.begin(), ever.end(), true));
      (mode == 0 ? ever_full : ever_none) += count;
    }
  }
  EXPECT_LE(ever_full, ever_none);
}

TEST(Seirs, InitialPopulation) {
  Rng rng(1);
  const auto none = initial_population(100, 0.0, rng);
  for (auto s : none.statuses) EXPECT_EQ(s, Status::kSusceptible);
  const auto all = initial_population(100, 1.0, rng);
  for (auto s : all.statuses) EXPECT_EQ(s, Status::kInfected);
  EXPECT_THROW(initial_population(3, 1.5, rng), InputError);
}

}  // namespace
}  // namespace popdp::popproc
