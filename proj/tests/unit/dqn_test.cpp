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

#include "popdp/agent/dqn.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "../support/stats.hpp"

namespace popdp::agent {
namespace {

using dprl::PrivatizedTransition;

StateHistogram state(int which) { return which == 0 ? StateHistogram({1, 0}, 1) : StateHistogram({0, 1}, 1); }

TEST(SelectAction, GreedyAndTies) {
  Rng rng(1);
  const std::vector<double> q{-1, -0.5, -2};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(select_action(q, 0.0, rng), 1u);
  const std::vector<double> flat{3, 3, 3};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(select_action(flat, 0.0, rng), 0u);
}

TEST(SelectAction, FullExplorationIsUniform) {
  Rng rng(2);
  const std::vector<double> q{5, 0, 0, 0, 0};
  std::vector<std::size_t> counts(5, 0);
  for (int i = 0; i < 100000; ++i) ++counts[select_action(q, 1.0, rng)];
  EXPECT_LT(testing::chi_square_uniform(counts), testing::chi_square_quantile(4));
}

TEST(DecayExploration, Schedule) {
  AgentConfig cfg;
  EXPECT_DOUBLE_EQ(decay_exploration(0, cfg), 0.9999);
  EXPECT_NEAR(decay_exploration(100000, cfg), 0.03 + 0.9699 * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(decay_exploration(100000000, cfg), 0.03, 1e-12);
  double prev = 2;
  for (std::uint64_t t = 0; t < 2000000; t += 50000) {
    const double e = decay_exploration(t, cfg);
    EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(TdTarget, Examples) {
  EXPECT_NEAR(td_target(-0.45, 0.999, -10), -10.44, 1e-9);
  EXPECT_EQ(td_target(-0.3, 0.0, -7), -0.3);
}

TEST(AgentConfig, Defaults) {
  AgentConfig cfg;
  EXPECT_EQ(cfg.batch_size, 128u);
  EXPECT_EQ(cfg.target_period, 800u);
  EXPECT_EQ(cfg.discount, 0.999);
  EXPECT_EQ(cfg.eps_start, 0.9999);
  EXPECT_EQ(cfg.kappa, 1e-5);
  EXPECT_EQ(cfg.eps_floor, 0.03);
  EXPECT_NO_THROW(cfg.validate());
  cfg.discount = 1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = AgentConfig{};
  cfg.eps_start = 0.02;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = AgentConfig{};
  cfg.batch_size = 0;
  EXPECT_THROW(cfg.validate(), InputError);
}

TEST(TrainStep, SingleTransitionTabularReachesTarget) {
  AgentConfig cfg;
  cfg.batch_size = 1;
  cfg.discount = 0.9;
  TabularQ q(2, 1.0), target(2, 1.0);
  target.set(state(1), 0, -2.0);
  target.set(state(1), 1, -4.0);
  ReplayBuffer<PrivatizedTransition> buf(4);
  Rng rng(1);
  EXPECT_FALSE(train_step(q, target, buf, cfg, rng).has_value());
  buf.push({state(0), 1, -0.5, state(1), false});
  const auto loss = train_step(q, target, buf, cfg, rng);
  ASSERT_TRUE(loss.has_value());
  EXPECT_NEAR(*loss, 0.5 * 2.3 * 2.3, 1e-12);
  EXPECT_NEAR(q.value(state(0), 1), -0.5 + 0.9 * -2.0, 1e-12);
  EXPECT_EQ(*train_step(q, target, buf, cfg, rng), 0.0);
  // target untouched
  EXPECT_EQ(target.value(state(1), 0), -2.0);
}

TEST(TrainStep, OnlyOnlineNetworkMoves) {
  AgentConfig cfg;
  cfg.batch_size = 4;
  cfg.layer_count = 3;
  cfg.hidden_width = 8;
  Rng rng(3);
  MlpQ q(2, 2, cfg, rng);
  const MlpQ target = q;
  ReplayBuffer<PrivatizedTransition> buf(16);
  for (int i = 0; i < 8; ++i) buf.push({state(i % 2), std::size_t(i % 2), -1.0, state(1 - i % 2), false});
  const auto before = q.network().layers()[0].weight;
  ASSERT_TRUE(train_step(q, target, buf, cfg, rng).has_value());
  EXPECT_NE(q.network().layers()[0].weight, before);
  EXPECT_EQ(target.network().layers()[0].weight, before);
}

TEST(SyncTarget, Period) {
  AgentConfig cfg;
  cfg.layer_count = 2;
  cfg.hidden_width = 4;
  cfg.target_period = 10;
  Rng rng(4);
  MlpQ q(2, 2, cfg, rng);
  Rng other(5);
  MlpQ target(2, 2, cfg, other);
  EXPECT_TRUE(sync_target(q, target, 0, cfg));
  EXPECT_EQ(target.network().layers()[0].weight, q.network().layers()[0].weight);
  q.network().layers()[0].weight(0, 0) += 1.0;
  EXPECT_FALSE(sync_target(q, target, 11, cfg));
  EXPECT_NE(target.network().layers()[0].weight, q.network().layers()[0].weight);
  EXPECT_TRUE(sync_target(q, target, 10, cfg));
  for (std::size_t l = 0; l < q.network().layers().size(); ++l) {
    EXPECT_EQ((target.network().layers()[l].weight - q.network().layers()[l].weight).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((target.network().layers()[l].bias - q.network().layers()[l].bias).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(TabularQ, DefaultsToZero) {
  TabularQ q(3, 0.5);
  EXPECT_EQ(q.values(state(0)), (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(q.size(), 0u);
  EXPECT_THROW(TabularQ(0, 0.5), InputError);
  EXPECT_THROW(TabularQ(2, 1.5), InputError);
}

// Two states, two actions, exact expected backups.
TEST(TabularQ, ConvergesToValueIterationFixedPoint) {
  const double gamma = 0.9;
  const double p[2][2][2] = {{{0.8, 0.2}, {0.1, 0.9}}, {{0.5, 0.5}, {0.3, 0.7}}};
  const double r[2][2] = {{-1.0, -0.2}, {0.0, -0.6}};

  double v[2][2] = {{0, 0}, {0, 0}};
  for (int it = 0; it < 2000; ++it) {
    double nv[2][2];
    for (int s = 0; s < 2; ++s)
      for (int a = 0; a < 2; ++a) {
        nv[s][a] = r[s][a];
        for (int n = 0; n < 2; ++n) nv[s][a] += gamma * p[s][a][n] * std::max(v[n][0], v[n][1]);
      }
    std::memcpy(v, nv, sizeof v);
  }

  TabularQ q(2, 0.5);
  for (int sweep = 0; sweep < 2000; ++sweep)
    for (int s = 0; s < 2; ++s)
      for (int a = 0; a < 2; ++a) {
        double y = r[s][a];
        for (int n = 0; n < 2; ++n) {
          const auto qv = q.values(state(n));
          y += gamma * p[s][a][n] * std::max(qv[0], qv[1]);
        }
        q.update(state(s), a, y);
      }
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a) EXPECT_NEAR(q.value(state(s), a), v[s][a], 1e-3);
}

TEST(DqnAgent, GatesTrainingAndDecays) {
  AgentConfig cfg;
  cfg.batch_size = 3;
  cfg.target_period = 2;
  TabularQ q(2, 0.5);
  DqnAgent<TabularQ> agent(q, cfg);
  Rng rng(1);
  EXPECT_EQ(agent.exploration_rate(), cfg.eps_start);
  for (std::uint64_t t = 1; t <= 5; ++t) {
    const auto stats = agent.learn({state(0), 0, -1.0, state(1), false}, t, rng);
    EXPECT_EQ(stats.loss.has_value(), t > 3) << t;
    EXPECT_DOUBLE_EQ(agent.exploration_rate(), decay_exploration(t, cfg));
  }
  EXPECT_EQ(agent.buffer().size(), 5u);
}

TEST(DqnAgent, Deterministic) {
  AgentConfig cfg;
  cfg.batch_size = 4;
  cfg.kappa = 1e-2;
  auto run = [&] {
    DqnAgent<TabularQ> agent(TabularQ(2, 0.3), cfg);
    Rng rng(9);
    std::vector<std::size_t> actions;
    int s = 0;
    for (std::uint64_t t = 1; t <= 300; ++t) {
      const auto a = agent.act(state(s), rng);
      actions.push_back(a);
      const int n = static_cast<int>((a + t) % 2);
      agent.learn({state(s), a, n == 0 ? -1.0 : 0.0, state(n), false}, t, rng);
      s = n;
    }
    return std::make_pair(actions, agent.online().values(state(0)));
  };
  EXPECT_EQ(run(), run());
}

TEST(Agents, RandomAndFixed) {
  RandomAgent r(4);
  FixedActionAgent f(2);
  Rng rng(1);
  std::vector<std::size_t> counts(4, 0);
  for (int i = 0; i < 40000; ++i) ++counts[r.act(state(0), rng)];
  EXPECT_LT(testing::chi_square_uniform(counts), testing::chi_square_quantile(3));
  EXPECT_EQ(f.act(state(1), rng), 2u);
  EXPECT_THROW(RandomAgent(0), InputError);
}

}  // namespace
}  // namespace popdp::agent
