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

#include "popdp/oracle/markov.hpp"

#include <gtest/gtest.h>

#include "popdp/oracle/fixtures.hpp"

namespace popdp::oracle {
namespace {

TEST(Markov, TwoStateStationary) {
  Matrix p(2, 2);
  p << 0.9, 0.1, 0.4, 0.6;
  const Vector mu = stationary_distribution(p);
  EXPECT_NEAR(mu(0), 0.8, 1e-12);
  EXPECT_NEAR(mu(1), 0.2, 1e-12);
}

TEST(Markov, FixedPointOnRandomChains) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Matrix p = random_stochastic(7, 7, rng);
    const Vector mu = stationary_distribution(p);
    EXPECT_NEAR(mu.sum(), 1.0, 1e-12);
    EXPECT_LE((p.transpose() * mu - mu).lpNorm<1>(), 1e-10);
  }
}

TEST(Markov, TransientStatesGetZeroMass) {
  Matrix p(3, 3);
  p << 0.5, 0.5, 0.0,  //
      0.0, 0.3, 0.7,   //
      0.0, 0.6, 0.4;
  const Vector mu = stationary_distribution(p);
  EXPECT_EQ(mu(0), 0.0);
  EXPECT_NEAR(mu(1), 6.0 / 13.0, 1e-12);
}

TEST(Markov, RejectsReducibleAndPeriodic) {
  Matrix two_classes = Matrix::Identity(2, 2);
  EXPECT_THROW(stationary_distribution(two_classes), ErgodicityError);
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  EXPECT_THROW(stationary_distribution(flip), ErgodicityError);
  EXPECT_EQ(analyze_chain(flip).period, 2u);
  Matrix cycle3 = Matrix::Zero(3, 3);
  cycle3(0, 1) = cycle3(1, 2) = cycle3(2, 0) = 1.0;
  EXPECT_EQ(analyze_chain(cycle3).period, 3u);
  Matrix bad(2, 2);
  bad << 0.5, 0.4, 0.5, 0.5;
  EXPECT_THROW(stationary_distribution(bad), InputError);
}

TEST(Markov, StronglyConnectedComponents) {
  // 0 <-> 1 -> 2 <-> 3, 4 isolated
  Adjacency adj{{1}, {0, 2}, {3}, {2}, {}};
  std::size_t count = 0;
  const auto comp = strongly_connected_components(adj, &count);
  EXPECT_EQ(count, 3u);
  EXPECT_EQ(comp[0], comp[1]);
  EXPECT_EQ(comp[2], comp[3]);
  EXPECT_NE(comp[0], comp[2]);
  EXPECT_NE(comp[4], comp[0]);
}

TEST(Markov, LongPathDoesNotOverflowStack) {
  const Eigen::Index n = 20000;
  Adjacency adj(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i + 1 < n; ++i) adj[static_cast<std::size_t>(i)].push_back(static_cast<std::size_t>(i + 1));
  adj.back().push_back(0);
  std::size_t count = 0;
  strongly_connected_components(adj, &count);
  EXPECT_EQ(count, 1u);
}

}  // namespace
}  // namespace popdp::oracle
