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

#include "popdp/mech/laplace.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace popdp::mech {
namespace {

TEST(Laplace, MedianAtZero) { EXPECT_EQ(laplace_from_uniform(3.0, 0.0), 0.0); }

TEST(Laplace, InverseCdfIsOdd) {
  for (double u : {0.1, 0.25, 0.4, 0.499})
    EXPECT_DOUBLE_EQ(laplace_from_uniform(2.0, u), -laplace_from_uniform(2.0, -u));
  // P(X <= x) = 1 - exp(-x/b)/2 for x >= 0
  const double x = laplace_from_uniform(1.5, 0.3);
  EXPECT_NEAR(1.0 - 0.5 * std::exp(-x / 1.5), 0.8, 1e-12);
}

TEST(Laplace, VarianceAndMedianAbsolute) {
  Rng rng(17);
  const double b = 0.7;
  const int n = 1000000;
  double sum = 0, sq = 0;
  int beyond = 0;
  for (int i = 0; i < n; ++i) {
    const double x = laplace_sample(b, rng);
    sum += x;
    sq += x * x;
    beyond += std::fabs(x) > b * std::log(2.0);
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(var / (2 * b * b), 1.0, 0.02);
  EXPECT_NEAR(beyond / double(n), 0.5, 0.01);
  EXPECT_NEAR(mean, 0.0, 5 * std::sqrt(2 * b * b / n));
}

TEST(Laplace, RejectsBadScale) {
  Rng rng(1);
  EXPECT_THROW(laplace_sample(0.0, rng), InputError);
  EXPECT_THROW(laplace_sample(-1.0, rng), InputError);
  EXPECT_THROW(laplace_sample(INFINITY, rng), InputError);
}

}  // namespace
}  // namespace popdp::mech
