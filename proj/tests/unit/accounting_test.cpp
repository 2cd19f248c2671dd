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

#include "popdp/accounting.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace popdp::accounting {
namespace {

TEST(Accounting, PerStepBudgetExample) {
  EXPECT_NEAR(per_step_budget(10, 1e-5, 5e5), 1.4736e-3, 1e-7);
  EXPECT_NEAR(std::sqrt(2 * 5e5 * std::log(1e5)), 3393.07, 0.01);
  EXPECT_NEAR(per_step_budget(2, std::exp(-0.5), 1), 1.0, 1e-12);
}

TEST(Accounting, CompositionExample) {
  const double step = per_step_budget(10, 1e-5, 5e5);
  EXPECT_NEAR(advanced_composition(step, 5e5, 1e-5), 6.0866, 1e-3);
  // the first term is exactly half the target
  EXPECT_NEAR(std::sqrt(2 * 5e5 * std::log(1e5)) * step, 5.0, 1e-12);
  EXPECT_NEAR(advanced_composition(1.4736e-3, 5e5, 1e-5), 6.0866, 1e-3);
  EXPECT_EQ(advanced_composition(0.0, 5e5, 1e-5), 0.0);
}

TEST(Accounting, SingleStepAgainstLongDouble) {
  for (double delta : {1e-1, 1e-3, 1e-5, 0.5})
    for (double step : {1e-4, 0.01, 0.3, 1.0, 2.5}) {
      const long double d = delta, e = step;
      const long double expect = std::sqrt(2.0L * std::log(1.0L / d)) * e + e * std::expm1(e);
      EXPECT_NEAR(advanced_composition(step, 1, delta), static_cast<double>(expect),
                  1e-12 * static_cast<double>(expect));
    }
}

TEST(Accounting, Monotone) {
  double prev = 0;
  for (double step = 1e-4; step < 1; step *= 1.5) {
    const double e = advanced_composition(step, 1000, 1e-5);
    EXPECT_GT(e, prev);
    prev = e;
  }
  EXPECT_LT(advanced_composition(0.01, 100, 1e-5), advanced_composition(0.01, 101, 1e-5));
  EXPECT_DOUBLE_EQ(per_step_budget(5, 1e-5, 1000) * 2, per_step_budget(10, 1e-5, 1000));
}

TEST(Accounting, Convexity) {
  const double h = 1e-3;
  for (double x = 0.01; x < 2; x += 0.05) {
    const double second = advanced_composition(x + h, 500, 1e-3) -
                          2 * advanced_composition(x, 500, 1e-3) +
                          advanced_composition(x - h, 500, 1e-3);
    EXPECT_GE(second, -1e-12);
  }
}

TEST(Accounting, AchievedBelowTargetForSmallDelta) {
  for (double delta : {1e-2, 1e-3, 1e-5, 1e-8})
    for (auto [target, achieved] : achieved_curve(delta, 5e5, {0.1, 0.5, 1, 2, 5, 10}))
      EXPECT_LE(achieved, target) << target << " at delta " << delta;
}

TEST(Accounting, CurveOrdering) {
  const auto loose = achieved_curve(1e-2, 5e5, {1, 5, 10});
  const auto tight = achieved_curve(1e-5, 5e5, {1, 5, 10});
  for (std::size_t i = 0; i < loose.size(); ++i) EXPECT_GT(loose[i].achieved, tight[i].achieved);
  const auto curve = achieved_curve(1e-5, 5e5, {10});
  EXPECT_NEAR(curve[0].achieved, 6.0866, 1e-3);
  EXPECT_LT(achieved_curve(1e-5, 5e5, {1e-9})[0].achieved, 1e-9);
}

TEST(Accounting, Budget) {
  const auto b = PrivacyBudget::make(10, 1e-5, 500000);
  EXPECT_NEAR(b.epsilon_step, 1.4736e-3, 1e-7);
  EXPECT_NEAR(b.achieved(), 6.0866, 1e-3);
}

TEST(Accounting, RejectsBadArguments) {
  EXPECT_THROW(per_step_budget(0, 1e-5, 10), InputError);
  EXPECT_THROW(per_step_budget(1, 0, 10), InputError);
  EXPECT_THROW(per_step_budget(1, 1, 10), InputError);
  EXPECT_THROW(per_step_budget(1, 1e-5, 0), InputError);
  EXPECT_THROW(advanced_composition(1, 10, 1.5), InputError);
  EXPECT_THROW(advanced_composition(-1, 10, 0.1), InputError);
}

}  // namespace
}  // namespace popdp::accounting
