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

#include "popdp/oracle/induced.hpp"

#include <gtest/gtest.h>

#include "popdp/oracle/fixtures.hpp"
#include "popdp/oracle/trajectory.hpp"

namespace popdp::oracle {
namespace {

FiniteMdp two_state_mdp() {
  FiniteMdp mdp;
  mdp.states = enumerate_states(1, 2);
  mdp.action_count = 2;
  mdp.transition = Matrix(4, 2);
  mdp.transition << 0.7, 0.3,  //
      0.2, 0.8,                //
      0.6, 0.4,                //
      0.1, 0.9;
  mdp.reward = Matrix(2, 2);
  mdp.reward << 0.0, -0.5, -1.0, -0.2;
  mdp.discount = 0.9;
  return mdp;
}

Matrix two_state_mechanism() {
  Matrix pm(2, 2);
  pm << 0.75, 0.25, 0.35, 0.65;
  return pm;
}

Policy skewed_policy() {
  Policy pi(2, 2);
  pi << 0.3, 0.7, 0.6, 0.4;
  return pi;
}

TEST(Induced, SingleState) {
  FiniteMdp mdp;
  mdp.states = {StateHistogram({1}, 1)};
  mdp.action_count = 2;
  mdp.transition = Matrix::Ones(2, 1);
  mdp.reward = Matrix::Zero(1, 2);
  const auto model = induced_transition(mdp, uniform_policy(1, 2), MechanismMatrix::identity(mdp.states));
  EXPECT_EQ(model.transition, Matrix::Ones(2, 1));
}

TEST(Induced, IdentityMechanismReproducesTransition) {
  Rng rng(1);
  for (int i = 0; i < 5; ++i) {
    const auto mdp = random_mdp(3, 2, 2, 0.9, rng);
    const auto model = induced_transition(mdp, uniform_policy(mdp.state_count(), 2),
                                          MechanismMatrix::identity(mdp.states));
    EXPECT_EQ(model.transition, mdp.transition);
  }
}

TEST(Induced, HandComputedPosterior) {
  const auto mdp = two_state_mdp();
  const auto model = induced_transition(mdp, skewed_policy(),
                                        MechanismMatrix::exact(mdp.states, two_state_mechanism()));
  // Independent construction of the joint stationary law and Bayes posteriors.
  const Matrix pm = two_state_mechanism();
  const Policy pi = skewed_policy();
  Matrix joint = Matrix::Zero(4, 4);
  for (int s = 0; s < 2; ++s)
    for (int st = 0; st < 2; ++st)
      for (int a = 0; a < 2; ++a)
        for (int s2 = 0; s2 < 2; ++s2)
          for (int st2 = 0; st2 < 2; ++st2)
            joint(s * 2 + st, s2 * 2 + st2) += pi(st, a) * mdp.transition(s * 2 + a, s2) * pm(s2, st2);
  Vector mu = Vector::Constant(4, 0.25);
  for (int i = 0; i < 10000; ++i) mu = joint.transpose() * mu;
  EXPECT_LE((model.joint_stationary - mu).cwiseAbs().maxCoeff(), 1e-12);
  for (int a = 0; a < 2; ++a) {
    Vector nu(2);
    for (int s = 0; s < 2; ++s) nu(s) = mu(s * 2 + 0) * pi(0, a) + mu(s * 2 + 1) * pi(1, a);
    nu /= nu.sum();
    for (int st = 0; st < 2; ++st) {
      Vector post(2);
      for (int s = 0; s < 2; ++s) post(s) = pm(s, st) * nu(s);
      post /= post.sum();
      for (int s2 = 0; s2 < 2; ++s2) {
        double expect = 0;
        for (int s = 0; s < 2; ++s)
          for (int x = 0; x < 2; ++x) expect += post(s) * mdp.transition(s * 2 + a, x) * pm(x, s2);
        EXPECT_NEAR(model.transition(st * 2 + a, s2), expect, 1e-12);
      }
    }
  }
  for (Eigen::Index r = 0; r < model.transition.rows(); ++r)
    EXPECT_NEAR(model.transition.row(r).sum(), 1.0, 1e-9);
}

TEST(Induced, MatchesLongTrajectory) {
  // With a behavior policy that ignores the privatized state, the action
  // carries no information about the hidden state and the model is exact.
  const auto mdp = two_state_mdp();
  const Matrix pm = two_state_mechanism();
  const Policy uniform = uniform_policy(2, 2);
  const auto model = induced_transition(mdp, uniform, MechanismMatrix::exact(mdp.states, pm));
  const StateIndex index(mdp.states);
  auto sampler = [&](const StateHistogram& s, Rng& rng) {
    return uniform01(rng) < pm(static_cast<Eigen::Index>(index(s)), 0) ? mdp.states[0] : mdp.states[1];
  };
  Rng rng(7);
  const auto est = trajectory_transition_estimate(mdp, uniform, sampler, 10000000, 100, rng);
  const auto cmp = compare_within(model.transition, Matrix::Zero(4, 2), est.frequency, est.standard_error);
  EXPECT_TRUE(cmp.pass) << "max z " << cmp.max_z;
}

TEST(Induced, StateDependentPolicyTrajectoryFollowsExactConditional) {
  // When the action depends on the privatized state, long-run frequencies
  // follow the conditional law mu(s | s~) of the joint chain.
  const auto mdp = two_state_mdp();
  const Matrix pm = two_state_mechanism();
  const auto model = induced_transition(mdp, skewed_policy(), MechanismMatrix::exact(mdp.states, pm));
  const Vector& mu = model.joint_stationary;
  Matrix exact = Matrix::Zero(4, 2);
  for (int st = 0; st < 2; ++st) {
    const double norm = mu(0 * 2 + st) + mu(1 * 2 + st);
    for (int a = 0; a < 2; ++a)
      for (int s = 0; s < 2; ++s)
        for (int x = 0; x < 2; ++x)
          for (int s2 = 0; s2 < 2; ++s2)
            exact(st * 2 + a, s2) += mu(s * 2 + st) / norm * mdp.transition(s * 2 + a, x) * pm(x, s2);
  }
  const StateIndex index(mdp.states);
  auto sampler = [&](const StateHistogram& s, Rng& rng) {
    return uniform01(rng) < pm(static_cast<Eigen::Index>(index(s)), 0) ? mdp.states[0] : mdp.states[1];
  };
  Rng rng(7);
  const auto est = trajectory_transition_estimate(mdp, skewed_policy(), sampler, 10000000, 100, rng);
  const auto cmp = compare_within(exact, Matrix::Zero(4, 2), est.frequency, est.standard_error);
  EXPECT_TRUE(cmp.pass) << "max z " << cmp.max_z;
}

TEST(Induced, RejectsZeroSupportPolicy) {
  const auto mdp = two_state_mdp();
  Policy pi(2, 2);
  pi << 1.0, 0.0, 0.5, 0.5;
  EXPECT_THROW(induced_transition(mdp, pi, MechanismMatrix::identity(mdp.states)), AssumptionError);
}

TEST(Induced, RejectsReducibleJointChain) {
  auto mdp = two_state_mdp();
  mdp.transition << 1, 0, 1, 0, 0, 1, 0, 1;
  EXPECT_THROW(induced_transition(mdp, uniform_policy(2, 2), MechanismMatrix::identity(mdp.states)),
               ErgodicityError);
}

TEST(Induced, EstimateFromReplicates) {
  BirthDeathParams p;
  p.population = 3;
  const auto mdp = birth_death_mdp(p);
  const auto reps = estimate_replicates(mdp.states, 10000, 4, 3, projected_laplace_sampler(1.0, 3));
  const auto est = estimate_induced(mdp, uniform_policy(mdp.state_count(), 2), reps);
  EXPECT_EQ(est.replicates.size(), 4u);
  EXPECT_GT(est.standard_error.maxCoeff(), 0.0);
  for (Eigen::Index r = 0; r < est.model.transition.rows(); ++r)
    EXPECT_NEAR(est.model.transition.row(r).sum(), 1.0, 1e-9);
}

}  // namespace
}  // namespace popdp::oracle
