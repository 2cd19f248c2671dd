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

#include "popdp/oracle/finite_mdp.hpp"
#include "popdp/oracle/induced.hpp"

namespace popdp::oracle {

struct SimulationLemmaResult {
  double lhs = 0.0;  // || Q^pi - Q~^pi ||_inf
  double rhs = 0.0;  // discount / (1 - discount) * || (P - P~) V^pi ||_inf
  bool holds = false;
};

inline double simulation_lemma_rhs(const FiniteMdp& mdp, const Matrix& privatized_transition,
                                   const Vector& v) {
  const double g = mdp.discount;
  return g / (1.0 - g) * ((mdp.transition - privatized_transition) * v).cwiseAbs().maxCoeff();
}

// Compares exact policy values of `target` in the true and induced models.
inline SimulationLemmaResult check_simulation_lemma(const FiniteMdp& mdp, const InducedModel& induced,
                                                    const Policy& target, double slack = 1e-9) {
  const QTable q = evaluate_policy(mdp, target);
  const QTable q_tilde = evaluate_policy(induced.mdp, target);
  SimulationLemmaResult out;
  out.lhs = (q - q_tilde).cwiseAbs().maxCoeff();
  out.rhs = simulation_lemma_rhs(mdp, induced.transition, state_values(q, target));
  out.holds = out.lhs <= out.rhs + slack * (1.0 + out.rhs);
  return out;
}

}  // namespace popdp::oracle
