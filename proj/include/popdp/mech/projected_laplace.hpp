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

// The projected Laplace mechanism: Laplace noise on every histogram bin,
// Euclidean projection onto the simplex, then snapping to the 1/N grid.
// Projection and snapping are post-processing, so the output is
// epsilon_step-differentially private whenever the noise is.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/histogram.hpp"
#include "popdp/mech/grid.hpp"
#include "popdp/mech/laplace.hpp"
#include "popdp/mech/simplex.hpp"
#include "popdp/random.hpp"

namespace popdp::mech {

// Per-step privacy parameters for histograms over N sampled individuals.
// Replacing one individual moves two bins by 1/N each, so the L1
// sensitivity is 2/N and the Laplace scale is 2 / (N * epsilon_step).
class MechanismParams {
 public:
  MechanismParams(double epsilon_step, std::int64_t population)
      : epsilon_step_(epsilon_step), population_(population) {
    if (!(epsilon_step > 0.0) || !std::isfinite(epsilon_step))
      throw InputError("per-step epsilon must be positive and finite");
    if (population < 1) throw InputError("population must be >= 1");
  }

  double epsilon_step() const noexcept { return epsilon_step_; }
  std::int64_t population() const noexcept { return population_; }
  double sensitivity() const noexcept { return 2.0 / static_cast<double>(population_); }
  double scale() const noexcept {
    return 2.0 / (static_cast<double>(population_) * epsilon_step_);
  }

 private:
  double epsilon_step_;
  std::int64_t population_;
};

inline StateHistogram projected_laplace(const StateHistogram& s,
                                        const MechanismParams& params, Rng& rng) {
  if (s.population() != params.population())
    throw InputError("histogram population does not match mechanism parameters");
  const double scale = params.scale();
  std::vector<double> noisy = s.proportions();
  for (double& x : noisy) x += laplace_sample(scale, rng);
  const auto projected = simplex_project(noisy);
  return grid_snap(projected, s.population());
}

}  // namespace popdp::mech
