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

#include <cstddef>
#include <optional>

#include "popdp/histogram.hpp"

namespace popdp::dprl {

// One learning sample (s~_t, a~_t, r~_t, s~_{t+1}) as handed to the agent.
// `tainted` is set when any field was derived from an un-privatized state;
// a correct loop never delivers a tainted transition.
struct PrivatizedTransition {
  StateHistogram state;
  std::size_t action = 0;
  double reward = 0.0;
  StateHistogram next_state;
  bool tainted = false;
};

// What an agent reports back after consuming one transition.
struct LearnStats {
  std::optional<double> loss;  // set only when an optimizer step ran
};

}  // namespace popdp::dprl
