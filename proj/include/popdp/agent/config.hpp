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

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "popdp/error.hpp"

namespace popdp::agent {

// DQN-style agent hyperparameters. Defaults follow the large-graph runs:
// B = 128, D = 800, discount 0.999, eps_start 0.9999, kappa 1e-5.
struct AgentConfig {
  std::size_t batch_size = 128;
  std::uint64_t target_period = 800;
  double discount = 0.999;
  double eps_start = 0.9999;
  double kappa = 1e-5;
  double eps_floor = 0.03;
  std::size_t buffer_capacity = 100000;
  double learning_rate = 0.01;
  double rms_decay = 0.99;
  double rms_floor = 1e-8;
  std::size_t hidden_width = 64;
  std::size_t layer_count = 6;  // fully connected layers, including the output layer

  void validate() const {
    if (batch_size < 1) throw InputError("batch size must be >= 1");
    if (target_period < 1) throw InputError("target period must be >= 1");
    if (!(discount >= 0.0 && discount < 1.0)) throw InputError("discount must lie in [0, 1)");
    if (!(eps_floor >= 0.0 && eps_floor < 1.0)) throw InputError("eps_floor must lie in [0, 1)");
    if (!(eps_start > eps_floor && eps_start <= 1.0))
      throw InputError("eps_start must lie in (eps_floor, 1]");
    if (!(kappa > 0.0)) throw InputError("kappa must be positive");
    if (buffer_capacity < 1) throw InputError("buffer capacity must be >= 1");
    if (!(learning_rate > 0.0)) throw InputError("learning rate must be positive");
    if (!(rms_decay >= 0.0 && rms_decay < 1.0)) throw InputError("rms_decay must lie in [0, 1)");
    if (!(rms_floor > 0.0)) throw InputError("rms_floor must be positive");
    if (hidden_width < 1) throw InputError("hidden width must be >= 1");
    if (layer_count < 1) throw InputError("layer count must be >= 1");
  }
};

// eps_floor + (eps_start - eps_floor) * exp(-kappa * t)
inline double decay_exploration(std::uint64_t t, const AgentConfig& cfg) {
  return cfg.eps_floor +
         (cfg.eps_start - cfg.eps_floor) * std::exp(-cfg.kappa * static_cast<double>(t));
}

}  // namespace popdp::agent
