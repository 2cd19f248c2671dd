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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "popdp/agent/mlp.hpp"
#include "popdp/random.hpp"

namespace popdp::testing {

using Net = agent::Mlp<double>;

// Plain-loop forward pass, independent of the Eigen one. Records the sign
// pattern of every hidden pre-activation.
inline double reference_loss(const Net& net, const Net::Matrix& x,
                             const std::vector<std::size_t>& actions,
                             const std::vector<double>& targets, std::vector<bool>* pattern) {
  const auto& layers = net.layers();
  double total = 0.0;
  if (pattern) pattern->clear();
  for (Eigen::Index b = 0; b < x.cols(); ++b) {
    std::vector<double> a(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) a[i] = x(i, b);
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto& w = layers[l].weight;
      std::vector<double> z(static_cast<std::size_t>(w.rows()));
      for (Eigen::Index r = 0; r < w.rows(); ++r) {
        double acc = layers[l].bias(r);
        for (Eigen::Index c = 0; c < w.cols(); ++c) acc += w(r, c) * a[c];
        z[r] = acc;
      }
      if (l + 1 < layers.size() && net.hidden_activation() == agent::Activation::kRelu)
        for (double& v : z) {
          if (pattern) pattern->push_back(v > 0.0);
          v = std::max(v, 0.0);
        }
      a = std::move(z);
    }
    const double r = a[actions[b]] - targets[b];
    total += 0.5 * r * r;
  }
  return total / static_cast<double>(x.cols());
}

struct GradientCheck {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // stencil crossed a ReLU kink
};

// Relative error |a - f| / max(|a|, |f|, floor) of the analytic gradient
// against central differences with step h, on a random 6-layer ReLU net.
inline GradientCheck gradient_check(std::uint64_t seed, double h = 1e-5, double floor = 1e-6) {
  Rng rng(seed);
  Net net({4, 12, 12, 12, 12, 12, 5}, agent::Activation::kRelu, rng);
  const Eigen::Index batch = 6;
  Net::Matrix x(4, batch);
  for (Eigen::Index b = 0; b < batch; ++b)
    for (Eigen::Index i = 0; i < 4; ++i) x(i, b) = uniform01(rng);
  std::vector<std::size_t> actions(batch);
  std::vector<double> targets(batch);
  for (Eigen::Index b = 0; b < batch; ++b) {
    actions[b] = uniform_index(rng, 5);
    targets[b] = -uniform01(rng) * 3.0;
  }
  Net::Gradient grad;
  net.loss_and_gradient(x, actions, targets, grad);

  GradientCheck out;
  std::vector<bool> base, plus, minus;
  reference_loss(net, x, actions, targets, &base);
  for (std::size_t i = 0; i < net.parameter_count(); ++i) {
    double& p = net.parameter(i);
    const double saved = p;
    p = saved + h;
    const double lp = reference_loss(net, x, actions, targets, &plus);
    p = saved - h;
    const double lm = reference_loss(net, x, actions, targets, &minus);
    p = saved;
    if (plus != base || minus != base) {
      ++out.skipped;
      continue;
    }
    const double fd = (lp - lm) / (2.0 * h);
    const double an = Net::gradient_entry(grad, i);
    const double rel = std::fabs(an - fd) / std::max({std::fabs(an), std::fabs(fd), floor});
    out.max_relative_error = std::max(out.max_relative_error, rel);
    ++out.checked;
  }
  return out;
}

}  // namespace popdp::testing
