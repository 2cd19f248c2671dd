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

#include <cstdint>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/popproc/graph.hpp"
#include "popdp/random.hpp"

namespace popdp::cli {

// Preferential attachment: a clique on the first m + 1 nodes, then each new
// node links to m distinct existing nodes drawn with probability
// proportional to degree.
inline popproc::ContactGraph preferential_attachment(std::size_t nodes, std::size_t edges_per_node, Rng& rng) {
  const std::size_t m = edges_per_node;
  if (m < 1 || nodes <= m) throw InputError("preferential_attachment: need 1 <= m < nodes");
  std::vector<popproc::Edge> edges;
  std::vector<popproc::NodeId> endpoints;  // each node once per incident edge
  edges.reserve(nodes * m);
  endpoints.reserve(2 * nodes * m);
  for (popproc::NodeId u = 0; u <= m; ++u)
    for (popproc::NodeId v = u + 1; v <= m; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  std::vector<popproc::NodeId> targets;
  for (auto v = static_cast<popproc::NodeId>(m + 1); v < nodes; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const popproc::NodeId t = endpoints[uniform_index(rng, endpoints.size())];
      bool dup = false;
      for (popproc::NodeId x : targets) dup = dup || x == t;
      if (!dup) targets.push_back(t);
    }
    for (popproc::NodeId t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return popproc::ContactGraph(nodes, std::move(edges));
}

}  // namespace popdp::cli
