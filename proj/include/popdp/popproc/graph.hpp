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
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "popdp/error.hpp"

namespace popdp::popproc {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Static undirected contact graph in compressed adjacency form.
//
// Construction rejects self-loops, duplicate edges and out-of-range
// endpoints; use cli::load_graph to clean raw edge lists first.
class ContactGraph {
 public:
  ContactGraph() = default;

  ContactGraph(std::size_t node_count, std::vector<Edge> edges)
      : node_count_(node_count), edges_(std::move(edges)) {
    if (node_count_ == 0) throw InputError("graph needs at least one node");
    for (auto& [u, v] : edges_) {
      if (u >= node_count_ || v >= node_count_)
        throw InputError("edge endpoint out of range: " + std::to_string(u) +
                         "-" + std::to_string(v));
      if (u == v) throw InputError("self-loop on node " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::vector<Edge> sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("duplicate edge in contact graph");

    degrees_.assign(node_count_, 0);
    for (auto [u, v] : edges_) {
      ++degrees_[u];
      ++degrees_[v];
    }
    offsets_.assign(node_count_ + 1, 0);
    for (std::size_t i = 0; i < node_count_; ++i)
      offsets_[i + 1] = offsets_[i] + degrees_[i];
    neighbors_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges_) {
      neighbors_[fill[u]++] = v;
      neighbors_[fill[v]++] = u;
    }
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  std::size_t degree(NodeId i) const { return degrees_.at(i); }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  // Node ids ordered by decreasing degree, ties by increasing id.
  std::vector<NodeId> degree_ranking() const {
    std::vector<NodeId> order(node_count_);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return degrees_[a] > degrees_[b];
    });
    return order;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degrees_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

}  // namespace popdp::popproc
