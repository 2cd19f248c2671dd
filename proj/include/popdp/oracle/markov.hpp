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

// Structure and stationary distributions of small dense Markov chains.

#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/oracle/finite_mdp.hpp"

namespace popdp::oracle {

using Adjacency = std::vector<std::vector<std::size_t>>;

inline Adjacency support_graph(const Matrix& p) {
  Adjacency adj(static_cast<std::size_t>(p.rows()));
  for (Eigen::Index r = 0; r < p.rows(); ++r)
    for (Eigen::Index c = 0; c < p.cols(); ++c)
      if (p(r, c) > 0.0) adj[static_cast<std::size_t>(r)].push_back(static_cast<std::size_t>(c));
  return adj;
}

// Tarjan's algorithm, iterative. Returns a component id per vertex.
inline std::vector<std::size_t> strongly_connected_components(const Adjacency& adj,
                                                              std::size_t* count = nullptr) {
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  const std::size_t n = adj.size();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)
  std::size_t next_index = 0, next_comp = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e == 0 && index[v] == kUnset) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (e < adj[v].size()) {
        const std::size_t w = adj[v][e++];
        if (index[w] == kUnset) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  if (count) *count = next_comp;
  return comp;
}

struct ChainStructure {
  std::vector<std::size_t> component;
  std::vector<std::size_t> closed_components;
  std::vector<std::size_t> recurrent_states;  // states of the first closed class
  std::size_t period = 0;                     // of the first closed class
};

inline ChainStructure analyze_chain(const Matrix& p) {
  const Adjacency adj = support_graph(p);
  ChainStructure out;
  std::size_t ncomp = 0;
  out.component = strongly_connected_components(adj, &ncomp);
  std::vector<bool> closed(ncomp, true);
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::size_t w : adj[v])
      if (out.component[w] != out.component[v]) closed[out.component[v]] = false;
  for (std::size_t c = 0; c < ncomp; ++c)
    if (closed[c]) out.closed_components.push_back(c);
  if (out.closed_components.empty()) return out;

  const std::size_t cls = out.closed_components.front();
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (out.component[v] == cls) out.recurrent_states.push_back(v);

  // Period: gcd over in-class edges of level(u) + 1 - level(v) from a BFS.
  constexpr std::int64_t kUnseen = -1;
  std::vector<std::int64_t> level(adj.size(), kUnseen);
  std::queue<std::size_t> q;
  level[out.recurrent_states.front()] = 0;
  q.push(out.recurrent_states.front());
  std::int64_t g = 0;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t w : adj[u]) {
      if (level[w] == kUnseen) {
        level[w] = level[u] + 1;
        q.push(w);
      } else {
        g = std::gcd(g, std::abs(level[u] + 1 - level[w]));
      }
    }
  }
  out.period = static_cast<std::size_t>(g);
  return out;
}

// Unique stationary distribution by power iteration. The chain must have
// exactly one closed class and that class must be aperiodic; transient
// states are allowed and receive zero mass.
inline Vector stationary_distribution(const Matrix& p, double tol = 1e-12,
                                      std::uint64_t max_iterations = 1000000) {
  if (p.rows() != p.cols() || p.rows() == 0) throw InputError("stationary_distribution: bad shape");
  check_stochastic(p, "chain");
  const ChainStructure st = analyze_chain(p);
  if (st.closed_components.size() != 1)
    throw ErgodicityError("chain has " + std::to_string(st.closed_components.size()) +
                          " closed classes");
  if (st.period != 1)
    throw ErgodicityError("recurrent class has period " + std::to_string(st.period));

  const Matrix pt = p.transpose();
  Vector mu = Vector::Constant(p.rows(), 1.0 / static_cast<double>(p.rows()));
  for (std::uint64_t it = 0; it < max_iterations; ++it) {
    Vector next = pt * mu;
    next /= next.sum();
    const double residual = (next - mu).lpNorm<1>();
    mu = std::move(next);
    if (residual <= tol) {
      for (std::size_t v = 0; v < st.component.size(); ++v)
        if (st.component[v] != st.closed_components.front()) mu(static_cast<Eigen::Index>(v)) = 0.0;
      mu /= mu.sum();
      if ((pt * mu - mu).lpNorm<1>() > 1e-10)
        throw ErgodicityError("stationary distribution failed the fixed-point check");
      return mu;
    }
  }
  throw ErgodicityError("power iteration did not converge");
}

}  // namespace popdp::oracle
