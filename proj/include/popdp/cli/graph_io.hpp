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

// Whitespace-separated edge lists in the SNAP layout.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/popproc/graph.hpp"

namespace popdp::cli {

struct LoadedGraph {
  std::shared_ptr<const popproc::ContactGraph> graph;
  std::vector<std::int64_t> original_ids;  // compact id -> id in the file
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

// One undirected edge per line. Lines starting with '#' and blank lines are
// skipped. Node ids are renumbered 0.. in order of first appearance.
inline LoadedGraph parse_edge_list(std::istream& in) {
  LoadedGraph out;
  std::unordered_map<std::int64_t, popproc::NodeId> compact;
  std::unordered_set<std::uint64_t> seen;
  std::vector<popproc::Edge> edges;
  auto id_of = [&](std::int64_t raw) {
    auto [it, fresh] = compact.emplace(raw, static_cast<popproc::NodeId>(out.original_ids.size()));
    if (fresh) out.original_ids.push_back(raw);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;

    std::int64_t ends[2];
    std::size_t pos = first;
    for (int k = 0; k < 2; ++k) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string::npos) throw ParseError("expected two node ids", line_no);
      const char* b = line.data() + pos;
      const char* e = line.data() + line.size();
      const auto [p, ec] = std::from_chars(b, e, ends[k]);
      if (ec != std::errc() || (p != e && *p != ' ' && *p != '\t'))
        throw ParseError("malformed node id", line_no);
      pos = static_cast<std::size_t>(p - line.data());
    }
    if (line.find_first_not_of(" \t", pos) != std::string::npos)
      throw ParseError("unexpected trailing field", line_no);

    const popproc::NodeId u = id_of(ends[0]);
    const popproc::NodeId v = id_of(ends[1]);
    if (u == v) {
      ++out.self_loops_dropped;
      continue;
    }
    const std::uint64_t lo = std::min(u, v), hi = std::max(u, v);
    if (!seen.insert(lo << 32 | hi).second) {
      ++out.duplicates_dropped;
      continue;
    }
    edges.emplace_back(u, v);
  }
  if (in.bad()) throw InputError("error reading edge list");
  out.graph = std::make_shared<const popproc::ContactGraph>(out.original_ids.size(), std::move(edges));
  return out;
}

inline LoadedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file " + path);
  return parse_edge_list(in);
}

}  // namespace popdp::cli
