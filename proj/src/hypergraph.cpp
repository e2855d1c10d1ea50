// Copyright 2026 The kstree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hypergraph.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace kstree {

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::Base:      return "base";
    case Stage::Split:     return "split";
    case Stage::Equalized: return "equalized";
    case Stage::Final:     return "final";
    case Stage::Joined:    return "joined";
  }
  return "unknown";
}

std::uint32_t TreeHypergraph::edge_size(const PathEdge& e) const {
  return tree.level(e.bottom) - tree.level(e.top) + 1;
}

std::vector<NodeId> TreeHypergraph::edge_vertices(const PathEdge& e) const {
  if (e.top >= tree.node_count() || e.bottom >= tree.node_count() ||
      tree.level(e.top) > tree.level(e.bottom)) {
    throw Error(ErrorCode::CorruptEdge,
                "edge (" + std::to_string(e.top) + ", " +
                    std::to_string(e.bottom) + ") is not a descending path");
  }
  std::vector<NodeId> path;
  path.reserve(edge_size(e));
  NodeId cur = e.bottom;
  while (true) {
    path.push_back(cur);
    if (cur == e.top) break;
    if (tree.node(cur).parent == kNoNode) {
      throw Error(ErrorCode::CorruptEdge,
                  "edge top " + std::to_string(e.top) +
                      " is not an ancestor of bottom " +
                      std::to_string(e.bottom));
    }
    cur = tree.node(cur).parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool TreeHypergraph::edge_contains(const PathEdge& e, NodeId v) const {
  const std::uint32_t lv = tree.level(v);
  if (lv < tree.level(e.top) || lv > tree.level(e.bottom)) return false;
  return tree.ancestor_at(e.bottom, lv) == v;
}

std::uint64_t TreeHypergraph::degree(NodeId v) const {
  std::uint64_t sum = 0;
  for (const PathEdge& e : edges) {
    if (edge_contains(e, v)) sum += e.multiplicity;
  }
  return sum;
}

std::vector<std::uint64_t> TreeHypergraph::degree_all() const {
  std::vector<std::uint64_t> deg(tree.node_count(), 0);
  for (const PathEdge& e : edges) {
    NodeId cur = e.bottom;
    while (true) {
      deg[cur] += e.multiplicity;
      if (cur == e.top) break;
      cur = tree.node(cur).parent;
    }
  }
  return deg;
}

std::pair<std::uint64_t, NodeId> TreeHypergraph::max_degree() const {
  const std::vector<std::uint64_t> deg = degree_all();
  std::uint64_t best = 0;
  NodeId where = tree.root();
  for (NodeId v = 0; v < deg.size(); ++v) {
    if (deg[v] > best) {
      best = deg[v];
      where = v;
    }
  }
  return {best, where};
}

std::vector<PathEdge> TreeHypergraph::bottom_edges_at(NodeId leaf) const {
  if (leaf >= tree.node_count() || !tree.is_leaf(leaf)) {
    throw Error(ErrorCode::InvalidArgument,
                "node " + std::to_string(leaf) + " is not a leaf");
  }
  std::vector<PathEdge> out;
  for (const PathEdge& e : edges) {
    if (e.bottom == leaf) out.push_back(e);
  }
  return out;
}

std::uint64_t TreeHypergraph::total_edge_instances() const {
  std::uint64_t sum = 0;
  for (const PathEdge& e : edges) sum += e.multiplicity;
  return sum;
}

BottomIndex::BottomIndex(const TreeHypergraph& hg)
    : start_(hg.tree.node_count() + 1, 0) {
  for (const PathEdge& e : hg.edges) ++start_[e.bottom + 1];
  for (std::size_t v = 1; v < start_.size(); ++v) start_[v] += start_[v - 1];
  order_.resize(hg.edges.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::uint32_t i = 0; i < hg.edges.size(); ++i) {
    order_[fill[hg.edges[i].bottom]++] = i;
  }
}

}  // namespace kstree
