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

#ifndef KSTREE_HYPERGRAPH_HPP
#define KSTREE_HYPERGRAPH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tree.hpp"

namespace kstree {

/// Pipeline stage a hypergraph belongs to. Stages only ever advance.
enum class Stage { Base, Split, Equalized, Final, Joined };

const char* stage_name(Stage stage);

/// One hyperedge: the descending tree path from `top` to `bottom`, carried
/// with a multiplicity. Copies count separately toward vertex degrees.
/// `size_class` tags the construction class the edge originated from
/// (kNoSizeClass when untagged). The vertex set is never materialized here;
/// (top, bottom) determines it.
struct PathEdge {
  NodeId top = kNoNode;
  NodeId bottom = kNoNode;
  std::uint32_t multiplicity = 1;
  std::int32_t size_class = kNoSizeClass;

  static constexpr std::int32_t kNoSizeClass = -1;

  bool operator==(const PathEdge&) const = default;
};

/// Target shape for the finished object: k-uniform edges, every full branch
/// covered by an edge, no vertex in more than s edge instances.
struct KsTreeSpec {
  std::uint32_t k = 1;
  std::uint64_t s = 1;
};

/// A layered tree plus a multiset of path edges. Fields are public: the
/// construction stages and the mutation-style tests manipulate them directly;
/// everything else treats a finished stage as read-only.
struct TreeHypergraph {
  LayeredTree tree;
  std::vector<PathEdge> edges;
  Stage stage = Stage::Base;

  /// Number of vertices on the edge path: level(bottom) - level(top) + 1.
  std::uint32_t edge_size(const PathEdge& e) const;

  /// Vertices of the edge path, top first. Throws CorruptEdge when `top` is
  /// not an ancestor-or-self of `bottom`.
  std::vector<NodeId> edge_vertices(const PathEdge& e) const;

  /// True when v lies on the path of e.
  bool edge_contains(const PathEdge& e, NodeId v) const;

  /// Sum of multiplicities of the edges whose path contains v (single-vertex
  /// scan over all edges).
  std::uint64_t degree(NodeId v) const;

  /// Degrees of all vertices in one pass over the edge multiset.
  std::vector<std::uint64_t> degree_all() const;

  /// Maximum degree and the smallest vertex id achieving it. An empty edge
  /// set yields (0, root).
  std::pair<std::uint64_t, NodeId> max_degree() const;

  /// All edges whose bottom equals the given leaf, in edge-list order.
  /// Throws InvalidArgument for a non-leaf vertex.
  std::vector<PathEdge> bottom_edges_at(NodeId leaf) const;

  /// Total edge instances: sum of multiplicities.
  std::uint64_t total_edge_instances() const;
};

/// Edge indices grouped by bottom vertex (CSR layout); the per-vertex lists
/// preserve edge order. Built once by the verifiers, which walk many branches.
class BottomIndex {
 public:
  explicit BottomIndex(const TreeHypergraph& hg);

  std::span<const std::uint32_t> edges_at(NodeId v) const {
    return {order_.data() + start_[v], start_[v + 1] - start_[v]};
  }

  bool has_bottom(NodeId v) const { return start_[v + 1] > start_[v]; }

 private:
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> start_;
};

}  // namespace kstree

#endif  // KSTREE_HYPERGRAPH_HPP
