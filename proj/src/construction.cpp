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

#include "construction.hpp"

#include <bit>
#include <string>
#include <unordered_map>
#include <utility>

#include "error.hpp"

namespace kstree {

namespace {

void require_stage(const TreeHypergraph& hg, Stage expected,
                   const char* operation) {
  if (hg.stage != expected) {
    throw Error(ErrorCode::PipelineOrder,
                std::string(operation) + " expects a " +
                    stage_name(expected) + "-stage hypergraph, got " +
                    stage_name(hg.stage));
  }
}

}  // namespace

StageParams make_params(std::uint32_t k) {
  if (k < 2) {
    throw Error(ErrorCode::UnsupportedK,
                "k must be at least 2 (got " + std::to_string(k) + ")");
  }
  if (!std::has_single_bit(k)) {
    throw Error(ErrorCode::UnsupportedK,
                "k must be a power of 2 (got " + std::to_string(k) + ")");
  }
  StageParams p;
  p.k = k;
  p.log_k = static_cast<std::uint32_t>(std::countr_zero(k));
  p.log_d = k - p.log_k;
  p.d = std::uint64_t{1} << p.log_d;
  p.ll = static_cast<std::uint32_t>(std::bit_width(p.log_d) - 1);
  if (p.log_d + 1 + p.ll != p.k) {
    // Holds for every power of 2 >= 2; checked so uniformity can never
    // silently break.
    throw Error(ErrorCode::UnsupportedK,
                "uniformity closure failed for k = " + std::to_string(k) +
                    ": log2(d) + 1 + floor(log2 log2 d) = " +
                    std::to_string(p.log_d + 1 + p.ll) + " != k");
  }
  return p;
}

TreeHypergraph build_base(const StageParams& p) {
  TreeHypergraph hg;
  hg.stage = Stage::Base;
  hg.tree = LayeredTree::complete(p.log_d + 1);
  // One edge from every vertex v to each of its leaf descendants, with
  // multiplicity 2^level(v). In the heap layout the leaf descendants of v
  // form a contiguous id range.
  const std::size_t node_count = hg.tree.node_count();
  hg.edges.reserve((p.log_d + 1) * p.d);
  for (NodeId v = 0; v < node_count; ++v) {
    const std::uint32_t lv = hg.tree.level(v);
    NodeId lo = v;
    NodeId hi = v;
    for (std::uint32_t l = lv; l < p.log_d; ++l) {
      lo = hg.tree.node(lo).left;
      hi = hg.tree.node(hi).right;
    }
    const std::uint32_t mult = std::uint32_t{1} << lv;
    for (NodeId w = lo; w <= hi; ++w) {
      hg.edges.push_back(PathEdge{v, w, mult, static_cast<std::int32_t>(lv)});
    }
  }
  return hg;
}

TreeHypergraph split_leaves(TreeHypergraph hg, const StageParams& p) {
  require_stage(hg, Stage::Base, "split_leaves");
  // Per leaf, the class-i bottom edge index (class = level of the edge top).
  std::unordered_map<NodeId, std::vector<std::uint32_t>> by_leaf;
  for (std::uint32_t i = 0; i < hg.edges.size(); ++i) {
    const PathEdge& e = hg.edges[i];
    auto& slots = by_leaf[e.bottom];
    if (slots.empty()) slots.resize(p.log_d + 1, 0);
    slots[static_cast<std::uint32_t>(e.size_class)] = i;
  }
  const std::uint32_t augmented_classes = std::uint32_t{1} << p.ll;
  for (NodeId u : hg.tree.leaves()) {
    const std::vector<NodeId> graft_leaves =
        hg.tree.attach_complete_subtree(u, p.ll);
    const auto& slots = by_leaf.at(u);
    // Classes i >= 2^ll keep their bottom at u and stop being bottom edges
    // once u turns internal (for ll >= 1).
    for (std::uint32_t i = 0; i < augmented_classes; ++i) {
      hg.edges[slots[i]].bottom = graft_leaves[i];
    }
  }
  hg.stage = Stage::Split;
  return hg;
}

TreeHypergraph equalize_depths(TreeHypergraph hg, const StageParams& p) {
  require_stage(hg, Stage::Split, "equalize_depths");
  const std::uint32_t augmented_classes = std::uint32_t{1} << p.ll;
  std::vector<PathEdge> out;
  out.reserve(hg.edges.size() + hg.tree.leaf_count());
  for (const PathEdge& e : hg.edges) {
    const std::uint32_t cls = static_cast<std::uint32_t>(e.size_class);
    if (cls >= augmented_classes) {
      out.push_back(e);
      continue;
    }
    // The class-i edge has multiplicity 2^i; a height-i graft below its
    // bottom leaf turns the copies into distinct unit edges, one per graft
    // branch, each of size log2(d)+1-i+ll+i = k.
    const std::vector<NodeId> graft_leaves =
        hg.tree.attach_complete_subtree(e.bottom, cls);
    for (NodeId leaf : graft_leaves) {
      out.push_back(PathEdge{e.top, leaf, 1, e.size_class});
    }
  }
  hg.edges = std::move(out);
  hg.stage = Stage::Equalized;
  return hg;
}

TreeHypergraph extract_kstree(TreeHypergraph hg, const StageParams& p) {
  require_stage(hg, Stage::Equalized, "extract_kstree");
  std::vector<PathEdge> kept;
  kept.reserve(hg.tree.leaf_count());
  for (const PathEdge& e : hg.edges) {
    if (hg.edge_size(e) != p.k) continue;
    if (e.multiplicity != 1) {
      throw Error(ErrorCode::ConstructionBug,
                  "size-k edge with multiplicity " +
                      std::to_string(e.multiplicity) + " at extraction");
    }
    kept.push_back(e);
  }
  hg.edges = std::move(kept);
  hg.stage = Stage::Final;
  // Every full branch must have kept exactly one bottom edge.
  const BottomIndex index(hg);
  BranchCursor cur(hg.tree);
  while (cur.next()) {
    if (index.edges_at(cur.leaf()).size() != 1) {
      throw Error(ErrorCode::ConstructionBug,
                  "branch at leaf " + std::to_string(cur.leaf()) + " has " +
                      std::to_string(index.edges_at(cur.leaf()).size()) +
                      " size-k bottom edges after extraction");
    }
  }
  return hg;
}

TreeHypergraph mirror_join(const TreeHypergraph& g, const StageParams& p) {
  require_stage(g, Stage::Final, "mirror_join");
  (void)p;
  const std::size_t n = g.tree.node_count();
  // Fresh root at id 0; left copy occupies ids 1..n, right copy n+1..2n.
  // The copies are deep: their vertices carry distinct literals later.
  std::vector<TreeNode> nodes(2 * n + 1);
  nodes[0].parent = kNoNode;
  nodes[0].level = 0;
  nodes[0].left = 1;
  nodes[0].right = static_cast<NodeId>(n + 1);
  for (std::uint32_t side = 0; side < 2; ++side) {
    const NodeId offset = static_cast<NodeId>(1 + side * n);
    for (NodeId id = 0; id < n; ++id) {
      const TreeNode& src = g.tree.node(id);
      TreeNode& dst = nodes[offset + id];
      dst.level = src.level + 1;
      dst.parent = src.parent == kNoNode ? 0 : offset + src.parent;
      dst.left = src.left == kNoNode ? kNoNode : offset + src.left;
      dst.right = src.right == kNoNode ? kNoNode : offset + src.right;
    }
  }
  TreeHypergraph joined;
  joined.stage = Stage::Joined;
  joined.tree = LayeredTree::from_nodes(std::move(nodes));
  joined.edges.reserve(2 * g.edges.size());
  for (std::uint32_t side = 0; side < 2; ++side) {
    const NodeId offset = static_cast<NodeId>(1 + side * n);
    for (const PathEdge& e : g.edges) {
      joined.edges.push_back(
          PathEdge{offset + e.top, offset + e.bottom, e.multiplicity,
                   e.size_class});
    }
  }
  return joined;
}

TreeHypergraph build_stage(const StageParams& p, Stage target) {
  TreeHypergraph hg = build_base(p);
  if (target == Stage::Base) return hg;
  hg = split_leaves(std::move(hg), p);
  if (target == Stage::Split) return hg;
  hg = equalize_depths(std::move(hg), p);
  if (target == Stage::Equalized) return hg;
  hg = extract_kstree(std::move(hg), p);
  if (target == Stage::Final) return hg;
  return mirror_join(hg, p);
}

}  // namespace kstree
