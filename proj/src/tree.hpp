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

#ifndef KSTREE_TREE_HPP
#define KSTREE_TREE_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

namespace kstree {

/// Dense index of a node inside one tree arena. Ids are stable: nodes are
/// only ever appended, never removed or renumbered.
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TreeNode {
  NodeId parent = kNoNode;
  NodeId left = kNoNode;
  NodeId right = kNoNode;
  std::uint32_t level = 0;  // root is level 0
};

/// Arena-backed rooted binary tree with per-node levels. The root is always
/// node 0 and every parent id is smaller than its children's ids, so a walk
/// along parent links terminates.
class LayeredTree {
 public:
  LayeredTree() = default;

  /// Complete binary tree with `levels` levels (2^levels - 1 nodes), laid out
  /// in breadth-first order: node i has children 2i+1 and 2i+2.
  static LayeredTree complete(std::uint32_t levels);

  /// Wraps an arbitrary node vector without checking invariants. Callers that
  /// need the invariants should run validate().
  static LayeredTree from_nodes(std::vector<TreeNode> nodes);

  NodeId root() const { return 0; }
  std::size_t node_count() const { return nodes_.size(); }
  const TreeNode& node(NodeId id) const { return nodes_[id]; }
  std::uint32_t level(NodeId id) const { return nodes_[id].level; }
  bool is_leaf(NodeId id) const {
    return nodes_[id].left == kNoNode && nodes_[id].right == kNoNode;
  }

  /// True when every node has either 0 or 2 children.
  bool is_full() const;

  std::size_t leaf_count() const;

  /// Leaves in ascending id order. For trees built by the pipeline this is
  /// also the deterministic construction order.
  std::vector<NodeId> leaves() const;

  /// Ancestor of `id` at the given level (may be `id` itself).
  /// Requires target_level <= level(id).
  NodeId ancestor_at(NodeId id, std::uint32_t target_level) const;

  /// Root-to-leaf vertex path ending at `leaf`.
  std::vector<NodeId> branch_to(NodeId leaf) const;

  /// Grafts a complete binary tree of the given height with the leaf `at` as
  /// its root, appending the new nodes level by level. Returns the 2^height
  /// leaves of the graft in left-to-right order; height 0 returns {at} and
  /// adds nothing. Existing nodes keep their ids, levels and links.
  std::vector<NodeId> attach_complete_subtree(NodeId at, std::uint32_t height);

  /// Every (left_child, right_child) pair, ordered by a breadth-first
  /// traversal of the parents. The root belongs to no pair. Requires a full
  /// tree; |pairs| = (node_count - 1) / 2.
  std::vector<std::pair<NodeId, NodeId>> sibling_pairs() const;

  /// One-pass structural check: single root at id 0, mutually consistent
  /// parent/child links, child level = parent level + 1, 0 or 2 children.
  void validate() const;

  bool operator==(const LayeredTree& other) const;

 private:
  NodeId append(NodeId parent, bool as_left);

  std::vector<TreeNode> nodes_;
};

inline bool operator==(const TreeNode& a, const TreeNode& b) {
  return a.parent == b.parent && a.left == b.left && a.right == b.right &&
         a.level == b.level;
}

/// Iterates the full branches (root-to-leaf paths) of a tree, one leaf at a
/// time in ascending leaf-id order.
///
///   BranchCursor cur(tree);
///   while (cur.next()) { use(cur.path()); }
class BranchCursor {
 public:
  explicit BranchCursor(const LayeredTree& tree);

  /// Advances to the next branch; false once all branches were visited.
  bool next();

  /// Valid after a successful next(). Vertices root first, levels 0,1,2,...
  const std::vector<NodeId>& path() const { return path_; }

  /// Leaf of the current branch.
  NodeId leaf() const { return path_.back(); }

 private:
  const LayeredTree* tree_;
  std::vector<NodeId> leaves_;
  std::size_t pos_ = 0;
  std::vector<NodeId> path_;
};

/// Graphviz export; one node per line labelled "id:level", edges parent->child.
void write_dot(const LayeredTree& tree, std::ostream& out);

}  // namespace kstree

#endif  // KSTREE_TREE_HPP
