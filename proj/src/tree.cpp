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

#include "tree.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <string>

#include "error.hpp"

namespace kstree {

LayeredTree LayeredTree::complete(std::uint32_t levels) {
  if (levels == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "a complete tree needs at least 1 level");
  }
  if (levels >= 32) {
    throw Error(ErrorCode::InvalidArgument,
                "complete tree with " + std::to_string(levels) +
                    " levels does not fit 32-bit node ids");
  }
  LayeredTree tree;
  const std::size_t count = (std::size_t{1} << levels) - 1;
  tree.nodes_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    TreeNode& n = tree.nodes_[i];
    n.parent = i == 0 ? kNoNode : static_cast<NodeId>((i - 1) / 2);
    const std::size_t l = 2 * i + 1;
    const std::size_t r = 2 * i + 2;
    n.left = l < count ? static_cast<NodeId>(l) : kNoNode;
    n.right = r < count ? static_cast<NodeId>(r) : kNoNode;
  }
  // Levels follow from the heap layout: level(i) = floor(log2(i + 1)).
  std::uint32_t level = 0;
  std::size_t next_level_at = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (i + 1 == 2 * next_level_at) {
      ++level;
      next_level_at *= 2;
    }
    tree.nodes_[i].level = level;
  }
  return tree;
}

LayeredTree LayeredTree::from_nodes(std::vector<TreeNode> nodes) {
  LayeredTree tree;
  tree.nodes_ = std::move(nodes);
  return tree;
}

bool LayeredTree::is_full() const {
  for (const TreeNode& n : nodes_) {
    if ((n.left == kNoNode) != (n.right == kNoNode)) return false;
  }
  return true;
}

std::size_t LayeredTree::leaf_count() const {
  std::size_t count = 0;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (is_leaf(id)) ++count;
  }
  return count;
}

std::vector<NodeId> LayeredTree::leaves() const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (is_leaf(id)) out.push_back(id);
  }
  return out;
}

NodeId LayeredTree::ancestor_at(NodeId id, std::uint32_t target_level) const {
  if (target_level > level(id)) {
    throw Error(ErrorCode::InvalidArgument,
                "ancestor level " + std::to_string(target_level) +
                    " is below node " + std::to_string(id));
  }
  NodeId cur = id;
  while (nodes_[cur].level > target_level) cur = nodes_[cur].parent;
  return cur;
}

std::vector<NodeId> LayeredTree::branch_to(NodeId leaf) const {
  std::vector<NodeId> path;
  path.reserve(level(leaf) + 1);
  NodeId cur = leaf;
  while (true) {
    path.push_back(cur);
    if (nodes_[cur].parent == kNoNode) break;
    cur = nodes_[cur].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

NodeId LayeredTree::append(NodeId parent, bool as_left) {
  const NodeId id = static_cast<NodeId>(nodes_.size());
  TreeNode n;
  n.parent = parent;
  n.level = nodes_[parent].level + 1;
  nodes_.push_back(n);
  if (as_left) {
    nodes_[parent].left = id;
  } else {
    nodes_[parent].right = id;
  }
  return id;
}

std::vector<NodeId> LayeredTree::attach_complete_subtree(NodeId at,
                                                         std::uint32_t height) {
  if (at >= nodes_.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "node " + std::to_string(at) + " is out of range");
  }
  if (!is_leaf(at)) {
    throw Error(ErrorCode::Structure,
                "subtree must be grafted at a leaf; node " + std::to_string(at) +
                    " has children");
  }
  std::vector<NodeId> frontier = {at};
  for (std::uint32_t h = 0; h < height; ++h) {
    std::vector<NodeId> next;
    next.reserve(frontier.size() * 2);
    for (NodeId p : frontier) {
      next.push_back(append(p, /*as_left=*/true));
      next.push_back(append(p, /*as_left=*/false));
    }
    frontier = std::move(next);
  }
  return frontier;
}

std::vector<std::pair<NodeId, NodeId>> LayeredTree::sibling_pairs() const {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(nodes_.size() / 2);
  std::deque<NodeId> queue = {root()};
  while (!queue.empty()) {
    const NodeId id = queue.front();
    queue.pop_front();
    const TreeNode& n = nodes_[id];
    if (n.left == kNoNode && n.right == kNoNode) continue;
    if (n.left == kNoNode || n.right == kNoNode) {
      throw Error(ErrorCode::Structure,
                  "node " + std::to_string(id) +
                      " has exactly one child; sibling pairs need a full tree");
    }
    pairs.emplace_back(n.left, n.right);
    queue.push_back(n.left);
    queue.push_back(n.right);
  }
  return pairs;
}

void LayeredTree::validate() const {
  if (nodes_.empty()) {
    throw Error(ErrorCode::Structure, "tree has no nodes");
  }
  if (nodes_[0].parent != kNoNode || nodes_[0].level != 0) {
    throw Error(ErrorCode::Structure, "node 0 is not a level-0 root");
  }
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const TreeNode& n = nodes_[id];
    if (id != 0) {
      if (n.parent == kNoNode) {
        throw Error(ErrorCode::Structure,
                    "node " + std::to_string(id) + " is a second root");
      }
      if (n.parent >= nodes_.size()) {
        throw Error(ErrorCode::Structure,
                    "node " + std::to_string(id) + " has a dangling parent");
      }
      const TreeNode& p = nodes_[n.parent];
      if (p.left != id && p.right != id) {
        throw Error(ErrorCode::Structure,
                    "parent of node " + std::to_string(id) +
                        " does not link back to it");
      }
      if (n.level != p.level + 1) {
        throw Error(ErrorCode::Structure,
                    "node " + std::to_string(id) +
                        " level is not parent level + 1");
      }
    }
    if ((n.left == kNoNode) != (n.right == kNoNode)) {
      throw Error(ErrorCode::Structure,
                  "node " + std::to_string(id) + " has exactly one child");
    }
    for (NodeId child : {n.left, n.right}) {
      if (child == kNoNode) continue;
      if (child >= nodes_.size() || nodes_[child].parent != id) {
        throw Error(ErrorCode::Structure,
                    "child link of node " + std::to_string(id) +
                        " is inconsistent");
      }
    }
  }
}

bool LayeredTree::operator==(const LayeredTree& other) const {
  return nodes_ == other.nodes_;
}

BranchCursor::BranchCursor(const LayeredTree& tree)
    : tree_(&tree), leaves_(tree.leaves()) {}

bool BranchCursor::next() {
  if (pos_ >= leaves_.size()) return false;
  path_ = tree_->branch_to(leaves_[pos_]);
  ++pos_;
  return true;
}

void write_dot(const LayeredTree& tree, std::ostream& out) {
  out << "digraph tree {\n";
  out << "  node [shape=circle];\n";
  for (NodeId id = 0; id < tree.node_count(); ++id) {
    out << "  n" << id << " [label=\"" << id << ":" << tree.level(id)
        << "\"];\n";
  }
  for (NodeId id = 0; id < tree.node_count(); ++id) {
    const TreeNode& n = tree.node(id);
    if (n.left != kNoNode) out << "  n" << id << " -> n" << n.left << ";\n";
    if (n.right != kNoNode) out << "  n" << id << " -> n" << n.right << ";\n";
  }
  out << "}\n";
}

}  // namespace kstree
