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

#include <doctest.h>

#include <sstream>

#include "error.hpp"
#include "tree.hpp"

using namespace kstree;

TEST_CASE("complete tree layout") {
  const LayeredTree t = LayeredTree::complete(3);
  CHECK(t.node_count() == 7);
  CHECK(t.root() == 0);
  CHECK(t.node(0).left == 1);
  CHECK(t.node(0).right == 2);
  CHECK(t.node(1).left == 3);
  CHECK(t.node(1).right == 4);
  CHECK(t.node(2).left == 5);
  CHECK(t.node(2).right == 6);
  CHECK(t.node(5).parent == 2);
  CHECK(t.level(0) == 0);
  CHECK(t.level(2) == 1);
  CHECK(t.level(6) == 2);
  CHECK(t.is_full());
  CHECK(t.leaf_count() == 4);
  CHECK(t.leaves() == std::vector<NodeId>{3, 4, 5, 6});
  CHECK_FALSE(t.is_leaf(1));
  CHECK(t.is_leaf(4));
  t.validate();
}

TEST_CASE("single node tree") {
  const LayeredTree t = LayeredTree::complete(1);
  CHECK(t.node_count() == 1);
  CHECK(t.is_leaf(0));
  CHECK(t.leaf_count() == 1);
  CHECK(t.is_full());
}

TEST_CASE("complete rejects degenerate level counts") {
  CHECK_THROWS_AS(LayeredTree::complete(0), Error);
  CHECK_THROWS_AS(LayeredTree::complete(40), Error);
  try {
    LayeredTree::complete(0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("ancestors and branches") {
  const LayeredTree t = LayeredTree::complete(4);
  CHECK(t.ancestor_at(14, 0) == 0);
  CHECK(t.ancestor_at(14, 1) == 2);
  CHECK(t.ancestor_at(14, 2) == 6);
  CHECK(t.ancestor_at(14, 3) == 14);
  CHECK(t.branch_to(9) == std::vector<NodeId>{0, 1, 4, 9});
  CHECK(t.branch_to(0) == std::vector<NodeId>{0});
}

TEST_CASE("attach_complete_subtree grows leaves in order") {
  LayeredTree t = LayeredTree::complete(2);  // nodes 0,1,2
  const std::vector<NodeId> leaves = t.attach_complete_subtree(1, 2);
  CHECK(leaves.size() == 4);
  CHECK(t.node_count() == 3 + 6);
  // Children of node 1 come first, then their children left to right.
  CHECK(t.node(1).left == 3);
  CHECK(t.node(1).right == 4);
  CHECK(leaves == std::vector<NodeId>{5, 6, 7, 8});
  CHECK(t.level(3) == 2);
  CHECK(t.level(5) == 3);
  CHECK(t.node(5).parent == 3);
  CHECK(t.node(8).parent == 4);
  t.validate();

  // Height 0 is a no-op that names the attachment point.
  const std::vector<NodeId> same = t.attach_complete_subtree(2, 0);
  CHECK(same == std::vector<NodeId>{2});
  CHECK(t.node_count() == 9);
}

TEST_CASE("attach_complete_subtree refuses interior nodes") {
  LayeredTree t = LayeredTree::complete(2);
  CHECK_THROWS_AS(t.attach_complete_subtree(0, 1), Error);
}

TEST_CASE("sibling pairs follow parent order") {
  const LayeredTree t = LayeredTree::complete(3);
  const auto pairs = t.sibling_pairs();
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<NodeId, NodeId>{1, 2});
  CHECK(pairs[1] == std::pair<NodeId, NodeId>{3, 4});
  CHECK(pairs[2] == std::pair<NodeId, NodeId>{5, 6});
}

TEST_CASE("branch cursor visits every leaf once") {
  const LayeredTree t = LayeredTree::complete(3);
  BranchCursor cur(t);
  std::vector<NodeId> seen;
  while (cur.next()) {
    CHECK(cur.path().front() == 0);
    CHECK(cur.path().back() == cur.leaf());
    CHECK(cur.path().size() == 3);
    seen.push_back(cur.leaf());
  }
  CHECK(seen == t.leaves());
  CHECK_FALSE(cur.next());
}

TEST_CASE("validate flags broken links") {
  std::vector<TreeNode> nodes(3);
  nodes[0].left = 1;
  nodes[0].right = 2;
  nodes[1].parent = 0;
  nodes[1].level = 1;
  nodes[2].parent = 1;  // wrong parent
  nodes[2].level = 1;
  const LayeredTree t = LayeredTree::from_nodes(std::move(nodes));
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("validate flags one-child nodes") {
  std::vector<TreeNode> nodes(2);
  nodes[0].left = 1;
  nodes[1].parent = 0;
  nodes[1].level = 1;
  const LayeredTree t = LayeredTree::from_nodes(std::move(nodes));
  CHECK_FALSE(t.is_full());
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("trees compare by structure") {
  CHECK(LayeredTree::complete(3) == LayeredTree::complete(3));
  CHECK_FALSE(LayeredTree::complete(3) == LayeredTree::complete(2));
}

TEST_CASE("dot export") {
  const LayeredTree t = LayeredTree::complete(2);
  std::ostringstream os;
  write_dot(t, os);
  const std::string dot = os.str();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("label=\"0:0\"") != std::string::npos);
  CHECK(dot.find("label=\"1:1\"") != std::string::npos);
  CHECK(dot.find("n0 -> n1") != std::string::npos);
  CHECK(dot.find("n0 -> n2") != std::string::npos);
}
