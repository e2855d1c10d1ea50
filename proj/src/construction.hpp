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

#ifndef KSTREE_CONSTRUCTION_HPP
#define KSTREE_CONSTRUCTION_HPP

#include <cstdint>

#include "hypergraph.hpp"

namespace kstree {

// Staged construction of a k-uniform path hypergraph on a binary tree in
// which every full branch carries exactly one edge and no vertex lies in
// more than 2d = 2 * 2^k / k edge instances. The stages:
//
//   Base       complete tree with log2(d)+1 levels; every vertex v starts one
//              edge of multiplicity 2^level(v) to each of its leaf
//              descendants. Each full branch then carries 2^i bottom edges of
//              size log2(d)+1-i for every class i.
//   Split      a complete subtree of height ll = floor(log2 log2 d) is
//              grafted below every leaf; the class-i bottom edge of each old
//              leaf (i < 2^ll) is re-bottomed to the i-th graft leaf. Each
//              full branch now carries the 2^i edges of exactly one class.
//   Equalized  a complete subtree of height i is grafted below every leaf
//              carrying class i, and the multiplicity-2^i edge is expanded
//              into 2^i distinct unit edges, one per graft branch. All of
//              them reach size log2(d)+1+ll = k.
//   Final      only the size-k bottom edges are retained; classes that were
//              never re-bottomed (i >= 2^ll) are dropped.
//   Joined     two copies of the Final tree are hung under a fresh root, so
//              every non-root vertex gains a sibling. The root lies in no
//              edge.

/// Parameters derived from k. Only powers of 2 with k >= 2 are supported;
/// for those, log2(d) + 1 + ll = k always holds and is verified rather than
/// assumed, so every generated edge can reach size exactly k.
struct StageParams {
  std::uint32_t k = 0;      // uniformity, power of 2
  std::uint32_t log_k = 0;  // log2(k)
  std::uint64_t d = 0;      // 2^k / k
  std::uint32_t log_d = 0;  // log2(d) = k - log2(k)
  std::uint32_t ll = 0;     // floor(log2(log2(d)))

  std::uint64_t degree_bound() const { return 2 * d; }
};

/// Validates k and derives the stage parameters.
/// Throws UnsupportedK naming the violated condition.
StageParams make_params(std::uint32_t k);

TreeHypergraph build_base(const StageParams& p);
TreeHypergraph split_leaves(TreeHypergraph hg, const StageParams& p);
TreeHypergraph equalize_depths(TreeHypergraph hg, const StageParams& p);
TreeHypergraph extract_kstree(TreeHypergraph hg, const StageParams& p);
TreeHypergraph mirror_join(const TreeHypergraph& g, const StageParams& p);

/// Runs the pipeline from scratch up to and including `target`.
TreeHypergraph build_stage(const StageParams& p, Stage target);

}  // namespace kstree

#endif  // KSTREE_CONSTRUCTION_HPP
