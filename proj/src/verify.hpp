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

#ifndef KSTREE_SRC_VERIFY_HPP_
#define KSTREE_SRC_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cnf.hpp"
#include "construction.hpp"
#include "hypergraph.hpp"

namespace kstree {

// One offending object found by a check: what was looked at, what the check
// wanted, what it saw.
struct Violation {
  std::string subject;
  std::string expected;
  std::string found;
};

struct VerificationReport {
  std::string check;
  Stage stage = Stage::Base;
  bool pass = false;
  std::vector<Violation> violations;

  nlohmann::ordered_json to_json() const;
};

// (k, s)-tree shape: every edge has exactly k vertices, every root-to-leaf
// branch contains the bottom of at least one edge, and no vertex lies on more
// than s edge instances.  Works on any stage.
VerificationReport check_ks_tree(const TreeHypergraph& hg, const KsTreeSpec& spec);

// Base stage: each branch ends at a leaf whose bottom edges form exactly one
// size class per level i = 0..log_d, where class i has edge size
// log_d + 1 - i and total multiplicity 2^i.  Degree bound 2d everywhere.
VerificationReport check_base_profile(const TreeHypergraph& hg,
                                      const StageParams& p);

// Split stage: among the relocated size classes i < 2^ll, each branch ends
// at a leaf carrying exactly one, with edges of size log_d + 1 - i + ll and
// total multiplicity 2^i.  Degree bound 2d everywhere.
VerificationReport check_split_profile(const TreeHypergraph& hg,
                                       const StageParams& p);

// Equalized and Final stages: each branch ends at a leaf carrying exactly one
// bottom edge, of multiplicity 1 and size k.  Degree bound 2d everywhere.
VerificationReport check_equalized_profile(const TreeHypergraph& hg,
                                           const StageParams& p);

// Joined stage: every root-to-leaf branch contains some edge entirely, which
// is exactly the property that makes the emitted formula unsatisfiable (the
// clause of that edge is falsified by the assignment naming the branch).
VerificationReport certify_unsat_structural(const TreeHypergraph& hg,
                                            const StageParams& p);

// A concrete refutation of one assignment: the branch it selects, the clause
// falsified there, and that clause's literals for independent re-checking.
struct FalsificationWitness {
  std::vector<NodeId> branch;
  std::uint64_t falsified_clause_index = 0;
  std::vector<std::int32_t> branch_literals;

  nlohmann::ordered_json to_json() const;
};

// Walks the branch selected by `assignment` (entry v-1 holds variable v; a
// true variable descends into its negated-literal child) and returns the
// clause falsified along it.  Self-checks that every literal on the branch is
// false under the assignment and that the clause is one of them.
FalsificationWitness falsifying_branch(const TreeHypergraph& joined,
                                       const SiblingAssignment& a,
                                       const CnfFormula& f,
                                       const std::vector<std::uint8_t>& assignment);

// The checks appropriate to a stage, in a fixed order.
std::vector<VerificationReport> stage_checks(const TreeHypergraph& hg,
                                             const StageParams& p);

struct PipelineVerification {
  bool pass = false;
  std::vector<VerificationReport> reports;

  nlohmann::ordered_json to_json(std::uint32_t k) const;
};

// Runs the whole construction for k, checking every stage as it is produced.
PipelineVerification verify_pipeline(const StageParams& p);

}  // namespace kstree

#endif  // KSTREE_SRC_VERIFY_HPP_
