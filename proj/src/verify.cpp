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

#include "verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <utility>

#include "error.hpp"

namespace kstree {
namespace {

// Reports stay readable on large instances: everything is counted, the first
// hundred offenders are listed.
constexpr std::size_t kMaxListed = 100;

class Collector {
 public:
  explicit Collector(VerificationReport& report) : report_(report) {}

  void add(std::string subject, std::string expected, std::string found) {
    ++total_;
    if (report_.violations.size() < kMaxListed) {
      report_.violations.push_back(
          Violation{std::move(subject), std::move(expected), std::move(found)});
    }
  }

  void finish() {
    if (total_ > report_.violations.size()) {
      report_.violations.push_back(Violation{
          "(truncated)", "",
          std::to_string(total_ - report_.violations.size()) +
              " further violations omitted"});
    }
    report_.pass = total_ == 0;
  }

 private:
  VerificationReport& report_;
  std::size_t total_ = 0;
};

void check_degrees(const TreeHypergraph& hg, std::uint64_t bound,
                   Collector& c) {
  const std::vector<std::uint64_t> deg = hg.degree_all();
  for (NodeId v = 0; v < deg.size(); ++v) {
    if (deg[v] > bound) {
      c.add("vertex " + std::to_string(v),
            "degree <= " + std::to_string(bound),
            "degree " + std::to_string(deg[v]));
    }
  }
}

void require_stage_one_of(const TreeHypergraph& hg, Stage a, Stage b,
                          const char* what) {
  if (hg.stage != a && hg.stage != b) {
    throw Error(ErrorCode::PipelineOrder,
                std::string(what) + " applies to the " + stage_name(a) +
                    (a == b ? std::string() : std::string(" or ") + stage_name(b)) +
                    " stage, got " + stage_name(hg.stage));
  }
}

}  // namespace

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["stage"] = stage_name(stage);
  j["pass"] = pass;
  j["violations"] = nlohmann::ordered_json::array();
  for (const Violation& v : violations) {
    j["violations"].push_back({{"subject", v.subject},
                               {"expected", v.expected},
                               {"found", v.found}});
  }
  return j;
}

VerificationReport check_ks_tree(const TreeHypergraph& hg,
                                 const KsTreeSpec& spec) {
  VerificationReport r;
  r.check = "ks_tree";
  r.stage = hg.stage;
  Collector c(r);

  for (std::size_t ei = 0; ei < hg.edges.size(); ++ei) {
    const PathEdge& e = hg.edges[ei];
    const std::uint32_t top_level = hg.tree.level(e.top);
    const std::uint32_t bottom_level = hg.tree.level(e.bottom);
    if (top_level > bottom_level ||
        hg.tree.ancestor_at(e.bottom, top_level) != e.top) {
      c.add("edge " + std::to_string(ei), "top is an ancestor of bottom",
            "vertices " + std::to_string(e.top) + ".." +
                std::to_string(e.bottom) + " are not nested");
      continue;
    }
    const std::uint32_t size = bottom_level - top_level + 1;
    if (size != spec.k) {
      c.add("edge " + std::to_string(ei), "size " + std::to_string(spec.k),
            "size " + std::to_string(size));
    }
  }

  std::vector<std::uint8_t> has_bottom(hg.tree.node_count(), 0);
  for (const PathEdge& e : hg.edges) has_bottom[e.bottom] = 1;
  BranchCursor cursor(hg.tree);
  while (cursor.next()) {
    bool covered = false;
    for (NodeId v : cursor.path()) {
      if (has_bottom[v]) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      c.add("branch to leaf " + std::to_string(cursor.leaf()),
            "contains the bottom of some edge", "no edge bottom on branch");
    }
  }

  check_degrees(hg, spec.s, c);
  c.finish();
  return r;
}

VerificationReport check_base_profile(const TreeHypergraph& hg,
                                      const StageParams& p) {
  require_stage_one_of(hg, Stage::Base, Stage::Base, "base profile check");
  VerificationReport r;
  r.check = "base_profile";
  r.stage = hg.stage;
  Collector c(r);

  const BottomIndex idx(hg);
  for (NodeId leaf : hg.tree.leaves()) {
    std::map<std::int32_t, std::uint64_t> mult_of_class;
    for (std::size_t ei : idx.edges_at(leaf)) {
      const PathEdge& e = hg.edges[ei];
      if (e.size_class < 0 ||
          e.size_class > static_cast<std::int32_t>(p.log_d)) {
        c.add("leaf " + std::to_string(leaf) + " edge " + std::to_string(ei),
              "size class in 0.." + std::to_string(p.log_d),
              "size class " + std::to_string(e.size_class));
        continue;
      }
      mult_of_class[e.size_class] += e.multiplicity;
      const std::uint32_t want =
          p.log_d + 1 - static_cast<std::uint32_t>(e.size_class);
      const std::uint32_t size = hg.edge_size(e);
      if (size != want) {
        c.add("leaf " + std::to_string(leaf) + " edge " + std::to_string(ei),
              "class " + std::to_string(e.size_class) + " edge of size " +
                  std::to_string(want),
              "size " + std::to_string(size));
      }
    }
    for (std::uint32_t i = 0; i <= p.log_d; ++i) {
      const std::uint64_t want = std::uint64_t{1} << i;
      const std::uint64_t got = mult_of_class[static_cast<std::int32_t>(i)];
      if (got != want) {
        c.add("leaf " + std::to_string(leaf) + " class " + std::to_string(i),
              "total multiplicity " + std::to_string(want),
              "total multiplicity " + std::to_string(got));
      }
    }
  }

  check_degrees(hg, p.degree_bound(), c);
  c.finish();
  return r;
}

VerificationReport check_split_profile(const TreeHypergraph& hg,
                                       const StageParams& p) {
  require_stage_one_of(hg, Stage::Split, Stage::Split, "split profile check");
  VerificationReport r;
  r.check = "split_profile";
  r.stage = hg.stage;
  Collector c(r);

  // Only the relocated classes i < 2^ll take part in the profile; with
  // ll = 0 the untouched larger classes still end on leaves and are not this
  // check's business.
  const std::uint32_t num_classes = std::uint32_t{1} << p.ll;
  const BottomIndex idx(hg);
  for (NodeId leaf : hg.tree.leaves()) {
    std::int32_t cls = PathEdge::kNoSizeClass;
    bool one_class = true;
    std::uint64_t mult = 0;
    for (std::size_t ei : idx.edges_at(leaf)) {
      const PathEdge& e = hg.edges[ei];
      if (e.size_class < 0 ||
          e.size_class >= static_cast<std::int32_t>(num_classes)) {
        continue;
      }
      if (cls == PathEdge::kNoSizeClass) cls = e.size_class;
      if (e.size_class != cls) one_class = false;
      mult += e.multiplicity;
      const std::uint32_t want_size =
          p.log_d + 1 - static_cast<std::uint32_t>(e.size_class) + p.ll;
      const std::uint32_t size = hg.edge_size(e);
      if (size != want_size) {
        c.add("leaf " + std::to_string(leaf) + " edge " + std::to_string(ei),
              "class " + std::to_string(e.size_class) + " edge of size " +
                  std::to_string(want_size),
              "size " + std::to_string(size));
      }
    }
    if (cls == PathEdge::kNoSizeClass) {
      c.add("leaf " + std::to_string(leaf),
            "one size class below " + std::to_string(num_classes),
            "no bottom edge in any such class");
      continue;
    }
    if (!one_class) {
      c.add("leaf " + std::to_string(leaf),
            "one size class below " + std::to_string(num_classes),
            "several size classes");
      continue;
    }
    const std::uint64_t want_mult = std::uint64_t{1}
                                    << static_cast<std::uint32_t>(cls);
    if (mult != want_mult) {
      c.add("leaf " + std::to_string(leaf) + " class " + std::to_string(cls),
            "total multiplicity " + std::to_string(want_mult),
            "total multiplicity " + std::to_string(mult));
    }
  }

  check_degrees(hg, p.degree_bound(), c);
  c.finish();
  return r;
}

VerificationReport check_equalized_profile(const TreeHypergraph& hg,
                                           const StageParams& p) {
  require_stage_one_of(hg, Stage::Equalized, Stage::Final,
                       "equalized profile check");
  VerificationReport r;
  r.check = "equalized_profile";
  r.stage = hg.stage;
  Collector c(r);

  const BottomIndex idx(hg);
  for (NodeId leaf : hg.tree.leaves()) {
    const auto edges = idx.edges_at(leaf);
    if (edges.size() != 1) {
      c.add("leaf " + std::to_string(leaf), "exactly one bottom edge",
            std::to_string(edges.size()) + " bottom edges");
      continue;
    }
    const std::size_t ei = edges.front();
    const PathEdge& e = hg.edges[ei];
    if (e.multiplicity != 1) {
      c.add("leaf " + std::to_string(leaf) + " edge " + std::to_string(ei),
            "multiplicity 1", "multiplicity " + std::to_string(e.multiplicity));
    }
    const std::uint32_t size = hg.edge_size(e);
    if (size != p.k) {
      c.add("leaf " + std::to_string(leaf) + " edge " + std::to_string(ei),
            "size " + std::to_string(p.k), "size " + std::to_string(size));
    }
  }

  check_degrees(hg, p.degree_bound(), c);
  c.finish();
  return r;
}

VerificationReport certify_unsat_structural(const TreeHypergraph& hg,
                                            const StageParams& p) {
  require_stage_one_of(hg, Stage::Joined, Stage::Joined,
                       "structural unsatisfiability certificate");
  (void)p;
  VerificationReport r;
  r.check = "unsat_certificate";
  r.stage = hg.stage;
  Collector c(r);

  // Every branch must contain some edge end to end.  Edges are vertical
  // paths, so an edge lies inside a branch exactly when its bottom does.
  std::vector<std::uint8_t> has_bottom(hg.tree.node_count(), 0);
  for (const PathEdge& e : hg.edges) has_bottom[e.bottom] = 1;
  BranchCursor cursor(hg.tree);
  while (cursor.next()) {
    bool covered = false;
    for (NodeId v : cursor.path()) {
      if (has_bottom[v]) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      c.add("branch to leaf " + std::to_string(cursor.leaf()),
            "contains an edge whose clause it falsifies",
            "no edge bottom on branch");
    }
  }

  c.finish();
  return r;
}

nlohmann::ordered_json FalsificationWitness::to_json() const {
  nlohmann::ordered_json j;
  j["falsified_clause_index"] = falsified_clause_index;
  j["branch"] = branch;
  j["branch_literals"] = branch_literals;
  return j;
}

FalsificationWitness falsifying_branch(
    const TreeHypergraph& joined, const SiblingAssignment& a,
    const CnfFormula& f, const std::vector<std::uint8_t>& assignment) {
  if (joined.stage != Stage::Joined) {
    throw Error(ErrorCode::PipelineOrder,
                std::string("falsifying branches exist in the ") +
                    stage_name(Stage::Joined) + " stage, got " +
                    stage_name(joined.stage));
  }
  if (assignment.size() != a.num_vars) {
    throw Error(ErrorCode::InvalidArgument,
                "assignment has " + std::to_string(assignment.size()) +
                    " entries, the formula has " + std::to_string(a.num_vars) +
                    " variables");
  }
  if (a.literal_of_node.size() != joined.tree.node_count()) {
    throw Error(ErrorCode::InvalidArgument,
                "literal assignment does not belong to this tree");
  }

  FalsificationWitness w;
  NodeId v = joined.tree.root();
  w.branch.push_back(v);
  while (!joined.tree.is_leaf(v)) {
    const TreeNode& node = joined.tree.node(v);
    if (node.left == kNoNode || node.right == kNoNode) {
      throw Error(ErrorCode::Structure,
                  "vertex " + std::to_string(v) + " has exactly one child");
    }
    const std::int32_t left_lit = a.literal_of_node[node.left];
    if (left_lit == 0) {
      throw Error(ErrorCode::ConstructionBug,
                  "vertex " + std::to_string(node.left) +
                      " carries no literal");
    }
    const std::uint32_t var = static_cast<std::uint32_t>(std::abs(left_lit));
    const bool val = assignment[var - 1] != 0;
    // Descend into the child whose literal the assignment makes false.
    const bool left_is_true = (left_lit > 0) == val;
    v = left_is_true ? node.right : node.left;
    w.branch.push_back(v);
  }

  std::uint64_t found = 0;
  std::uint64_t count = 0;
  for (std::size_t ei = 0; ei < joined.edges.size(); ++ei) {
    if (joined.edges[ei].bottom == v) {
      found = ei;
      ++count;
    }
  }
  if (count != 1) {
    throw Error(ErrorCode::ConstructionBug,
                "leaf " + std::to_string(v) + " carries " +
                    std::to_string(count) + " bottom edges, wanted exactly 1");
  }
  w.falsified_clause_index = found;

  for (std::size_t i = 1; i < w.branch.size(); ++i) {
    const std::int32_t lit = a.literal_of_node[w.branch[i]];
    if (lit == 0) {
      throw Error(ErrorCode::ConstructionBug,
                  "vertex " + std::to_string(w.branch[i]) +
                      " carries no literal");
    }
    const bool val =
        assignment[static_cast<std::uint32_t>(std::abs(lit)) - 1] != 0;
    if ((lit > 0) == val) {
      throw Error(ErrorCode::ConstructionBug,
                  "literal on the selected branch is not false");
    }
    w.branch_literals.push_back(lit);
  }
  for (std::int32_t lit : f.clause(w.falsified_clause_index)) {
    if (std::find(w.branch_literals.begin(), w.branch_literals.end(), lit) ==
        w.branch_literals.end()) {
      throw Error(ErrorCode::ConstructionBug,
                  "falsified clause contains a literal off the branch");
    }
  }
  return w;
}

std::vector<VerificationReport> stage_checks(const TreeHypergraph& hg,
                                             const StageParams& p) {
  std::vector<VerificationReport> out;
  switch (hg.stage) {
    case Stage::Base:
      out.push_back(check_base_profile(hg, p));
      break;
    case Stage::Split:
      out.push_back(check_split_profile(hg, p));
      break;
    case Stage::Equalized:
      // With ll = 0 grafting is trivial and the larger classes still end on
      // leaves; one-bottom-edge-per-branch first holds after extraction.
      if (p.ll >= 1) out.push_back(check_equalized_profile(hg, p));
      break;
    case Stage::Final:
      out.push_back(check_equalized_profile(hg, p));
      out.push_back(check_ks_tree(hg, KsTreeSpec{p.k, p.degree_bound()}));
      break;
    case Stage::Joined:
      out.push_back(check_ks_tree(hg, KsTreeSpec{p.k, p.degree_bound()}));
      out.push_back(certify_unsat_structural(hg, p));
      break;
  }
  return out;
}

nlohmann::ordered_json PipelineVerification::to_json(std::uint32_t k) const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["pass"] = pass;
  j["reports"] = nlohmann::ordered_json::array();
  for (const VerificationReport& r : reports) j["reports"].push_back(r.to_json());
  return j;
}

PipelineVerification verify_pipeline(const StageParams& p) {
  PipelineVerification out;
  auto take = [&out](std::vector<VerificationReport> reports) {
    for (VerificationReport& r : reports) out.reports.push_back(std::move(r));
  };

  TreeHypergraph hg = build_base(p);
  take(stage_checks(hg, p));
  hg = split_leaves(std::move(hg), p);
  take(stage_checks(hg, p));
  hg = equalize_depths(std::move(hg), p);
  take(stage_checks(hg, p));
  hg = extract_kstree(std::move(hg), p);
  take(stage_checks(hg, p));
  const TreeHypergraph joined = mirror_join(hg, p);
  take(stage_checks(joined, p));

  out.pass = std::all_of(out.reports.begin(), out.reports.end(),
                         [](const VerificationReport& r) { return r.pass; });
  return out;
}

}  // namespace kstree
