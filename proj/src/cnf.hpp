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

#ifndef KSTREE_CNF_HPP
#define KSTREE_CNF_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "construction.hpp"
#include "hypergraph.hpp"

namespace kstree {

/// A literal over positive integer variables. The usual signed-integer
/// encoding is +v for the positive literal and -v for the negated one.
struct Literal {
  std::uint32_t variable = 0;
  bool negated = false;

  std::int32_t encode() const {
    const auto v = static_cast<std::int32_t>(variable);
    return negated ? -v : v;
  }
  static Literal decode(std::int32_t lit) {
    return Literal{static_cast<std::uint32_t>(lit < 0 ? -lit : lit), lit < 0};
  }

  bool operator==(const Literal&) const = default;
};

/// Clause list over variables 1..num_vars. Literals are stored flat in
/// signed-integer encoding with clause offsets, which keeps multi-million
/// clause instances compact. No variable may repeat within one clause.
class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(std::uint32_t num_vars) : num_vars_(num_vars) {}

  std::uint32_t num_vars() const { return num_vars_; }
  std::uint64_t num_clauses() const { return offsets_.size() - 1; }
  std::uint64_t num_literals() const { return lits_.size(); }

  std::span<const std::int32_t> clause(std::uint64_t i) const {
    return {lits_.data() + offsets_[i],
            static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
  }

  /// Appends a clause. Throws InvalidArgument when a literal is zero or out
  /// of variable range, or when a variable repeats within the clause.
  void add_clause(std::span<const std::int32_t> lits);

  void reserve(std::uint64_t clauses, std::uint64_t literals);

  bool operator==(const CnfFormula&) const = default;

 private:
  std::uint32_t num_vars_ = 0;
  std::vector<std::int32_t> lits_;
  std::vector<std::uint64_t> offsets_ = {0};
};

/// The literal carried by each non-root vertex of a joined tree. The two
/// vertices of a sibling pair carry the same variable with opposite
/// polarities: left child positive, right child negated. Variables are
/// numbered 1..num_vars in breadth-first order of the parents.
struct SiblingAssignment {
  std::uint32_t num_vars = 0;
  std::vector<std::int32_t> literal_of_node;  // 0 for the root

  /// Literal of a non-root vertex; throws InvalidArgument for the root.
  Literal at(NodeId v) const;
};

SiblingAssignment assign_literals(const TreeHypergraph& joined);

/// One clause per edge, in edge order; clause literals follow the edge path
/// top to bottom. A repeated variable inside a clause (impossible for paths,
/// since a path never contains both siblings) raises ConstructionBug.
CnfFormula to_cnf(const TreeHypergraph& joined, const SiblingAssignment& a);

struct CnfStats {
  std::uint32_t k = 0;
  std::uint32_t num_vars = 0;
  std::uint64_t num_clauses = 0;
  bool k_uniform = false;
  std::map<std::uint32_t, std::uint64_t> width_histogram;
  std::uint64_t max_variable_occurrences = 0;
  double mean_variable_occurrences = 0.0;
  std::uint64_t max_literal_occurrences = 0;
  std::uint64_t occurrence_bound = 0;       // 4 * 2^k / k
  std::uint64_t occurrence_bound_half = 0;  // 2 * 2^k / k
  bool within_occurrence_bound = false;
  bool within_occurrence_bound_half = false;
  double kst_threshold = 0.0;  // 2^k / (e*k); advisory comparison only
  bool above_kst_threshold = false;

  nlohmann::ordered_json to_json() const;
};

CnfStats cnf_stats(const CnfFormula& f, std::uint32_t k);

/// Standard DIMACS CNF serialization: optional "c " comment lines, a
/// "p cnf <vars> <clauses>" header, then zero-terminated clauses, one per
/// line. Writing streams; it never materializes the text.
void write_dimacs(const CnfFormula& f, std::ostream& out,
                  std::span<const std::string> comments = {});

/// Parses DIMACS text. Malformed headers, out-of-range literals, repeated
/// variables, missing clause terminators and header/count mismatches raise
/// Parse errors that name the offending line.
CnfFormula read_dimacs(std::istream& in);

}  // namespace kstree

#endif  // KSTREE_CNF_HPP
