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

#include "cnf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "error.hpp"

namespace kstree {

void CnfFormula::add_clause(std::span<const std::int32_t> lits) {
  for (std::int32_t lit : lits) {
    if (lit == 0) {
      throw Error(ErrorCode::InvalidArgument, "literal 0 is not allowed");
    }
    const std::uint32_t var = static_cast<std::uint32_t>(std::abs(lit));
    if (var > num_vars_) {
      throw Error(ErrorCode::InvalidArgument,
                  "literal " + std::to_string(lit) + " exceeds " +
                      std::to_string(num_vars_) + " variables");
    }
  }
  // Duplicate-variable check; clauses are short, quadratic is fine.
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (std::abs(lits[i]) == std::abs(lits[j])) {
        throw Error(ErrorCode::InvalidArgument,
                    "variable " + std::to_string(std::abs(lits[i])) +
                        " repeats within one clause");
      }
    }
  }
  lits_.insert(lits_.end(), lits.begin(), lits.end());
  offsets_.push_back(lits_.size());
}

void CnfFormula::reserve(std::uint64_t clauses, std::uint64_t literals) {
  offsets_.reserve(clauses + 1);
  lits_.reserve(literals);
}

Literal SiblingAssignment::at(NodeId v) const {
  if (v >= literal_of_node.size() || literal_of_node[v] == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "node " + std::to_string(v) + " carries no literal");
  }
  return Literal::decode(literal_of_node[v]);
}

SiblingAssignment assign_literals(const TreeHypergraph& joined) {
  if (joined.stage != Stage::Joined) {
    throw Error(ErrorCode::PipelineOrder,
                "literals are assigned on the joined stage, got " +
                    std::string(stage_name(joined.stage)));
  }
  SiblingAssignment a;
  a.literal_of_node.assign(joined.tree.node_count(), 0);
  // sibling_pairs() walks parents breadth-first and rejects non-full trees.
  for (const auto& [left, right] : joined.tree.sibling_pairs()) {
    ++a.num_vars;
    const auto var = static_cast<std::int32_t>(a.num_vars);
    a.literal_of_node[left] = var;
    a.literal_of_node[right] = -var;
  }
  return a;
}

CnfFormula to_cnf(const TreeHypergraph& joined, const SiblingAssignment& a) {
  if (joined.stage != Stage::Joined) {
    throw Error(ErrorCode::PipelineOrder,
                "clauses are generated from the joined stage, got " +
                    std::string(stage_name(joined.stage)));
  }
  CnfFormula f(a.num_vars);
  std::uint64_t literal_total = 0;
  for (const PathEdge& e : joined.edges) literal_total += joined.edge_size(e);
  f.reserve(joined.edges.size(), literal_total);

  std::vector<std::int32_t> clause;
  std::vector<std::uint32_t> vars;
  for (const PathEdge& e : joined.edges) {
    clause.clear();
    vars.clear();
    for (NodeId v : joined.edge_vertices(e)) {
      const std::int32_t lit = a.literal_of_node[v];
      if (lit == 0) {
        throw Error(ErrorCode::ConstructionBug,
                    "edge vertex " + std::to_string(v) +
                        " carries no literal (root inside an edge?)");
      }
      clause.push_back(lit);
      vars.push_back(static_cast<std::uint32_t>(std::abs(lit)));
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
      throw Error(ErrorCode::ConstructionBug,
                  "clause for edge (" + std::to_string(e.top) + ", " +
                      std::to_string(e.bottom) + ") repeats a variable");
    }
    f.add_clause(clause);
  }
  return f;
}

CnfStats cnf_stats(const CnfFormula& f, std::uint32_t k) {
  CnfStats s;
  s.k = k;
  s.num_vars = f.num_vars();
  s.num_clauses = f.num_clauses();
  // Bounds 4*2^k/k and 2*2^k/k; k is small (checked upstream), so shifting
  // is exact.
  s.occurrence_bound = (std::uint64_t{1} << (k + 2)) / k;
  s.occurrence_bound_half = (std::uint64_t{1} << (k + 1)) / k;
  s.kst_threshold =
      static_cast<double>(std::uint64_t{1} << k) / (std::numbers::e * k);

  std::vector<std::uint64_t> pos(f.num_vars() + 1, 0);
  std::vector<std::uint64_t> neg(f.num_vars() + 1, 0);
  s.k_uniform = true;
  for (std::uint64_t c = 0; c < f.num_clauses(); ++c) {
    const auto lits = f.clause(c);
    ++s.width_histogram[static_cast<std::uint32_t>(lits.size())];
    if (lits.size() != k) s.k_uniform = false;
    for (std::int32_t lit : lits) {
      if (lit > 0) {
        ++pos[static_cast<std::uint32_t>(lit)];
      } else {
        ++neg[static_cast<std::uint32_t>(-lit)];
      }
    }
  }
  std::uint64_t occurrence_total = 0;
  for (std::uint32_t v = 1; v <= f.num_vars(); ++v) {
    s.max_variable_occurrences =
        std::max(s.max_variable_occurrences, pos[v] + neg[v]);
    s.max_literal_occurrences =
        std::max({s.max_literal_occurrences, pos[v], neg[v]});
    occurrence_total += pos[v] + neg[v];
  }
  s.mean_variable_occurrences =
      f.num_vars() == 0
          ? 0.0
          : static_cast<double>(occurrence_total) / f.num_vars();
  s.within_occurrence_bound = s.max_variable_occurrences <= s.occurrence_bound;
  s.within_occurrence_bound_half =
      s.max_variable_occurrences <= s.occurrence_bound_half;
  s.above_kst_threshold =
      static_cast<double>(s.max_variable_occurrences) > s.kst_threshold;
  return s;
}

nlohmann::ordered_json CnfStats::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["num_vars"] = num_vars;
  j["num_clauses"] = num_clauses;
  j["k_uniform"] = k_uniform;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [width, count] : width_histogram) {
    hist[std::to_string(width)] = count;
  }
  j["width_histogram"] = hist;
  j["max_variable_occurrences"] = max_variable_occurrences;
  j["mean_variable_occurrences"] = mean_variable_occurrences;
  j["max_literal_occurrences"] = max_literal_occurrences;
  j["occurrence_bound"] = occurrence_bound;
  j["occurrence_bound_half"] = occurrence_bound_half;
  j["within_occurrence_bound"] = within_occurrence_bound;
  j["within_occurrence_bound_half"] = within_occurrence_bound_half;
  j["kst_threshold"] = kst_threshold;
  j["above_kst_threshold"] = above_kst_threshold;
  return j;
}

namespace {

/// Buffered integer writer; ofstream::operator<< per literal is the
/// bottleneck at millions of clauses.
class DimacsWriter {
 public:
  explicit DimacsWriter(std::ostream& out) : out_(out) { buf_.reserve(kFlush); }
  ~DimacsWriter() { flush(); }

  void number(std::int64_t value) {
    char tmp[24];
    const auto res = std::to_chars(tmp, tmp + sizeof(tmp), value);
    buf_.append(tmp, res.ptr);
    maybe_flush();
  }
  void text(std::string_view s) {
    buf_.append(s);
    maybe_flush();
  }

  void flush() {
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }

 private:
  void maybe_flush() {
    if (buf_.size() >= kFlush) flush();
  }

  static constexpr std::size_t kFlush = 1 << 16;
  std::ostream& out_;
  std::string buf_;
};

}  // namespace

void write_dimacs(const CnfFormula& f, std::ostream& out,
                  std::span<const std::string> comments) {
  DimacsWriter w(out);
  for (const std::string& c : comments) {
    w.text("c ");
    w.text(c);
    w.text("\n");
  }
  w.text("p cnf ");
  w.number(f.num_vars());
  w.text(" ");
  w.number(static_cast<std::int64_t>(f.num_clauses()));
  w.text("\n");
  for (std::uint64_t c = 0; c < f.num_clauses(); ++c) {
    for (std::int32_t lit : f.clause(c)) {
      w.number(lit);
      w.text(" ");
    }
    w.text("0\n");
  }
  w.flush();
  if (!out) {
    throw Error(ErrorCode::Io, "writing DIMACS output failed");
  }
}

namespace {

[[noreturn]] void parse_fail(std::uint64_t line, const std::string& what) {
  throw Error(ErrorCode::Parse,
              "DIMACS parse error at line " + std::to_string(line) + ": " +
                  what);
}

}  // namespace

CnfFormula read_dimacs(std::istream& in) {
  std::string line;
  std::uint64_t line_no = 0;
  bool header_seen = false;
  std::uint64_t declared_vars = 0;
  std::uint64_t declared_clauses = 0;
  CnfFormula f;
  std::vector<std::int32_t> clause;
  std::uint64_t clauses_read = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const char* p = line.c_str();
    const char* end = p + line.size();
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) continue;
    if (*p == 'c') continue;  // comment
    if (*p == 'p') {
      if (header_seen) parse_fail(line_no, "duplicate header");
      unsigned long long nv = 0, nc = 0;
      char tag[4] = {0};
      if (std::sscanf(p, "p %3s %llu %llu", tag, &nv, &nc) != 3 ||
          std::string_view(tag) != "cnf") {
        parse_fail(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      if (nv > 0x7fffffffULL) parse_fail(line_no, "variable count too large");
      declared_vars = nv;
      declared_clauses = nc;
      f = CnfFormula(static_cast<std::uint32_t>(nv));
      header_seen = true;
      continue;
    }
    if (!header_seen) parse_fail(line_no, "clause before 'p cnf' header");
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      std::int32_t lit = 0;
      const auto res = std::from_chars(p, end, lit);
      if (res.ec != std::errc{}) {
        parse_fail(line_no, "expected a literal, got '" +
                                std::string(p, end) + "'");
      }
      p = res.ptr;
      if (p < end && *p != ' ' && *p != '\t' && *p != '\r') {
        parse_fail(line_no, "trailing junk after literal");
      }
      if (lit == 0) {
        try {
          f.add_clause(clause);
        } catch (const Error& e) {
          parse_fail(line_no, e.what());
        }
        clause.clear();
        ++clauses_read;
      } else {
        if (static_cast<std::uint64_t>(std::abs(lit)) > declared_vars) {
          parse_fail(line_no, "literal " + std::to_string(lit) +
                                  " out of range for " +
                                  std::to_string(declared_vars) + " variables");
        }
        clause.push_back(lit);
      }
    }
  }
  if (!header_seen) parse_fail(line_no, "missing 'p cnf' header");
  if (!clause.empty()) {
    parse_fail(line_no, "last clause is missing its 0 terminator");
  }
  if (clauses_read != declared_clauses) {
    parse_fail(line_no, "header declared " + std::to_string(declared_clauses) +
                            " clauses but " + std::to_string(clauses_read) +
                            " were read");
  }
  return f;
}

}  // namespace kstree
