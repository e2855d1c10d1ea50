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
#include <string>
#include <vector>

#include "cnf.hpp"
#include "construction.hpp"
#include "error.hpp"

using namespace kstree;

namespace {

std::vector<std::int32_t> clause_of(const CnfFormula& f, std::uint64_t i) {
  const auto span = f.clause(i);
  return {span.begin(), span.end()};
}

CnfFormula formula_for(std::uint32_t k) {
  const StageParams p = make_params(k);
  const TreeHypergraph joined = build_stage(p, Stage::Joined);
  return to_cnf(joined, assign_literals(joined));
}

}  // namespace

TEST_CASE("literal encoding") {
  const Literal a{5, false};
  const Literal b{5, true};
  CHECK(a.encode() == 5);
  CHECK(b.encode() == -5);
  CHECK(Literal::decode(-7).variable == 7);
  CHECK(Literal::decode(-7).negated);
  CHECK_FALSE(Literal::decode(7).negated);
}

TEST_CASE("formula stores clauses verbatim") {
  CnfFormula f(4);
  f.add_clause(std::vector<std::int32_t>{1, -2});
  f.add_clause(std::vector<std::int32_t>{-3, 4, 1});
  CHECK(f.num_vars() == 4);
  CHECK(f.num_clauses() == 2);
  CHECK(f.num_literals() == 5);
  CHECK(clause_of(f, 0) == std::vector<std::int32_t>{1, -2});
  CHECK(clause_of(f, 1) == std::vector<std::int32_t>{-3, 4, 1});
}

TEST_CASE("formula rejects malformed clauses") {
  CnfFormula f(3);
  CHECK_THROWS_AS(f.add_clause(std::vector<std::int32_t>{1, 0}), Error);
  CHECK_THROWS_AS(f.add_clause(std::vector<std::int32_t>{4}), Error);
  CHECK_THROWS_AS(f.add_clause(std::vector<std::int32_t>{-4}), Error);
  CHECK_THROWS_AS(f.add_clause(std::vector<std::int32_t>{1, -1}), Error);
  CHECK_THROWS_AS(f.add_clause(std::vector<std::int32_t>{2, 3, 2}), Error);
  CHECK(f.num_clauses() == 0);
}

TEST_CASE("sibling literals for k=2") {
  const StageParams p = make_params(2);
  const TreeHypergraph joined = build_stage(p, Stage::Joined);
  const SiblingAssignment a = assign_literals(joined);
  CHECK(a.num_vars == 3);
  CHECK(a.literal_of_node ==
        std::vector<std::int32_t>{0, 1, 2, -2, -1, 3, -3});
  CHECK(a.at(1).encode() == 1);
  CHECK(a.at(4).encode() == -1);
  CHECK_THROWS_AS(a.at(0), Error);
}

TEST_CASE("assign_literals requires the joined stage") {
  const StageParams p = make_params(2);
  const TreeHypergraph fin = build_stage(p, Stage::Final);
  CHECK_THROWS_AS(assign_literals(fin), Error);
}

TEST_CASE("k=2 formula matches the hand expansion") {
  const CnfFormula f = formula_for(2);
  CHECK(f.num_vars() == 3);
  REQUIRE(f.num_clauses() == 4);
  CHECK(clause_of(f, 0) == std::vector<std::int32_t>{1, 2});
  CHECK(clause_of(f, 1) == std::vector<std::int32_t>{1, -2});
  CHECK(clause_of(f, 2) == std::vector<std::int32_t>{-1, 3});
  CHECK(clause_of(f, 3) == std::vector<std::int32_t>{-1, -3});
}

TEST_CASE("clause literals run top to bottom") {
  const StageParams p = make_params(4);
  const TreeHypergraph joined = build_stage(p, Stage::Joined);
  const SiblingAssignment a = assign_literals(joined);
  const CnfFormula f = to_cnf(joined, a);
  REQUIRE(f.num_clauses() == 24);
  for (std::uint64_t c = 0; c < f.num_clauses(); ++c) {
    const auto vertices = joined.edge_vertices(joined.edges[c]);
    const auto lits = f.clause(c);
    REQUIRE(lits.size() == vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      CHECK(lits[i] == a.literal_of_node[vertices[i]]);
    }
  }
}

TEST_CASE("stats for the generated formulas") {
  const CnfStats s2 = cnf_stats(formula_for(2), 2);
  CHECK(s2.k_uniform);
  CHECK(s2.max_variable_occurrences == 4);
  CHECK(s2.occurrence_bound == 8);
  CHECK(s2.occurrence_bound_half == 4);
  CHECK(s2.within_occurrence_bound);
  CHECK(s2.within_occurrence_bound_half);
  CHECK(s2.kst_threshold == doctest::Approx(0.7357588823).epsilon(1e-9));
  CHECK(s2.above_kst_threshold);
  CHECK(s2.width_histogram == std::map<std::uint32_t, std::uint64_t>{{2, 4}});

  const CnfStats s4 = cnf_stats(formula_for(4), 4);
  CHECK(s4.k_uniform);
  CHECK(s4.num_vars == 23);
  CHECK(s4.num_clauses == 24);
  CHECK(s4.max_variable_occurrences == 12);
  CHECK(s4.occurrence_bound == 16);
  CHECK(s4.within_occurrence_bound);
  CHECK(s4.kst_threshold == doctest::Approx(1.4715177646).epsilon(1e-9));
}

TEST_CASE("stats flag non-uniform widths") {
  CnfFormula f(3);
  f.add_clause(std::vector<std::int32_t>{1, 2});
  f.add_clause(std::vector<std::int32_t>{1, 2, 3});
  const CnfStats s = cnf_stats(f, 2);
  CHECK_FALSE(s.k_uniform);
  CHECK(s.width_histogram ==
        std::map<std::uint32_t, std::uint64_t>{{2, 1}, {3, 1}});
}

TEST_CASE("stats serialize with stable field order") {
  const nlohmann::ordered_json j = cnf_stats(formula_for(2), 2).to_json();
  auto it = j.begin();
  CHECK(it.key() == "k");
  CHECK(j["num_vars"] == 3);
  CHECK(j["num_clauses"] == 4);
  CHECK(j["width_histogram"]["2"] == 4);
  CHECK(j["max_variable_occurrences"] == 4);
  CHECK(j["within_occurrence_bound"] == true);
  CHECK(j["above_kst_threshold"] == true);
}

TEST_CASE("dimacs writer output for k=2") {
  const CnfFormula f = formula_for(2);
  std::ostringstream os;
  write_dimacs(f, os);
  CHECK(os.str() ==
        "p cnf 3 4\n"
        "1 2 0\n"
        "1 -2 0\n"
        "-1 3 0\n"
        "-1 -3 0\n");

  std::ostringstream with_comments;
  const std::vector<std::string> comments{"alpha", "beta"};
  write_dimacs(f, with_comments, comments);
  CHECK(with_comments.str().rfind("c alpha\nc beta\np cnf 3 4\n", 0) == 0);
}

TEST_CASE("dimacs round trip") {
  for (std::uint32_t k : {2u, 4u, 8u}) {
    const CnfFormula f = formula_for(k);
    std::ostringstream os;
    write_dimacs(f, os);
    std::istringstream is(os.str());
    const CnfFormula g = read_dimacs(is);
    CHECK(f == g);
  }
}

TEST_CASE("dimacs reader tolerates comments, blanks and CR") {
  std::istringstream is(
      "c a comment\n"
      "\n"
      "p cnf 3 2\r\n"
      "  1 -2 0\n"
      "c mid-file comment\n"
      "3 0\n");
  const CnfFormula f = read_dimacs(is);
  CHECK(f.num_vars() == 3);
  CHECK(f.num_clauses() == 2);
  CHECK(clause_of(f, 0) == std::vector<std::int32_t>{1, -2});
  CHECK(clause_of(f, 1) == std::vector<std::int32_t>{3});
}

TEST_CASE("dimacs reader accepts clauses split across lines") {
  std::istringstream is("p cnf 4 1\n1 2\n3 4 0\n");
  const CnfFormula f = read_dimacs(is);
  CHECK(f.num_clauses() == 1);
  CHECK(clause_of(f, 0) == std::vector<std::int32_t>{1, 2, 3, 4});
}

TEST_CASE("dimacs reader rejects malformed input") {
  auto expect_parse_error = [](const std::string& text,
                               const std::string& needle) {
    std::istringstream is(text);
    try {
      read_dimacs(is);
      FAIL("expected a parse error for: " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse_error("1 2 0\n", "before 'p cnf' header");
  expect_parse_error("", "missing 'p cnf' header");
  expect_parse_error("p dnf 2 1\n1 0\n", "malformed header");
  expect_parse_error("p cnf 2 1\np cnf 2 1\n1 0\n", "duplicate header");
  expect_parse_error("p cnf 2 1\n3 0\n", "out of range");
  expect_parse_error("p cnf 2 1\n1 2\n", "missing its 0 terminator");
  expect_parse_error("p cnf 2 2\n1 0\n", "header declared 2 clauses");
  expect_parse_error("p cnf 2 1\n1x 0\n", "junk");
  expect_parse_error("p cnf 2 1\nfoo 0\n", "expected a literal");
}

TEST_CASE("to_cnf requires the joined stage") {
  const StageParams p = make_params(2);
  const TreeHypergraph joined = build_stage(p, Stage::Joined);
  const SiblingAssignment a = assign_literals(joined);
  const TreeHypergraph fin = build_stage(p, Stage::Final);
  CHECK_THROWS_AS(to_cnf(fin, a), Error);
}
