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

// These tests exercise the shared library exactly as an external client
// would: through kstree.h only.

#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "kstree.h"

namespace {

struct Construction {
  ks_construction* c = nullptr;
  ~Construction() { ks_construction_destroy(c); }
};

struct Formula {
  ks_formula* f = nullptr;
  ~Formula() { ks_formula_destroy(f); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ks_string_free(s); }
};

}  // namespace

TEST_CASE("construction handle exposes the k=4 instance") {
  Construction h;
  REQUIRE(ks_construction_create(4, KS_STAGE_JOINED, &h.c) == KS_OK);

  uint32_t k = 0;
  CHECK(ks_construction_k(h.c, &k) == KS_OK);
  CHECK(k == 4);

  ks_stage stage;
  CHECK(ks_construction_stage(h.c, &stage) == KS_OK);
  CHECK(stage == KS_STAGE_JOINED);

  uint64_t nodes = 0, edges = 0, instances = 0, branches = 0;
  CHECK(ks_construction_node_count(h.c, &nodes) == KS_OK);
  CHECK(nodes == 47);
  CHECK(ks_construction_edge_count(h.c, &edges) == KS_OK);
  CHECK(edges == 24);
  CHECK(ks_construction_edge_instances(h.c, &instances) == KS_OK);
  CHECK(instances == 24);
  CHECK(ks_construction_branch_count(h.c, &branches) == KS_OK);
  CHECK(branches == 24);

  uint64_t degree = 0;
  uint32_t vertex = 0;
  CHECK(ks_construction_max_degree(h.c, &degree, &vertex) == KS_OK);
  CHECK(degree == 6);
  CHECK(vertex == 2);

  uint32_t vars = 0;
  CHECK(ks_construction_variable_count(h.c, &vars) == KS_OK);
  CHECK(vars == 23);
}

TEST_CASE("create rejects unsupported k with a clear message") {
  ks_construction* c = nullptr;
  const ks_status st = ks_construction_create(6, KS_STAGE_JOINED, &c);
  CHECK(st == KS_ERR_UNSUPPORTED_K);
  CHECK(c == nullptr);
  CHECK(std::string(ks_last_error()).find("k must be a power of 2") !=
        std::string::npos);
  CHECK(std::string(ks_status_name(st)) == "KS_ERR_UNSUPPORTED_K");
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  CHECK(ks_construction_create(4, KS_STAGE_JOINED, nullptr) ==
        KS_ERR_INVALID_ARGUMENT);
  uint64_t n = 0;
  CHECK(ks_construction_node_count(nullptr, &n) == KS_ERR_INVALID_ARGUMENT);
  CHECK(ks_formula_num_vars(nullptr, nullptr) == KS_ERR_INVALID_ARGUMENT);
  ks_construction_destroy(nullptr);  // must be a no-op
  ks_formula_destroy(nullptr);
  ks_string_free(nullptr);
}

TEST_CASE("stage getters work below the joined stage") {
  Construction h;
  REQUIRE(ks_construction_create(4, KS_STAGE_BASE, &h.c) == KS_OK);
  uint64_t nodes = 0;
  CHECK(ks_construction_node_count(h.c, &nodes) == KS_OK);
  CHECK(nodes == 7);

  uint32_t vars = 0;
  CHECK(ks_construction_variable_count(h.c, &vars) == KS_ERR_PIPELINE_ORDER);
  ks_formula* f = nullptr;
  CHECK(ks_construction_formula(h.c, &f) == KS_ERR_PIPELINE_ORDER);
}

TEST_CASE("per-stage verification and full pipeline verification") {
  Construction h;
  REQUIRE(ks_construction_create(8, KS_STAGE_SPLIT, &h.c) == KS_OK);
  int pass = 0;
  OwnedString report;
  CHECK(ks_construction_verify(h.c, &pass, &report.s) == KS_OK);
  CHECK(pass == 1);
  const auto j = nlohmann::json::parse(report.s);
  CHECK(j["k"] == 8);
  CHECK(j["stage"] == "split");
  CHECK(j["pass"] == true);
  CHECK(j["reports"].is_array());

  int pipeline_pass = 0;
  OwnedString pipeline_report;
  CHECK(ks_verify_pipeline(4, &pipeline_pass, &pipeline_report.s) == KS_OK);
  CHECK(pipeline_pass == 1);
  const auto pj = nlohmann::json::parse(pipeline_report.s);
  CHECK(pj["reports"].size() == 7);

  // The report argument is optional.
  CHECK(ks_verify_pipeline(2, &pipeline_pass, nullptr) == KS_OK);
  CHECK(pipeline_pass == 1);
}

TEST_CASE("formula extraction, dimacs files and stats") {
  Construction h;
  REQUIRE(ks_construction_create(4, KS_STAGE_JOINED, &h.c) == KS_OK);
  Formula f;
  REQUIRE(ks_construction_formula(h.c, &f.f) == KS_OK);

  uint32_t vars = 0;
  uint64_t clauses = 0;
  CHECK(ks_formula_num_vars(f.f, &vars) == KS_OK);
  CHECK(vars == 23);
  CHECK(ks_formula_num_clauses(f.f, &clauses) == KS_OK);
  CHECK(clauses == 24);

  const std::string path = "capi_test_k4.cnf";
  const char* comments[] = {"written by the capi test"};
  REQUIRE(ks_formula_write_dimacs(f.f, path.c_str(), comments, 1) == KS_OK);

  Formula g;
  REQUIRE(ks_formula_read_dimacs(path.c_str(), &g.f) == KS_OK);
  uint32_t vars2 = 0;
  CHECK(ks_formula_num_vars(g.f, &vars2) == KS_OK);
  CHECK(vars2 == vars);

  OwnedString stats;
  REQUIRE(ks_formula_stats_json(g.f, 4, &stats.s) == KS_OK);
  const auto j = nlohmann::json::parse(stats.s);
  CHECK(j["k"] == 4);
  CHECK(j["max_variable_occurrences"] == 12);
  CHECK(j["occurrence_bound"] == 16);
  CHECK(j["within_occurrence_bound"] == true);

  // k = 0 infers the width from the formula itself.
  OwnedString inferred;
  REQUIRE(ks_formula_stats_json(g.f, 0, &inferred.s) == KS_OK);
  CHECK(nlohmann::json::parse(inferred.s)["k"] == 4);

  std::remove(path.c_str());
}

TEST_CASE("read errors carry parse diagnostics") {
  const std::string path = "capi_test_bad.cnf";
  std::FILE* out = std::fopen(path.c_str(), "wb");
  REQUIRE(out != nullptr);
  std::fputs("p cnf 2 1\n1 2\n", out);  // missing terminator
  std::fclose(out);

  ks_formula* f = nullptr;
  CHECK(ks_formula_read_dimacs(path.c_str(), &f) == KS_ERR_PARSE);
  CHECK(std::string(ks_last_error()).find("0 terminator") !=
        std::string::npos);
  CHECK(ks_formula_read_dimacs("does_not_exist.cnf", &f) == KS_ERR_IO);
  std::remove(path.c_str());
}

TEST_CASE("both solver engines find the formulas unsatisfiable") {
  Construction h;
  REQUIRE(ks_construction_create(2, KS_STAGE_JOINED, &h.c) == KS_OK);
  Formula f;
  REQUIRE(ks_construction_formula(h.c, &f.f) == KS_OK);

  ks_solve_result brute{};
  CHECK(ks_formula_solve(f.f, KS_SOLVER_BRUTE_FORCE, 0, &brute, nullptr) ==
        KS_OK);
  CHECK(brute.status == KS_SOLVE_UNSAT);
  CHECK(brute.decisions == 8);

  ks_solve_result dpll{};
  CHECK(ks_formula_solve(f.f, KS_SOLVER_DPLL, 0, &dpll, nullptr) == KS_OK);
  CHECK(dpll.status == KS_SOLVE_UNSAT);
  CHECK(dpll.decisions == 1);

  ks_solve_result budget{};
  CHECK(ks_formula_solve(f.f, KS_SOLVER_DPLL, 1, &budget, nullptr) == KS_OK);
  CHECK(budget.status == KS_SOLVE_UNSAT);  // one decision suffices for k=2
}

TEST_CASE("solving a satisfiable file returns a model") {
  const std::string path = "capi_test_sat.cnf";
  std::FILE* out = std::fopen(path.c_str(), "wb");
  REQUIRE(out != nullptr);
  std::fputs("p cnf 2 2\n-1 2 0\n1 0\n", out);
  std::fclose(out);

  Formula f;
  REQUIRE(ks_formula_read_dimacs(path.c_str(), &f.f) == KS_OK);
  std::vector<uint8_t> model(2, 9);
  ks_solve_result r{};
  CHECK(ks_formula_solve(f.f, KS_SOLVER_BRUTE_FORCE, 0, &r, model.data()) ==
        KS_OK);
  CHECK(r.status == KS_SOLVE_SAT);
  CHECK(model[0] == 1);
  CHECK(model[1] == 1);
  std::remove(path.c_str());
}

TEST_CASE("witness walks agree with the hand trace") {
  Construction h;
  REQUIRE(ks_construction_create(2, KS_STAGE_JOINED, &h.c) == KS_OK);
  const uint8_t all_true[3] = {1, 1, 1};
  OwnedString w;
  REQUIRE(ks_construction_witness(h.c, all_true, 3, &w.s) == KS_OK);
  const auto j = nlohmann::json::parse(w.s);
  CHECK(j["falsified_clause_index"] == 3);
  CHECK(j["branch"] == nlohmann::json::array({0, 4, 6}));

  const uint8_t short_alpha[2] = {1, 1};
  CHECK(ks_construction_witness(h.c, short_alpha, 2, &w.s) ==
        KS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("dot export writes a file") {
  Construction h;
  REQUIRE(ks_construction_create(2, KS_STAGE_BASE, &h.c) == KS_OK);
  const std::string path = "capi_test_tree.dot";
  CHECK(ks_construction_write_dot(h.c, path.c_str()) == KS_OK);
  std::FILE* in = std::fopen(path.c_str(), "rb");
  REQUIRE(in != nullptr);
  char buf[16] = {0};
  REQUIRE(std::fread(buf, 1, 7, in) == 7);
  std::fclose(in);
  CHECK(std::string(buf, 7) == "digraph");
  std::remove(path.c_str());
}
