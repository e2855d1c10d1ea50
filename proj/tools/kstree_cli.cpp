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

// Command line front end.  Talks to the library exclusively through the C
// API in kstree.h; everything else here is argument handling and printing.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kstree.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct ConstructionDeleter {
  void operator()(ks_construction* c) const { ks_construction_destroy(c); }
};
using ConstructionPtr = std::unique_ptr<ks_construction, ConstructionDeleter>;

struct FormulaDeleter {
  void operator()(ks_formula* f) const { ks_formula_destroy(f); }
};
using FormulaPtr = std::unique_ptr<ks_formula, FormulaDeleter>;

struct StringDeleter {
  void operator()(char* s) const { ks_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

int fail(ks_status status) {
  std::cerr << "error: " << ks_last_error() << "\n";
  return status == KS_ERR_INVALID_ARGUMENT || status == KS_ERR_UNSUPPORTED_K
             ? kExitUsage
             : kExitFail;
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

bool parse_stage(const std::string& name, ks_stage* out) {
  if (name == "base") *out = KS_STAGE_BASE;
  else if (name == "split") *out = KS_STAGE_SPLIT;
  else if (name == "equalized") *out = KS_STAGE_EQUALIZED;
  else if (name == "final") *out = KS_STAGE_FINAL;
  else if (name == "joined") *out = KS_STAGE_JOINED;
  else return false;
  return true;
}

const char* solve_status_name(ks_solve_status status) {
  switch (status) {
    case KS_SOLVE_SAT:             return "SAT";
    case KS_SOLVE_UNSAT:           return "UNSAT";
    case KS_SOLVE_BUDGET_EXCEEDED: return "BUDGET_EXCEEDED";
  }
  return "unknown";
}

struct BuildOptions {
  std::uint32_t k = 0;
  std::string stage = "joined";
  std::string out_path;
  std::string dot_path;
  bool stats = false;
};

int run_build(const BuildOptions& opt) {
  ks_stage stage;
  if (!parse_stage(opt.stage, &stage)) {
    return usage_error("unknown stage '" + opt.stage + "'");
  }
  if (!opt.out_path.empty() && stage != KS_STAGE_JOINED) {
    return usage_error("--out requires --stage joined");
  }
  if (opt.stats && stage != KS_STAGE_JOINED) {
    return usage_error("--stats requires --stage joined");
  }

  ks_construction* raw = nullptr;
  if (ks_status st = ks_construction_create(opt.k, stage, &raw); st != KS_OK) {
    return fail(st);
  }
  ConstructionPtr c(raw);

  uint64_t nodes = 0, edge_records = 0, edge_instances = 0, degree = 0;
  uint32_t vertex = 0;
  if (ks_status st = ks_construction_node_count(c.get(), &nodes); st != KS_OK)
    return fail(st);
  if (ks_status st = ks_construction_edge_count(c.get(), &edge_records);
      st != KS_OK)
    return fail(st);
  if (ks_status st = ks_construction_edge_instances(c.get(), &edge_instances);
      st != KS_OK)
    return fail(st);
  if (ks_status st = ks_construction_max_degree(c.get(), &degree, &vertex);
      st != KS_OK)
    return fail(st);

  std::string stats_json;
  if (stage == KS_STAGE_JOINED) {
    ks_formula* fraw = nullptr;
    if (ks_status st = ks_construction_formula(c.get(), &fraw); st != KS_OK) {
      return fail(st);
    }
    FormulaPtr f(fraw);

    char* sraw = nullptr;
    if (ks_status st = ks_formula_stats_json(f.get(), opt.k, &sraw);
        st != KS_OK) {
      return fail(st);
    }
    StringPtr stats_guard(sraw);
    stats_json = sraw;
    const nlohmann::json s = nlohmann::json::parse(stats_json);

    if (!opt.out_path.empty()) {
      const uint64_t d = (std::uint64_t{1} << opt.k) / opt.k;
      const std::string line1 = "kstree cnf format 1";
      const std::string line2 =
          "k " + std::to_string(opt.k) + " d " + std::to_string(d) +
          " occurrence_bound " + std::to_string(4 * d);
      const char* comments[] = {line1.c_str(), line2.c_str()};
      if (ks_status st = ks_formula_write_dimacs(f.get(), opt.out_path.c_str(),
                                                 comments, 2);
          st != KS_OK) {
        return fail(st);
      }
    }

    std::cout << "k=" << opt.k << " stage=" << opt.stage << " nodes=" << nodes
              << " vars=" << s["num_vars"].get<std::uint64_t>()
              << " clauses=" << s["num_clauses"].get<std::uint64_t>()
              << " max_occurrence="
              << s["max_variable_occurrences"].get<std::uint64_t>()
              << " occurrence_bound="
              << s["occurrence_bound"].get<std::uint64_t>() << "\n";
  } else {
    std::cout << "k=" << opt.k << " stage=" << opt.stage << " nodes=" << nodes
              << " edge_records=" << edge_records
              << " edge_instances=" << edge_instances
              << " max_degree=" << degree << " vertex=" << vertex << "\n";
  }

  if (!opt.dot_path.empty()) {
    if (ks_status st =
            ks_construction_write_dot(c.get(), opt.dot_path.c_str());
        st != KS_OK) {
      return fail(st);
    }
  }
  if (opt.stats) {
    std::cout << nlohmann::json::parse(stats_json).dump(2) << "\n";
  }
  return kExitPass;
}

struct VerifyOptions {
  std::uint32_t k = 0;
  std::string report_path;
};

int run_verify(const VerifyOptions& opt) {
  int pass = 0;
  char* raw = nullptr;
  if (ks_status st = ks_verify_pipeline(opt.k, &pass, &raw); st != KS_OK) {
    return fail(st);
  }
  StringPtr report(raw);
  const nlohmann::json j = nlohmann::json::parse(report.get());

  for (const nlohmann::json& r : j["reports"]) {
    std::cout << "check " << r["check"].get<std::string>() << " ["
              << r["stage"].get<std::string>() << "]: "
              << (r["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    for (const nlohmann::json& v : r["violations"]) {
      std::cout << "  " << v["subject"].get<std::string>() << ": expected "
                << v["expected"].get<std::string>() << ", found "
                << v["found"].get<std::string>() << "\n";
    }
  }
  std::cout << "verify k=" << opt.k << ": " << (pass ? "pass" : "FAIL")
            << "\n";

  if (!opt.report_path.empty()) {
    std::FILE* out = std::fopen(opt.report_path.c_str(), "wb");
    if (out == nullptr) {
      std::cerr << "error: cannot open " << opt.report_path
                << " for writing\n";
      return kExitFail;
    }
    const std::string text = j.dump(2);
    std::fwrite(text.data(), 1, text.size(), out);
    std::fputc('\n', out);
    std::fclose(out);
  }
  return pass ? kExitPass : kExitFail;
}

struct SolveOptions {
  std::uint32_t k = 0;
  std::string cnf_path;
  std::string engine = "dpll";
  std::uint64_t budget = 0;
};

int run_solve(const SolveOptions& opt) {
  const bool generated = opt.k != 0;
  if (generated == !opt.cnf_path.empty()) {
    return usage_error("exactly one of --k and --cnf is required");
  }
  ks_solver_engine engine;
  if (opt.engine == "brute") {
    engine = KS_SOLVER_BRUTE_FORCE;
  } else if (opt.engine == "dpll") {
    engine = KS_SOLVER_DPLL;
  } else {
    return usage_error("unknown engine '" + opt.engine +
                       "' (expected brute or dpll)");
  }

  FormulaPtr f;
  if (generated) {
    ks_construction* craw = nullptr;
    if (ks_status st = ks_construction_create(opt.k, KS_STAGE_JOINED, &craw);
        st != KS_OK) {
      return fail(st);
    }
    ConstructionPtr c(craw);
    ks_formula* fraw = nullptr;
    if (ks_status st = ks_construction_formula(c.get(), &fraw); st != KS_OK) {
      return fail(st);
    }
    f.reset(fraw);
  } else {
    ks_formula* fraw = nullptr;
    if (ks_status st = ks_formula_read_dimacs(opt.cnf_path.c_str(), &fraw);
        st != KS_OK) {
      return fail(st);
    }
    f.reset(fraw);
  }

  uint32_t num_vars = 0;
  if (ks_status st = ks_formula_num_vars(f.get(), &num_vars); st != KS_OK) {
    return fail(st);
  }
  std::vector<uint8_t> model(num_vars, 0);
  ks_solve_result result{};
  if (ks_status st = ks_formula_solve(f.get(), engine, opt.budget, &result,
                                      model.data());
      st != KS_OK) {
    return fail(st);
  }

  std::cout << "engine=" << opt.engine
            << " status=" << solve_status_name(result.status)
            << " decisions=" << result.decisions
            << " propagations=" << result.propagations << "\n";
  if (result.status == KS_SOLVE_SAT) {
    std::cout << "v";
    for (uint32_t v = 1; v <= num_vars; ++v) {
      std::cout << ' ' << (model[v - 1] != 0 ? static_cast<int>(v)
                                             : -static_cast<int>(v));
    }
    std::cout << " 0\n";
  }

  if (generated) {
    // The generated formulas are unsatisfiable; anything else is a failure.
    return result.status == KS_SOLVE_UNSAT ? kExitPass : kExitFail;
  }
  return result.status == KS_SOLVE_BUDGET_EXCEEDED ? kExitFail : kExitPass;
}

struct WitnessOptions {
  std::uint32_t k = 0;
  std::string assignment;
  bool random = false;
  std::uint64_t seed = 1;
  bool json = false;
};

int run_witness(const WitnessOptions& opt) {
  if (opt.random == !opt.assignment.empty()) {
    return usage_error("exactly one of --assignment and --random is required");
  }

  ks_construction* craw = nullptr;
  if (ks_status st = ks_construction_create(opt.k, KS_STAGE_JOINED, &craw);
      st != KS_OK) {
    return fail(st);
  }
  ConstructionPtr c(craw);

  uint32_t num_vars = 0;
  if (ks_status st = ks_construction_variable_count(c.get(), &num_vars);
      st != KS_OK) {
    return fail(st);
  }

  std::vector<uint8_t> bits(num_vars, 0);
  if (opt.random) {
    std::mt19937_64 gen(opt.seed);
    for (uint32_t i = 0; i < num_vars; ++i) {
      bits[i] = static_cast<uint8_t>(gen() & 1);
    }
  } else {
    if (opt.assignment.size() != num_vars) {
      return usage_error("--assignment needs " + std::to_string(num_vars) +
                         " bits, got " +
                         std::to_string(opt.assignment.size()));
    }
    for (uint32_t i = 0; i < num_vars; ++i) {
      const char b = opt.assignment[i];
      if (b != '0' && b != '1') {
        return usage_error("--assignment must consist of 0s and 1s");
      }
      bits[i] = b == '1' ? 1 : 0;
    }
  }

  char* raw = nullptr;
  if (ks_status st =
          ks_construction_witness(c.get(), bits.data(), bits.size(), &raw);
      st != KS_OK) {
    return fail(st);
  }
  StringPtr witness(raw);
  const nlohmann::json w = nlohmann::json::parse(witness.get());

  if (opt.json) {
    std::cout << w.dump(2) << "\n";
    return kExitPass;
  }
  std::cout << "falsified_clause="
            << w["falsified_clause_index"].get<std::uint64_t>() << "\n";
  std::cout << "branch=";
  bool first = true;
  for (const nlohmann::json& v : w["branch"]) {
    if (!first) std::cout << ' ';
    std::cout << v.get<std::uint64_t>();
    first = false;
  }
  std::cout << "\nbranch_literals=";
  first = true;
  for (const nlohmann::json& v : w["branch_literals"]) {
    if (!first) std::cout << ' ';
    std::cout << v.get<std::int64_t>();
    first = false;
  }
  std::cout << "\n";
  return kExitPass;
}

struct StatsOptions {
  std::uint32_t k = 0;
  std::string cnf_path;
};

int run_stats(const StatsOptions& opt) {
  const bool generated = opt.k != 0;
  if (generated == !opt.cnf_path.empty()) {
    return usage_error("exactly one of --k and --cnf is required");
  }

  FormulaPtr f;
  if (generated) {
    ks_construction* craw = nullptr;
    if (ks_status st = ks_construction_create(opt.k, KS_STAGE_JOINED, &craw);
        st != KS_OK) {
      return fail(st);
    }
    ConstructionPtr c(craw);
    ks_formula* fraw = nullptr;
    if (ks_status st = ks_construction_formula(c.get(), &fraw); st != KS_OK) {
      return fail(st);
    }
    f.reset(fraw);
  } else {
    ks_formula* fraw = nullptr;
    if (ks_status st = ks_formula_read_dimacs(opt.cnf_path.c_str(), &fraw);
        st != KS_OK) {
      return fail(st);
    }
    f.reset(fraw);
  }

  char* raw = nullptr;
  if (ks_status st = ks_formula_stats_json(f.get(), opt.k, &raw);
      st != KS_OK) {
    return fail(st);
  }
  StringPtr stats(raw);
  std::cout << nlohmann::json::parse(stats.get()).dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unsatisfiable k-CNF formulas with few occurrences per variable"};
  app.require_subcommand(1);

  BuildOptions build_opt;
  CLI::App* build = app.add_subcommand(
      "build", "build the construction and export its artifacts");
  build->add_option("--k", build_opt.k, "clause width (a power of 2, >= 2)")
      ->required();
  build->add_option("--stage", build_opt.stage,
                    "base, split, equalized, final or joined");
  build->add_option("--out", build_opt.out_path, "write DIMACS CNF here");
  build->add_option("--dot", build_opt.dot_path, "write Graphviz DOT here");
  build->add_flag("--stats", build_opt.stats, "print formula statistics");

  VerifyOptions verify_opt;
  CLI::App* verify =
      app.add_subcommand("verify", "check every stage of the construction");
  verify->add_option("--k", verify_opt.k, "clause width")->required();
  verify->add_option("--report", verify_opt.report_path,
                     "write the JSON report here");

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "run a SAT solver");
  solve->add_option("--k", solve_opt.k, "solve the generated formula for k");
  solve->add_option("--cnf", solve_opt.cnf_path, "solve this DIMACS file");
  solve->add_option("--engine", solve_opt.engine, "brute or dpll");
  solve->add_option("--budget", solve_opt.budget,
                    "DPLL decision budget (0 = default)");

  WitnessOptions witness_opt;
  CLI::App* witness = app.add_subcommand(
      "witness", "find the clause falsified by an assignment");
  witness->add_option("--k", witness_opt.k, "clause width")->required();
  witness->add_option("--assignment", witness_opt.assignment,
                      "assignment as a bit string, variable 1 first");
  witness->add_flag("--random", witness_opt.random,
                    "draw the assignment from --seed");
  witness->add_option("--seed", witness_opt.seed, "seed for --random");
  witness->add_flag("--json", witness_opt.json, "print the witness as JSON");

  StatsOptions stats_opt;
  CLI::App* stats =
      app.add_subcommand("stats", "print formula statistics as JSON");
  stats->add_option("--k", stats_opt.k, "use the generated formula for k");
  stats->add_option("--cnf", stats_opt.cnf_path, "use this DIMACS file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (build->parsed()) return run_build(build_opt);
  if (verify->parsed()) return run_verify(verify_opt);
  if (solve->parsed()) return run_solve(solve_opt);
  if (witness->parsed()) return run_witness(witness_opt);
  if (stats->parsed()) return run_stats(stats_opt);
  return kExitUsage;
}
