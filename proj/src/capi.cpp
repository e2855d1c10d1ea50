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

#include "kstree.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "cnf.hpp"
#include "construction.hpp"
#include "error.hpp"
#include "hypergraph.hpp"
#include "solve.hpp"
#include "tree.hpp"
#include "verify.hpp"

struct ks_construction {
  kstree::StageParams params;
  kstree::TreeHypergraph hg;
  // Filled on first use; only meaningful at the joined stage.
  mutable std::optional<kstree::SiblingAssignment> assignment;
  mutable std::optional<kstree::CnfFormula> formula;
};

struct ks_formula {
  kstree::CnfFormula f;
};

namespace {

thread_local std::string t_last_error;

ks_status map_code(kstree::ErrorCode code) {
  using kstree::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return KS_ERR_INVALID_ARGUMENT;
    case ErrorCode::UnsupportedK:    return KS_ERR_UNSUPPORTED_K;
    case ErrorCode::PipelineOrder:   return KS_ERR_PIPELINE_ORDER;
    case ErrorCode::Structure:       return KS_ERR_STRUCTURE;
    case ErrorCode::CorruptEdge:     return KS_ERR_CORRUPT_EDGE;
    case ErrorCode::ConstructionBug: return KS_ERR_CONSTRUCTION_BUG;
    case ErrorCode::Parse:           return KS_ERR_PARSE;
    case ErrorCode::Io:              return KS_ERR_IO;
    case ErrorCode::Budget:          return KS_ERR_BUDGET;
  }
  return KS_ERR_INTERNAL;
}

template <typename Fn>
ks_status wrap(Fn&& fn) noexcept {
  try {
    fn();
    return KS_OK;
  } catch (const kstree::Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return KS_ERR_NOMEM;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return KS_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return KS_ERR_INTERNAL;
  }
}

void require(const void* ptr, const char* name) {
  if (ptr == nullptr) {
    throw kstree::Error(kstree::ErrorCode::InvalidArgument,
                        std::string(name) + " must not be null");
  }
}

char* alloc_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

kstree::Stage to_stage(ks_stage stage) {
  switch (stage) {
    case KS_STAGE_BASE:      return kstree::Stage::Base;
    case KS_STAGE_SPLIT:     return kstree::Stage::Split;
    case KS_STAGE_EQUALIZED: return kstree::Stage::Equalized;
    case KS_STAGE_FINAL:     return kstree::Stage::Final;
    case KS_STAGE_JOINED:    return kstree::Stage::Joined;
  }
  throw kstree::Error(kstree::ErrorCode::InvalidArgument,
                      "unknown stage value " +
                          std::to_string(static_cast<int>(stage)));
}

ks_stage from_stage(kstree::Stage stage) {
  switch (stage) {
    case kstree::Stage::Base:      return KS_STAGE_BASE;
    case kstree::Stage::Split:     return KS_STAGE_SPLIT;
    case kstree::Stage::Equalized: return KS_STAGE_EQUALIZED;
    case kstree::Stage::Final:     return KS_STAGE_FINAL;
    case kstree::Stage::Joined:    return KS_STAGE_JOINED;
  }
  throw kstree::Error(kstree::ErrorCode::ConstructionBug, "bad stage");
}

// Builds (and caches) the literal assignment / formula of a joined handle.
const kstree::SiblingAssignment& ensure_assignment(const ks_construction& c) {
  if (!c.assignment.has_value()) {
    c.assignment = kstree::assign_literals(c.hg);
  }
  return *c.assignment;
}

const kstree::CnfFormula& ensure_formula(const ks_construction& c) {
  if (!c.formula.has_value()) {
    c.formula = kstree::to_cnf(c.hg, ensure_assignment(c));
  }
  return *c.formula;
}

std::uint32_t infer_k(const kstree::CnfFormula& f) {
  if (f.num_clauses() == 0) {
    throw kstree::Error(kstree::ErrorCode::InvalidArgument,
                        "cannot infer the clause width of an empty formula");
  }
  std::size_t widest = 0;
  for (std::uint64_t c = 0; c < f.num_clauses(); ++c) {
    widest = std::max(widest, f.clause(c).size());
  }
  return static_cast<std::uint32_t>(widest);
}

}  // namespace

extern "C" {

const char* ks_status_name(ks_status status) {
  switch (status) {
    case KS_OK:                   return "KS_OK";
    case KS_ERR_INVALID_ARGUMENT: return "KS_ERR_INVALID_ARGUMENT";
    case KS_ERR_UNSUPPORTED_K:    return "KS_ERR_UNSUPPORTED_K";
    case KS_ERR_PIPELINE_ORDER:   return "KS_ERR_PIPELINE_ORDER";
    case KS_ERR_STRUCTURE:        return "KS_ERR_STRUCTURE";
    case KS_ERR_CORRUPT_EDGE:     return "KS_ERR_CORRUPT_EDGE";
    case KS_ERR_CONSTRUCTION_BUG: return "KS_ERR_CONSTRUCTION_BUG";
    case KS_ERR_PARSE:            return "KS_ERR_PARSE";
    case KS_ERR_IO:               return "KS_ERR_IO";
    case KS_ERR_BUDGET:           return "KS_ERR_BUDGET";
    case KS_ERR_NOMEM:            return "KS_ERR_NOMEM";
    case KS_ERR_INTERNAL:         return "KS_ERR_INTERNAL";
  }
  return "unknown";
}

const char* ks_last_error(void) { return t_last_error.c_str(); }

void ks_string_free(char* s) { std::free(s); }

ks_status ks_construction_create(uint32_t k, ks_stage stage,
                                 ks_construction** out) {
  return wrap([&] {
    require(out, "out");
    const kstree::Stage target = to_stage(stage);
    const kstree::StageParams params = kstree::make_params(k);
    auto* c = new ks_construction{params, kstree::build_stage(params, target),
                                  std::nullopt, std::nullopt};
    *out = c;
  });
}

void ks_construction_destroy(ks_construction* c) { delete c; }

ks_status ks_construction_k(const ks_construction* c, uint32_t* out) {
  return wrap([&] {
    require(c, "construction");
    require(out, "out");
    *out = c->params.k;
  });
}

ks_status ks_construction_stage(const ks_construction* c, ks_stage* out) {
  return wrap([&] {
    require(c, "construction");
    require(out, "out");
    *out = from_stage(c->hg.stage);
  });
}

ks_status ks_construction_node_count(const ks_construction* c, uint64_t* out) {
  return wrap([&] {
    require(c, "construction");
    require(out, "out");
    *out = c->hg.tree.node_count();
  });
}

ks_status ks_construction_edge_count(const ks_construction* c, uint64_t* out) {
  return wrap([&] {
    require(c, "construction");
    require(out, "out");
    *out = c->hg.edges.size();
  });
}

ks_status ks_construction_edge_instances(const ks_construction* c,
                                         uint64_t* out) {
  return wrap([&] {
    require(c, "construction");
    require(out, "out");
    *out = c->hg.total_edge_instances();
  });
}

ks_status ks_construction_branch_count(const ks_construction* c,
                                       uint64_t* out) {
  return wrap([&] {
    require(c, "construction");
    require(out, "out");
    *out = c->hg.tree.leaf_count();
  });
}

ks_status ks_construction_max_degree(const ks_construction* c,
                                     uint64_t* degree, uint32_t* vertex) {
  return wrap([&] {
    require(c, "construction");
    require(degree, "degree");
    const auto [deg, v] = c->hg.max_degree();
    *degree = deg;
    if (vertex != nullptr) *vertex = v;
  });
}

ks_status ks_construction_variable_count(const ks_construction* c,
                                         uint32_t* out) {
  return wrap([&] {
    require(c, "construction");
    require(out, "out");
    *out = ensure_assignment(*c).num_vars;
  });
}

ks_status ks_construction_write_dot(const ks_construction* c,
                                    const char* path) {
  return wrap([&] {
    require(c, "construction");
    require(path, "path");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw kstree::Error(kstree::ErrorCode::Io,
                          std::string("cannot open ") + path +
                              " for writing");
    }
    kstree::write_dot(c->hg.tree, out);
    out.flush();
    if (!out) {
      throw kstree::Error(kstree::ErrorCode::Io,
                          std::string("write to ") + path + " failed");
    }
  });
}

ks_status ks_construction_verify(const ks_construction* c, int* pass,
                                 char** report_json) {
  return wrap([&] {
    require(c, "construction");
    require(pass, "pass");
    const std::vector<kstree::VerificationReport> reports =
        kstree::stage_checks(c->hg, c->params);
    bool ok = true;
    for (const kstree::VerificationReport& r : reports) ok = ok && r.pass;
    *pass = ok ? 1 : 0;
    if (report_json != nullptr) {
      nlohmann::ordered_json j;
      j["k"] = c->params.k;
      j["stage"] = kstree::stage_name(c->hg.stage);
      j["pass"] = ok;
      j["reports"] = nlohmann::ordered_json::array();
      for (const kstree::VerificationReport& r : reports) {
        j["reports"].push_back(r.to_json());
      }
      *report_json = alloc_string(j.dump());
    }
  });
}

ks_status ks_verify_pipeline(uint32_t k, int* pass, char** report_json) {
  return wrap([&] {
    require(pass, "pass");
    const kstree::StageParams params = kstree::make_params(k);
    const kstree::PipelineVerification v = kstree::verify_pipeline(params);
    *pass = v.pass ? 1 : 0;
    if (report_json != nullptr) {
      *report_json = alloc_string(v.to_json(k).dump());
    }
  });
}

ks_status ks_construction_formula(const ks_construction* c, ks_formula** out) {
  return wrap([&] {
    require(c, "construction");
    require(out, "out");
    *out = new ks_formula{ensure_formula(*c)};
  });
}

ks_status ks_construction_witness(const ks_construction* c,
                                  const uint8_t* assignment,
                                  size_t assignment_len, char** witness_json) {
  return wrap([&] {
    require(c, "construction");
    require(assignment, "assignment");
    require(witness_json, "witness_json");
    const kstree::CnfFormula& f = ensure_formula(*c);
    const std::vector<std::uint8_t> alpha(assignment,
                                          assignment + assignment_len);
    const kstree::FalsificationWitness w =
        kstree::falsifying_branch(c->hg, *c->assignment, f, alpha);
    *witness_json = alloc_string(w.to_json().dump());
  });
}

void ks_formula_destroy(ks_formula* f) { delete f; }

ks_status ks_formula_num_vars(const ks_formula* f, uint32_t* out) {
  return wrap([&] {
    require(f, "formula");
    require(out, "out");
    *out = f->f.num_vars();
  });
}

ks_status ks_formula_num_clauses(const ks_formula* f, uint64_t* out) {
  return wrap([&] {
    require(f, "formula");
    require(out, "out");
    *out = f->f.num_clauses();
  });
}

ks_status ks_formula_write_dimacs(const ks_formula* f, const char* path,
                                  const char* const* comments,
                                  size_t num_comments) {
  return wrap([&] {
    require(f, "formula");
    require(path, "path");
    std::vector<std::string> lines;
    lines.reserve(num_comments);
    for (size_t i = 0; i < num_comments; ++i) {
      require(comments, "comments");
      require(comments[i], "comment");
      lines.emplace_back(comments[i]);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw kstree::Error(kstree::ErrorCode::Io,
                          std::string("cannot open ") + path +
                              " for writing");
    }
    kstree::write_dimacs(f->f, out, lines);
    out.flush();
    if (!out) {
      throw kstree::Error(kstree::ErrorCode::Io,
                          std::string("write to ") + path + " failed");
    }
  });
}

ks_status ks_formula_read_dimacs(const char* path, ks_formula** out) {
  return wrap([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw kstree::Error(kstree::ErrorCode::Io,
                          std::string("cannot open ") + path +
                              " for reading");
    }
    *out = new ks_formula{kstree::read_dimacs(in)};
  });
}

ks_status ks_formula_stats_json(const ks_formula* f, uint32_t k, char** json) {
  return wrap([&] {
    require(f, "formula");
    require(json, "json");
    const std::uint32_t use_k = k == 0 ? infer_k(f->f) : k;
    const kstree::CnfStats stats = kstree::cnf_stats(f->f, use_k);
    *json = alloc_string(stats.to_json().dump());
  });
}

ks_status ks_formula_solve(const ks_formula* f, ks_solver_engine engine,
                           uint64_t decision_budget, ks_solve_result* result,
                           uint8_t* model_out) {
  return wrap([&] {
    require(f, "formula");
    require(result, "result");
    kstree::SolveResult r;
    switch (engine) {
      case KS_SOLVER_BRUTE_FORCE:
        r = kstree::solve_brute_force(f->f);
        break;
      case KS_SOLVER_DPLL:
        r = kstree::solve_dpll(f->f, decision_budget);
        break;
      default:
        throw kstree::Error(kstree::ErrorCode::InvalidArgument,
                            "unknown solver engine " +
                                std::to_string(static_cast<int>(engine)));
    }
    switch (r.status) {
      case kstree::SolveStatus::Sat:
        result->status = KS_SOLVE_SAT;
        break;
      case kstree::SolveStatus::Unsat:
        result->status = KS_SOLVE_UNSAT;
        break;
      case kstree::SolveStatus::BudgetExceeded:
        result->status = KS_SOLVE_BUDGET_EXCEEDED;
        break;
    }
    result->decisions = r.decisions;
    result->propagations = r.propagations;
    if (model_out != nullptr && r.status == kstree::SolveStatus::Sat) {
      std::memcpy(model_out, r.model.data(), r.model.size());
    }
  });
}

}  // extern "C"
