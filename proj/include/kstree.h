/* Copyright 2026 The kstree Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the kstree library.
 *
 * The library builds k-CNF formulas that are unsatisfiable even though every
 * variable occurs few times.  A construction handle owns one staged
 * tree-hypergraph; a formula handle owns one CNF formula.  All functions
 * return KS_OK on success and an error code otherwise; ks_last_error() then
 * describes the failure.  Strings returned through char** parameters are
 * heap-allocated and must be released with ks_string_free().
 */

#ifndef KSTREE_INCLUDE_KSTREE_H_
#define KSTREE_INCLUDE_KSTREE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(KSTREE_BUILD)
#    define KSTREE_API __declspec(dllexport)
#  else
#    define KSTREE_API __declspec(dllimport)
#  endif
#else
#  if defined(KSTREE_BUILD)
#    define KSTREE_API __attribute__((visibility("default")))
#  else
#    define KSTREE_API
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ks_status {
  KS_OK = 0,
  KS_ERR_INVALID_ARGUMENT = 1,
  KS_ERR_UNSUPPORTED_K = 2,
  KS_ERR_PIPELINE_ORDER = 3,
  KS_ERR_STRUCTURE = 4,
  KS_ERR_CORRUPT_EDGE = 5,
  KS_ERR_CONSTRUCTION_BUG = 6,
  KS_ERR_PARSE = 7,
  KS_ERR_IO = 8,
  KS_ERR_BUDGET = 9,
  KS_ERR_NOMEM = 10,
  KS_ERR_INTERNAL = 11
} ks_status;

typedef enum ks_stage {
  KS_STAGE_BASE = 0,
  KS_STAGE_SPLIT = 1,
  KS_STAGE_EQUALIZED = 2,
  KS_STAGE_FINAL = 3,
  KS_STAGE_JOINED = 4
} ks_stage;

typedef enum ks_solver_engine {
  KS_SOLVER_BRUTE_FORCE = 0,
  KS_SOLVER_DPLL = 1
} ks_solver_engine;

typedef enum ks_solve_status {
  KS_SOLVE_SAT = 0,
  KS_SOLVE_UNSAT = 1,
  KS_SOLVE_BUDGET_EXCEEDED = 2
} ks_solve_status;

typedef struct ks_construction ks_construction;
typedef struct ks_formula ks_formula;

typedef struct ks_solve_result {
  ks_solve_status status;
  uint64_t decisions;
  uint64_t propagations;
} ks_solve_result;

/* Stable name for a status code, e.g. "KS_ERR_PARSE". */
KSTREE_API const char* ks_status_name(ks_status status);

/* Message of the last failure on the calling thread.  The pointer stays
 * valid until the next failing call on the same thread; do not free it. */
KSTREE_API const char* ks_last_error(void);

/* Releases a string obtained from this library. */
KSTREE_API void ks_string_free(char* s);

/* Builds the construction for the given k (a power of two, at least 2) up to
 * and including `stage`.  On success *out owns the handle. */
KSTREE_API ks_status ks_construction_create(uint32_t k, ks_stage stage,
                                            ks_construction** out);
KSTREE_API void ks_construction_destroy(ks_construction* c);

KSTREE_API ks_status ks_construction_k(const ks_construction* c, uint32_t* out);
KSTREE_API ks_status ks_construction_stage(const ks_construction* c,
                                           ks_stage* out);
KSTREE_API ks_status ks_construction_node_count(const ks_construction* c,
                                                uint64_t* out);
/* Number of edge records; multiplicities not expanded. */
KSTREE_API ks_status ks_construction_edge_count(const ks_construction* c,
                                                uint64_t* out);
/* Number of edge instances, i.e. the sum of all multiplicities. */
KSTREE_API ks_status ks_construction_edge_instances(const ks_construction* c,
                                                    uint64_t* out);
/* Number of root-to-leaf branches (= leaves). */
KSTREE_API ks_status ks_construction_branch_count(const ks_construction* c,
                                                  uint64_t* out);
/* Largest vertex degree and the smallest vertex attaining it. */
KSTREE_API ks_status ks_construction_max_degree(const ks_construction* c,
                                                uint64_t* degree,
                                                uint32_t* vertex);
/* Number of CNF variables; the construction must be at the joined stage. */
KSTREE_API ks_status ks_construction_variable_count(const ks_construction* c,
                                                    uint32_t* out);

/* Writes the tree in Graphviz DOT form. */
KSTREE_API ks_status ks_construction_write_dot(const ks_construction* c,
                                               const char* path);

/* Runs the checks appropriate to the handle's stage.  *pass is 1 when all of
 * them hold.  If report_json is non-NULL it receives the full report. */
KSTREE_API ks_status ks_construction_verify(const ks_construction* c,
                                            int* pass, char** report_json);

/* Rebuilds the construction for k stage by stage, checking each stage. */
KSTREE_API ks_status ks_verify_pipeline(uint32_t k, int* pass,
                                        char** report_json);

/* Extracts the CNF formula; the construction must be at the joined stage.
 * The returned handle is independent of the construction. */
KSTREE_API ks_status ks_construction_formula(const ks_construction* c,
                                             ks_formula** out);

/* Finds the clause falsified by a total assignment; the construction must be
 * at the joined stage.  assignment[v-1] holds variable v (0 false, nonzero
 * true) and assignment_len must equal the variable count.  The witness is
 * returned as JSON. */
KSTREE_API ks_status ks_construction_witness(const ks_construction* c,
                                             const uint8_t* assignment,
                                             size_t assignment_len,
                                             char** witness_json);

KSTREE_API void ks_formula_destroy(ks_formula* f);
KSTREE_API ks_status ks_formula_num_vars(const ks_formula* f, uint32_t* out);
KSTREE_API ks_status ks_formula_num_clauses(const ks_formula* f,
                                            uint64_t* out);

/* Writes DIMACS CNF.  Each of the `num_comments` strings becomes one comment
 * line above the header; comments may be NULL when num_comments is 0. */
KSTREE_API ks_status ks_formula_write_dimacs(const ks_formula* f,
                                             const char* path,
                                             const char* const* comments,
                                             size_t num_comments);
KSTREE_API ks_status ks_formula_read_dimacs(const char* path,
                                            ks_formula** out);

/* Occurrence statistics as JSON.  k selects the occurrence bound to compare
 * against; pass 0 to use the widest clause. */
KSTREE_API ks_status ks_formula_stats_json(const ks_formula* f, uint32_t k,
                                           char** json);

/* Decides the formula.  decision_budget limits DPLL decisions (0 means the
 * built-in default) and is ignored by the brute-force engine.  If model_out
 * is non-NULL it must hold num_vars bytes and receives a satisfying
 * assignment when the status is KS_SOLVE_SAT. */
KSTREE_API ks_status ks_formula_solve(const ks_formula* f,
                                      ks_solver_engine engine,
                                      uint64_t decision_budget,
                                      ks_solve_result* result,
                                      uint8_t* model_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KSTREE_INCLUDE_KSTREE_H_ */
