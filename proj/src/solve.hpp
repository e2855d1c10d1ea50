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

#ifndef KSTREE_SOLVE_HPP
#define KSTREE_SOLVE_HPP

#include <cstdint>
#include <vector>

#include "cnf.hpp"

namespace kstree {

enum class SolveStatus { Sat, Unsat, BudgetExceeded };

const char* solve_status_name(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  /// Variable values indexed by variable-1; filled only when status is Sat.
  /// Models are self-checked against every clause before being returned.
  std::vector<std::uint8_t> model;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

/// True when the assignment (indexed variable-1) satisfies every clause.
bool satisfies(const CnfFormula& f, const std::vector<std::uint8_t>& model);

/// Exhaustive search over all 2^n assignments, in lexicographic order with
/// variable 1 most significant and false before true. Returns the first
/// satisfying model, else Unsat. Refuses formulas beyond the variable cap
/// with a Budget error; `decisions` counts tested assignments.
inline constexpr std::uint32_t kBruteForceVarCap = 25;
SolveResult solve_brute_force(const CnfFormula& f);

/// Backtracking search with unit propagation and pure-literal elimination.
/// Branches on the lowest-index unassigned variable, true first, so runs
/// are reproducible. Stops with BudgetExceeded when the decision limit is
/// reached; 0 selects the default budget.
inline constexpr std::uint64_t kDefaultDecisionBudget = 10'000'000;
SolveResult solve_dpll(const CnfFormula& f, std::uint64_t decision_budget = 0);

}  // namespace kstree

#endif  // KSTREE_SOLVE_HPP
