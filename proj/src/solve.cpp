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

#include "solve.hpp"

#include <cstdlib>
#include <string>

#include "error.hpp"

namespace kstree {

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Sat:            return "SAT";
    case SolveStatus::Unsat:          return "UNSAT";
    case SolveStatus::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "unknown";
}

bool satisfies(const CnfFormula& f, const std::vector<std::uint8_t>& model) {
  if (model.size() < f.num_vars()) return false;
  for (std::uint64_t c = 0; c < f.num_clauses(); ++c) {
    bool sat = false;
    for (std::int32_t lit : f.clause(c)) {
      const std::uint32_t var = static_cast<std::uint32_t>(std::abs(lit));
      if ((model[var - 1] != 0) == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

void self_check_model(const CnfFormula& f, const SolveResult& res) {
  if (!satisfies(f, res.model)) {
    throw Error(ErrorCode::ConstructionBug,
                "solver returned a model that fails its own clauses");
  }
}

}  // namespace

SolveResult solve_brute_force(const CnfFormula& f) {
  const std::uint32_t n = f.num_vars();
  if (n > kBruteForceVarCap) {
    throw Error(ErrorCode::Budget,
                "brute force is capped at " +
                    std::to_string(kBruteForceVarCap) + " variables, got " +
                    std::to_string(n));
  }
  // Bit n-i of the counter holds variable i, so counting up enumerates
  // assignments in lexicographic order with variable 1 most significant and
  // false before true.
  struct Masks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
  };
  std::vector<Masks> clauses(f.num_clauses());
  for (std::uint64_t c = 0; c < f.num_clauses(); ++c) {
    for (std::int32_t lit : f.clause(c)) {
      const std::uint32_t var = static_cast<std::uint32_t>(std::abs(lit));
      const std::uint32_t bit = std::uint32_t{1} << (n - var);
      if (lit > 0) {
        clauses[c].pos |= bit;
      } else {
        clauses[c].neg |= bit;
      }
    }
  }
  SolveResult res;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t assignment = 0; assignment < total; ++assignment) {
    ++res.decisions;
    bool all_sat = true;
    for (const Masks& m : clauses) {
      if ((m.pos & assignment) == 0 && (m.neg & ~assignment) == 0) {
        all_sat = false;
        break;
      }
    }
    if (all_sat) {
      res.status = SolveStatus::Sat;
      res.model.resize(n);
      for (std::uint32_t var = 1; var <= n; ++var) {
        res.model[var - 1] =
            (assignment >> (n - var)) & 1 ? std::uint8_t{1} : std::uint8_t{0};
      }
      self_check_model(f, res);
      return res;
    }
  }
  res.status = SolveStatus::Unsat;
  return res;
}

SolveResult solve_dpll(const CnfFormula& f, std::uint64_t decision_budget) {
  if (decision_budget == 0) decision_budget = kDefaultDecisionBudget;
  const std::uint32_t n = f.num_vars();
  const std::uint64_t m = f.num_clauses();
  SolveResult res;

  // 0 unassigned, 1 true, 2 false.
  std::vector<std::uint8_t> value(n + 1, 0);
  std::vector<std::int32_t> trail;
  struct Frame {
    std::size_t trail_size;
    std::uint32_t var;
    bool flipped;
  };
  std::vector<Frame> frames;
  std::vector<std::uint8_t> occ(n + 1, 0);  // pure-literal scratch

  auto lit_state = [&](std::int32_t lit) -> int {
    const std::uint32_t var = static_cast<std::uint32_t>(std::abs(lit));
    if (value[var] == 0) return 0;
    return (value[var] == 1) == (lit > 0) ? 1 : -1;
  };
  auto assign = [&](std::int32_t lit) {
    value[static_cast<std::uint32_t>(std::abs(lit))] = lit > 0 ? 1 : 2;
    trail.push_back(lit);
  };
  auto undo_to = [&](std::size_t size) {
    while (trail.size() > size) {
      value[static_cast<std::uint32_t>(std::abs(trail.back()))] = 0;
      trail.pop_back();
    }
  };

  // Unit propagation and pure-literal elimination to fixpoint.
  // Returns false on conflict.
  auto propagate = [&]() -> bool {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint64_t c = 0; c < m; ++c) {
        bool sat = false;
        int unassigned = 0;
        std::int32_t unit = 0;
        for (std::int32_t lit : f.clause(c)) {
          const int s = lit_state(lit);
          if (s == 1) {
            sat = true;
            break;
          }
          if (s == 0) {
            ++unassigned;
            unit = lit;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(unit);
          ++res.propagations;
          changed = true;
        }
      }
      if (changed) continue;
      // Pure literals, counted over clauses not yet satisfied.
      std::fill(occ.begin(), occ.end(), 0);
      for (std::uint64_t c = 0; c < m; ++c) {
        bool sat = false;
        for (std::int32_t lit : f.clause(c)) {
          if (lit_state(lit) == 1) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        for (std::int32_t lit : f.clause(c)) {
          if (lit_state(lit) == 0) {
            occ[static_cast<std::uint32_t>(std::abs(lit))] |=
                lit > 0 ? 1 : 2;
          }
        }
      }
      for (std::uint32_t var = 1; var <= n; ++var) {
        if (value[var] != 0) continue;
        if (occ[var] == 2) {
          assign(-static_cast<std::int32_t>(var));
        } else if (occ[var] == 3) {
          continue;
        } else {
          // Positive pure, or absent from every open clause (vacuously pure).
          assign(static_cast<std::int32_t>(var));
        }
        ++res.propagations;
        changed = true;
      }
    }
    return true;
  };

  auto all_satisfied = [&]() -> bool {
    for (std::uint64_t c = 0; c < m; ++c) {
      bool sat = false;
      for (std::int32_t lit : f.clause(c)) {
        if (lit_state(lit) == 1) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  };

  while (true) {
    if (propagate()) {
      if (all_satisfied()) {
        res.status = SolveStatus::Sat;
        res.model.resize(n);
        for (std::uint32_t var = 1; var <= n; ++var) {
          // Variables left unassigned occur only in satisfied clauses.
          res.model[var - 1] = value[var] == 2 ? std::uint8_t{0}
                                               : std::uint8_t{1};
        }
        self_check_model(f, res);
        return res;
      }
      std::uint32_t var = 1;
      while (var <= n && value[var] != 0) ++var;
      if (res.decisions >= decision_budget) {
        res.status = SolveStatus::BudgetExceeded;
        return res;
      }
      ++res.decisions;
      frames.push_back(Frame{trail.size(), var, false});
      assign(static_cast<std::int32_t>(var));  // true first
    } else {
      while (!frames.empty() && frames.back().flipped) {
        undo_to(frames.back().trail_size);
        frames.pop_back();
      }
      if (frames.empty()) {
        res.status = SolveStatus::Unsat;
        return res;
      }
      Frame& frame = frames.back();
      undo_to(frame.trail_size);
      frame.flipped = true;
      assign(-static_cast<std::int32_t>(frame.var));
    }
  }
}

}  // namespace kstree
