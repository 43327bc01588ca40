// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0
//
// Decision procedures: an instrumented DPLL (unit propagation, pure literals,
// no learning), Gaussian elimination over GF(2) for parity instances, and an
// exhaustive enumerator used as a verification oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "satphase/instance.hpp"

namespace satphase {

enum class SolveStatus { Sat, Unsat, BudgetExceeded };
enum class SolveMethod { Dpll, Gauss, Brute };

/// LowestIndex is the regression baseline. MaxOccurrence picks the variable
/// maximizing w+ * w- * 1024 + w+ + w-, where w+- sums 5^-(unassigned literals)
/// over the unsatisfied clauses containing each literal; ties go to the lower index.
enum class BranchHeuristic { LowestIndex, MaxOccurrence };

std::string_view to_string(SolveStatus s);
std::string_view to_string(SolveMethod m);
SolveMethod parse_solve_method(std::string_view name);

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  std::optional<std::vector<bool>> witness;
  /// Branching nodes explored; propagation is free.
  std::uint64_t tree_size = 0;
  int max_depth = 0;
  SolveMethod method = SolveMethod::Dpll;
  /// Bit operations spent in row reductions (Gaussian elimination only).
  std::uint64_t gauss_ops = 0;
};

struct DpllOptions {
  std::optional<std::uint64_t> budget;
  BranchHeuristic heuristic = BranchHeuristic::LowestIndex;
};

SolveResult dpll_solve(const Cnf& f, const DpllOptions& opts = {});

/// Throws UsageError naming the first template that is not a parity relation.
SolveResult gauss_solve_xor(const Instance& inst);

inline constexpr int kBruteForceMaxVars = 24;
/// Lexicographically first model, x1 being the most significant position.
SolveResult brute_force_solve(const Cnf& f);

/// Dispatches on `method`; SAT witnesses are checked against `inst` itself.
SolveResult solve(const Instance& inst, SolveMethod method, const DpllOptions& opts = {});

bool all_parity(const Instance& inst);

/// Complete decision without a budget: Gaussian elimination for parity
/// instances, DPLL (MaxOccurrence) otherwise. Returns a model when satisfiable.
std::optional<std::vector<bool>> find_model(const Instance& inst);
inline bool is_satisfiable(const Instance& inst) { return find_model(inst).has_value(); }

}  // namespace satphase
