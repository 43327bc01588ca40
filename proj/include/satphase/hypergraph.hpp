// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0
//
// Structural quantities of formula hypergraphs: subformula density c*,
// r-deficiency, (x, y)-sparsity, the sparsity bound for random hypergraphs,
// and orderings in which every constraint keeps k-2 private variables.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "satphase/instance.hpp"

namespace satphase {

/// One edge (the variable set) per applied constraint.
struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges;
};

Hypergraph formula_hypergraph(const Instance& inst);

/// Exact enumeration caps: subsets of constraints, or subsets of occurring
/// variables, whichever is smaller.
inline constexpr std::size_t kSubformulaEnumMaxConstraints = 20;
inline constexpr std::size_t kSubformulaEnumMaxVars = 20;
inline constexpr int kSparsityExactMaxVars = 24;

/// A maximum over nonempty subformulas. When `exact` is false the value is a
/// lower bound from min-degree peeling. `witness` attains `value`.
struct SubformulaMax {
  Rational value;
  bool exact = true;
  std::vector<std::size_t> witness;
};

/// max |constraints(G)| / |vars(G)|. Throws UsageError on an empty instance.
SubformulaMax c_star(const Instance& inst);
/// r * |constraints| - |vars| over the whole instance.
Rational deficiency(const Instance& inst, const Rational& r);
SubformulaMax max_deficiency(const Instance& inst, const Rational& r);

enum class SparsityVerdict { Sparse, NotSparse, Unknown };
std::string_view to_string(SparsityVerdict v);

struct SparsityResult {
  SparsityVerdict verdict = SparsityVerdict::Sparse;
  /// Vertex set of size <= x*n spanning more than y*|S| edges.
  std::vector<int> witness;
};

/// Every vertex set of size s <= x*n spans at most y*s edges (inclusive).
/// Exact for n <= kSparsityExactMaxVars, with the witness first in
/// (size, colex) order; otherwise peeling sets are tried and the verdict is
/// NotSparse or Unknown.
SparsityResult is_xy_sparse(const Hypergraph& h, const Rational& x, const Rational& y);

struct SparsityParams {
  int k = 0;
  long double c = 0;
  long double y = 0;
  long double epsilon = 0;
  long double x = 0;
};

/// epsilon = y - 1/(k-1), x = ((1/(2e)) (y/(ce))^y)^(1/epsilon).
/// Throws UsageError unless (k-1)y > 1 and c > 0.
SparsityParams cs_sparsity_params(int k, long double c, long double y);

struct PrivateOrdering {
  /// Constraint indices C_1..C_m; each has >= arity-2 variables absent from
  /// all earlier ones. Empty optional when peeling blocks.
  std::optional<std::vector<std::size_t>> ordering;
  /// Constraints left when peeling blocked.
  std::vector<std::size_t> stuck;
};

PrivateOrdering private_variable_ordering(const Instance& inst);

/// Variables occurring in exactly one constraint of the given subformula.
std::size_t private_variable_count(const Instance& inst, const std::vector<std::size_t>& subset);

/// Fractions private/n over random subformulas whose size is uniform in
/// [min_size, max_size].
std::vector<double> sample_private_fractions(const Instance& inst, std::size_t min_size, std::size_t max_size,
                                             std::size_t samples, std::uint64_t seed);

}  // namespace satphase
