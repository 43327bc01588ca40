// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0
//
// Random instances in the counting model: M constraints, each a template drawn
// from a distribution and applied to a uniformly random ordered tuple of
// distinct variables. Text serialization and CNF conversion.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "satphase/constraint.hpp"

namespace satphase {

/// A template applied to an ordered tuple of 0-based variables.
struct AppliedConstraint {
  std::size_t template_id = 0;
  std::vector<int> vars;

  friend bool operator==(const AppliedConstraint&, const AppliedConstraint&) = default;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Instance {
  int n = 0;
  std::vector<ConstraintTemplate> templates;
  std::vector<AppliedConstraint> constraints;
  Metadata meta;

  /// Largest template arity, 0 without templates.
  int max_arity() const noexcept;
  std::optional<std::string> meta_value(std::string_view key) const;
  void set_meta(std::string key, std::string value);

  /// Throws UsageError on dangling template ids, out-of-range or repeated
  /// variables, or arity mismatches.
  void validate() const;

  /// Value of constraint `i` under `assignment` (element v = value of variable v).
  bool constraint_satisfied(std::size_t i, const std::vector<bool>& assignment) const;
  bool satisfied_by(const std::vector<bool>& assignment) const;

  /// The instance restricted to the listed constraints (same n and templates).
  Instance subset(const std::vector<std::size_t>& indices) const;

  /// Variables occurring in at least one constraint, ascending.
  std::vector<int> occurring_vars() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Clauses over variables 0..n-1. `origin[i]` is the constraint a clause came
/// from, when the CNF was produced by to_cnf.
struct Cnf {
  int n = 0;
  std::vector<Clause> clauses;
  std::vector<std::size_t> origin;

  bool satisfied_by(const std::vector<bool>& assignment) const;
};

Instance gen_molloy(const ConstraintDistribution& d, int n, std::size_t m, std::uint64_t seed);
Instance gen_ksat(int k, int n, std::size_t m, std::uint64_t seed);
/// round(p*c*n) 3-clauses and round(c*n) - that many 2-clauses; round(x) = floor(x + 0.5).
Instance gen_2p_sat(double p, double c, int n, std::uint64_t seed);
Instance gen_kxorsat(int k, int n, std::size_t m, std::uint64_t seed);

/// Maxterm expansion: one clause per falsifying row of each constraint.
Cnf to_cnf(const Instance& inst);

/// Each clause becomes a CLAUSE<k> template; empty clauses are rejected.
Instance instance_from_cnf(const Cnf& cnf);

std::string serialize_instance(const Instance& inst);
/// Throws ParseError (with line number) on malformed input.
Instance parse_instance(std::string_view text);
/// Several instances back to back, each introduced by its own header.
std::vector<Instance> parse_instances(std::string_view text);

std::string to_dimacs(const Cnf& cnf);
/// Duplicate literals are merged and tautological clauses dropped.
Cnf parse_dimacs(std::string_view text);

/// Shortest decimal that round-trips, as used in metadata and CSV provenance.
std::string format_double(double v);

}  // namespace satphase
