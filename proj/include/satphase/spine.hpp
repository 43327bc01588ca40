// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0
//
// Order parameters (spine, literal spine, backbone) and deletion-based
// extraction of minimally unsatisfiable subformulas.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satphase/instance.hpp"

namespace satphase {

enum class SpineMode { Exact, MusLowerBound };

std::string_view to_string(SpineMode m);
SpineMode parse_spine_mode(std::string_view name);

/// Caps of the exact procedures. Unsatisfiable formulas need every maximal
/// satisfiable subformula, which is enumerated over all 2^n assignments.
inline constexpr int kSpineExactMaxVars = 60;
inline constexpr int kSpineEnumerationMaxVars = 20;
inline constexpr int kBackboneEnumerationMaxVars = 24;

/// Evidence that every variable of `offending` lies in the spine: `xi` (indices
/// into the instance) is satisfiable and `xi` plus `offending` is not.
struct SpineCertificate {
  std::vector<std::size_t> xi;
  ConstraintTemplate offending_template;
  std::vector<int> offending_vars;
};

struct SpineReport {
  std::vector<int> variables;  // ascending, 0-based
  double fraction = 0;
  SpineMode mode = SpineMode::Exact;
  std::vector<SpineCertificate> certificates;
  /// certificate_of[i] certifies variables[i].
  std::vector<std::size_t> certificate_of;
};

struct SpineOptions {
  SpineMode mode = SpineMode::Exact;
  /// Shrink each certificate's Xi by deletion while Xi plus C stays unsatisfiable.
  bool shrink_certificates = true;
};

/// `candidates` is the constraint language: every template applied to every
/// ordered tuple of distinct variables is a candidate C.
SpineReport spine(const Instance& inst, const std::vector<ConstraintTemplate>& candidates,
                  const SpineOptions& opts = {});
SpineReport spine(const Instance& inst, const ConstraintDistribution& d, const SpineOptions& opts = {});

/// Solver-backed re-check of a certificate against `inst`.
bool verify_certificate(const Instance& inst, const SpineCertificate& cert);

/// The instance Xi plus C, with provenance metadata, in instance text format.
std::string certificate_to_text(const Instance& inst, const SpineCertificate& cert, std::size_t index);

/// Literals l such that some satisfiable subset of clauses implies l.
std::vector<Literal> spine_literals(const Cnf& f);

enum class BackboneMode { Auto, Enumerate, Probe };

/// Literals true in every model. Throws UsageError when `f` is unsatisfiable.
std::vector<Literal> backbone(const Cnf& f, BackboneMode mode = BackboneMode::Auto);

struct MusReport {
  std::vector<std::size_t> core;  // ascending constraint indices
  std::vector<int> core_vars;     // ascending
  std::size_t size() const noexcept { return core.size(); }
};

/// Deletion in index order. Throws UsageError on satisfiable input.
MusReport extract_mus(const Instance& inst);

bool is_minimally_unsat(const Instance& inst);

}  // namespace satphase
