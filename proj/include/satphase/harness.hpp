// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satphase/constraint.hpp"
#include "satphase/instance.hpp"
#include "satphase/solver.hpp"
#include "satphase/spine.hpp"

namespace satphase {

enum class ModelKind { KSat, TwoP, KXor, Dist };

struct ModelSpec {
  ModelKind kind = ModelKind::KSat;
  int k = 3;
  double p = 0;
  std::string dist_path;
  ConstraintDistribution dist;

  /// Short label used in CSV rows, e.g. "ksat k=3".
  std::string label() const;
  /// Templates of positive probability: the constraint language of the model.
  std::vector<ConstraintTemplate> language() const;
  ConstraintDistribution distribution() const;
};

/// "ksat k=3", "2p p=0.6", "kxor k=3" or "dist <path>" (the file is read).
ModelSpec parse_model(std::string_view text);
ModelSpec model_from_distribution(ConstraintDistribution d, std::string label = "dist");

/// m constraints on n variables. Instances are nested in m for a fixed seed.
Instance generate(const ModelSpec& model, int n, std::size_t m, std::uint64_t seed);

/// How a density g maps to a constraint count.
enum class Scaling { Linear, Sqrt, Auto };
std::string_view to_string(Scaling s);
Scaling parse_scaling(std::string_view text);
/// Auto resolves to Sqrt for coarse unit-implicate models, else Linear.
Scaling resolve_scaling(const ModelSpec& model, Scaling s);
/// floor(g*n + 0.5) or floor(g*sqrt(n) + 0.5).
std::size_t constraint_count(double g, int n, Scaling s);

/// mix64 chain over (master, n, density index, trial).
std::uint64_t trial_seed(std::uint64_t master, int n, std::uint64_t density_index, std::uint64_t trial);

enum class OrderParameter { Exact, Mus, None };
std::string_view to_string(OrderParameter o);
OrderParameter parse_order_parameter(std::string_view text);

struct SweepConfig {
  ModelSpec model;
  std::string model_text;
  std::vector<int> ns;
  std::vector<double> densities;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::string out;
  OrderParameter order = OrderParameter::Mus;
  BranchHeuristic heuristic = BranchHeuristic::LowestIndex;
  Scaling scaling = Scaling::Auto;
  bool allow_trivial = false;
};

/// Key-value lines "key = value"; # starts a comment. Relative dist paths
/// resolve against `base_dir`.
SweepConfig parse_sweep_config(std::string_view text, const std::string& base_dir = ".");

struct SweepRow {
  std::string model;
  int n = 0;
  double density = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t sat_count = 0;
  double sat_prob = 0;
  OrderParameter order = OrderParameter::Mus;
  double spine_mean = 0;
  double spine_median = 0;
  /// Trials whose order parameter could not be computed (budget, size caps).
  std::size_t spine_skipped = 0;
  /// Median DPLL tree size over unsatisfiable trials; NaN when there are none.
  double tree_median = 0;
  /// Median Gaussian elimination operations over all trials; XOR models only.
  double gauss_median = 0;
  std::size_t budget_exceeded = 0;
  bool flagged = false;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
};

/// One pass computes satisfiability, the order parameter and tree sizes.
SweepResult run_sweep(const SweepConfig& cfg);
std::string sweep_csv(const SweepConfig& cfg, const SweepResult& result);

/// Pairs (row index, next row index) at equal n where sat_prob rises by more
/// than three binomial standard deviations.
std::vector<std::pair<std::size_t, std::size_t>> monotonicity_violations(const std::vector<SweepRow>& rows);

struct WilsonInterval {
  double lo = 0;
  double hi = 1;
};
/// 95% Wilson score interval.
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Per-trial critical constraint count: the smallest m at which the nested
/// instance becomes unsatisfiable, or nullopt if it is still satisfiable at `cap`.
struct CriticalSample {
  const ModelSpec* model = nullptr;
  int n = 0;
  Scaling scaling = Scaling::Linear;
  std::size_t cap = 0;
  std::vector<std::optional<std::size_t>> critical;

  std::size_t sat_count(std::size_t m) const;
  double sat_prob(std::size_t m) const;
};

struct ThresholdOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double tolerance = 0.02;
  double max_density = 0;  // 0: model default
  Scaling scaling = Scaling::Auto;
};

CriticalSample sample_critical(const ModelSpec& model, int n, const ThresholdOptions& opts);

struct ThresholdEstimate {
  double density = 0;
  double lo = 0;
  double hi = 0;
  Scaling scaling = Scaling::Linear;
  double sat_prob = 0;
  WilsonInterval ci;
  std::size_t probes = 0;
};

/// Bisection on density for sat probability `target` over a common sample.
/// Throws EstimationError when the target is not bracketed by [0, max density]
/// or when a coarse unit-implicate model is asked for linear scaling.
ThresholdEstimate estimate_threshold_location(const CriticalSample& s, double target, double tolerance);
ThresholdEstimate estimate_threshold_location(const ModelSpec& model, int n, double target,
                                              const ThresholdOptions& opts = {});

/// (c_eps - c_{1-eps}) / c_{1/2}, where c_q is the density of sat probability q.
double estimate_window_width(const CriticalSample& s, double epsilon, double tolerance);
double estimate_window_width(const ModelSpec& model, int n, double epsilon, const ThresholdOptions& opts = {});

/// MUS variable fractions of the first `count` unsatisfiable trials at m
/// constraints; throws EstimationError after `max_attempts` trials.
std::vector<double> unsat_mus_fractions(const ModelSpec& model, int n, std::size_t m, std::size_t count,
                                        std::uint64_t seed, std::size_t max_attempts);

double median(std::vector<double> values);

}  // namespace satphase
