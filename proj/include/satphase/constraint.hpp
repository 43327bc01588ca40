// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0
//
// Boolean constraint templates stored as truth tables, their implicates, and
// the sharp/coarse threshold classification of random models built from them.

#pragma once

#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satphase/rational.hpp"

namespace satphase {

inline constexpr int kMaxArity = 8;
inline constexpr std::size_t kMaxTableBits = std::size_t{1} << kMaxArity;

/// A literal over template positions (0-based) or instance variables
/// (0-based); `negated` selects the complemented form.
struct Literal {
  int var = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Disjunction of literals over distinct variables. The empty clause is false.
struct Clause {
  std::vector<Literal> literals;

  std::size_t size() const noexcept { return literals.size(); }
  bool empty() const noexcept { return literals.empty(); }
  /// True when some literal is satisfied by `assignment` (bit v = value of variable v).
  bool satisfied_by(std::uint64_t assignment) const noexcept;

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Renders e.g. "(x1 | ~x3)" with 1-based indices.
std::string to_string(const Clause& c);

/// A k-ary boolean relation. Row `a` of the table is the assignment whose
/// bit i is the value of position i; the bit is set iff the row satisfies.
class ConstraintTemplate {
 public:
  using Table = std::bitset<kMaxTableBits>;

  ConstraintTemplate() = default;
  /// Throws UsageError unless 1 <= arity <= kMaxArity, no bit beyond 2^arity is
  /// set, and at least one row satisfies.
  ConstraintTemplate(int arity, const Table& table, std::string name = {});

  template <class Pred>
  static ConstraintTemplate from_predicate(int arity, Pred&& pred, std::string name = {}) {
    Table t;
    for (std::uint32_t a = 0; a < (1u << arity); ++a) t[a] = pred(a);
    return ConstraintTemplate(arity, t, std::move(name));
  }

  int arity() const noexcept { return arity_; }
  std::uint32_t rows() const noexcept { return 1u << arity_; }
  const Table& table() const noexcept { return table_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool accepts(std::uint32_t row) const noexcept { return table_[row]; }
  std::size_t satisfying_count() const noexcept { return table_.count(); }

  /// Bytes little-endian, two hex digits per byte; at least one byte.
  std::string hex() const;
  static ConstraintTemplate from_hex(int arity, std::string_view hex, std::string name = {});

  /// Same relation with positions reordered: position i of the result is
  /// position perm[i] of this template.
  ConstraintTemplate permuted(std::span<const int> perm) const;

  bool is_parity() const noexcept { return parity_rhs().has_value(); }
  /// For parity relations x1 ^ ... ^ xk = b returns b.
  std::optional<bool> parity_rhs() const noexcept;

  friend bool operator==(const ConstraintTemplate& a, const ConstraintTemplate& b) {
    return a.arity_ == b.arity_ && a.table_ == b.table_;
  }

 private:
  int arity_ = 0;
  Table table_;
  std::string name_;
};

/// Evaluates `t` on an explicit assignment (element i = value of position i).
/// Throws UsageError on a length mismatch.
bool eval_template(const ConstraintTemplate& t, std::span<const bool> assignment);

/// Clauses over positions 0..k-1 with 1..max_len literals implied by `t`,
/// ordered by length, then lexicographically by (position, positive-first).
/// With `minimal_only`, implicates subsumed by a shorter one are dropped.
std::vector<Clause> implicates_up_to(const ConstraintTemplate& t, int max_len,
                                     bool minimal_only = false);

struct UnitDependence {
  int position = 0;
  bool value = false;
  friend bool operator==(const UnitDependence&, const UnitDependence&) = default;
};

struct XorDependence {
  int first = 0;
  int second = 0;
  friend bool operator==(const XorDependence&, const XorDependence&) = default;
};

/// Lowest position fixed to one value by every satisfying row.
std::optional<UnitDependence> strongly_depends_on_literal(const ConstraintTemplate& t);

/// Lexicographically first pair i < j with x_i != x_j in every satisfying row.
std::optional<XorDependence> strongly_depends_on_2xor(const ConstraintTemplate& t);

/// The pair (templates, probabilities). Probabilities are exact and sum to 1.
class ConstraintDistribution {
 public:
  ConstraintDistribution() = default;
  /// Throws UsageError on empty input, mismatched arity, sizes, or
  /// probabilities outside [0,1] / not summing to one.
  ConstraintDistribution(std::vector<ConstraintTemplate> templates, std::vector<Rational> probs);

  /// Normalizes nonnegative weights.
  static ConstraintDistribution from_weights(std::vector<ConstraintTemplate> templates,
                                             std::vector<Rational> weights);
  static ConstraintDistribution uniform(std::vector<ConstraintTemplate> templates);

  const std::vector<ConstraintTemplate>& templates() const noexcept { return templates_; }
  const std::vector<Rational>& probs() const noexcept { return probs_; }
  int arity() const noexcept { return templates_.empty() ? 0 : templates_.front().arity(); }

  /// Indices of templates with positive probability.
  std::vector<std::size_t> support() const;

 private:
  std::vector<ConstraintTemplate> templates_;
  std::vector<Rational> probs_;
};

enum class ThresholdKind { CoarseUnitImplicate, CoarseTwoXorImplicate, Sharp, TriviallySatisfiable };

std::string_view to_string(ThresholdKind kind);

struct ThresholdWitness {
  std::size_t template_index = 0;
  /// One unit clause, or the pair (x_i | x_j), (~x_i | ~x_j).
  std::vector<Clause> implicates;
};

struct ThresholdClass {
  ThresholdKind kind = ThresholdKind::Sharp;
  std::optional<ThresholdWitness> witness;
  /// Set when a different coarse condition also held in another template.
  bool other_coarse_condition = false;
};

bool is_trivially_satisfiable(const ConstraintDistribution& d);

/// Fixed priority: trivially satisfiable, unit implicate, 2-XOR implicate, sharp.
ThresholdClass classify_threshold(const ConstraintDistribution& d);

/// The 2^k disjunctions over k positions; sign strings in lexicographic order
/// with '+' before '-'.
std::vector<ConstraintTemplate> clause_templates(int k);

/// One template per named relation.
ConstraintTemplate clause_template(std::string_view signs);
ConstraintTemplate or_template(int k);
ConstraintTemplate nae_template(int k);
ConstraintTemplate parity_template(int k, bool odd);
ConstraintTemplate one_in_k_template(int k);

/// Parses `OR3`, `NAE3`, `XOR3_EVEN`, `XOR3_ODD`, `ONE_IN_3`, `CLAUSE<k>:<signs>`.
std::optional<ConstraintTemplate> named_template(std::string_view name);

/// Reads a distribution from lines `t <id> <arity> <hex> [weight]` or
/// `<shorthand> [weight]`; `#` starts a comment. Weights default to 1.
ConstraintDistribution parse_distribution(std::string_view text);
std::string serialize_distribution(const ConstraintDistribution& d);

}  // namespace satphase
