// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "satphase/constraint.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "satphase/error.hpp"

namespace satphase {

namespace {

bool bit_of(std::uint32_t row, int pos) { return (row >> pos) & 1u; }

// Bitmask over the 2^len projections of satisfying rows onto `positions`.
std::uint32_t projected_rows(const ConstraintTemplate& t, std::span<const int> positions) {
  std::uint32_t seen = 0;
  for (std::uint32_t a = 0; a < t.rows(); ++a) {
    if (!t.accepts(a)) continue;
    std::uint32_t p = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) p |= std::uint32_t{bit_of(a, positions[i])} << i;
    seen |= 1u << p;
  }
  return seen;
}

bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

bool Clause::satisfied_by(std::uint64_t assignment) const noexcept {
  for (const Literal& l : literals)
    if (((assignment >> l.var) & 1u) != static_cast<std::uint64_t>(l.negated)) return true;
  return false;
}

std::string to_string(const Clause& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i) s += " | ";
    if (c.literals[i].negated) s += '~';
    s += "x" + std::to_string(c.literals[i].var + 1);
  }
  return s + ")";
}

ConstraintTemplate::ConstraintTemplate(int arity, const Table& table, std::string name)
    : arity_(arity), table_(table), name_(std::move(name)) {
  if (arity < 1 || arity > kMaxArity)
    throw UsageError("template arity " + std::to_string(arity) + " outside [1, " +
                     std::to_string(kMaxArity) + "]");
  for (std::size_t a = rows(); a < kMaxTableBits; ++a)
    if (table_[a]) throw UsageError("template table has bits beyond 2^arity");
  if (table_.none()) throw UsageError("template has no satisfying assignment");
}

std::string ConstraintTemplate::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t bytes = std::max<std::size_t>(1, rows() / 8);
  std::string out;
  for (std::size_t b = 0; b < bytes; ++b) {
    unsigned v = 0;
    for (unsigned j = 0; j < 8 && 8 * b + j < rows(); ++j) v |= unsigned{table_[8 * b + j]} << j;
    out += kDigits[v >> 4];
    out += kDigits[v & 15];
  }
  return out;
}

ConstraintTemplate ConstraintTemplate::from_hex(int arity, std::string_view hex, std::string name) {
  if (arity < 1 || arity > kMaxArity) throw UsageError("template arity " + std::to_string(arity) + " out of range");
  const std::size_t rows = std::size_t{1} << arity;
  const std::size_t bytes = std::max<std::size_t>(1, rows / 8);
  if (hex.size() != 2 * bytes)
    throw UsageError("hex table for arity " + std::to_string(arity) + " needs " +
                     std::to_string(2 * bytes) + " digits, got '" + std::string(hex) + "'");
  Table t;
  for (std::size_t b = 0; b < bytes; ++b) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(hex.data() + 2 * b, hex.data() + 2 * b + 2, v, 16);
    if (ec != std::errc{} || p != hex.data() + 2 * b + 2)
      throw UsageError("bad hex digit in '" + std::string(hex) + "'");
    for (unsigned j = 0; j < 8; ++j)
      if ((v >> j) & 1u) {
        if (8 * b + j >= rows) throw UsageError("hex table '" + std::string(hex) + "' sets rows beyond 2^arity");
        t[8 * b + j] = true;
      }
  }
  return ConstraintTemplate(arity, t, std::move(name));
}

ConstraintTemplate ConstraintTemplate::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != arity_) throw UsageError("permutation length differs from arity");
  Table t;
  for (std::uint32_t b = 0; b < rows(); ++b) {
    std::uint32_t a = 0;
    for (int i = 0; i < arity_; ++i) a |= std::uint32_t{bit_of(b, i)} << perm[i];
    t[b] = table_[a];
  }
  return ConstraintTemplate(arity_, t, name_);
}

std::optional<bool> ConstraintTemplate::parity_rhs() const noexcept {
  for (int rhs = 0; rhs < 2; ++rhs) {
    bool ok = true;
    for (std::uint32_t a = 0; a < rows() && ok; ++a)
      ok = table_[a] == ((std::popcount(a) & 1) == rhs);
    if (ok) return rhs == 1;
  }
  return std::nullopt;
}

bool eval_template(const ConstraintTemplate& t, std::span<const bool> assignment) {
  if (static_cast<int>(assignment.size()) != t.arity())
    throw UsageError("assignment has " + std::to_string(assignment.size()) + " values, template arity is " +
                     std::to_string(t.arity()));
  std::uint32_t row = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) row |= std::uint32_t{assignment[i]} << i;
  return t.accepts(row);
}

std::vector<Clause> implicates_up_to(const ConstraintTemplate& t, int max_len, bool minimal_only) {
  if (max_len < 0 || max_len > t.arity())
    throw UsageError("max_len " + std::to_string(max_len) + " outside [0, arity]");
  std::vector<Clause> out;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<int> pos(len);
    std::iota(pos.begin(), pos.end(), 0);
    do {
      const std::uint32_t seen = projected_rows(t, pos);
      // A clause is falsified exactly by the projection whose bit i equals
      // the negation flag of literal i.
      for (std::uint32_t signs = 0; signs < (1u << len); ++signs) {
        if ((seen >> signs) & 1u) continue;
        Clause c;
        for (int i = 0; i < len; ++i) c.literals.push_back({pos[i], bit_of(signs, i)});
        out.push_back(std::move(c));
      }
    } while (next_combination(pos, t.arity()));
  }
  std::sort(out.begin(), out.end(), [](const Clause& a, const Clause& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.literals < b.literals;
  });
  if (minimal_only) {
    std::vector<Clause> kept;
    for (const Clause& c : out) {
      bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const Clause& s) {
        return s.size() < c.size() &&
               std::includes(c.literals.begin(), c.literals.end(), s.literals.begin(), s.literals.end());
      });
      if (!subsumed) kept.push_back(c);
    }
    out = std::move(kept);
  }
  return out;
}

std::optional<UnitDependence> strongly_depends_on_literal(const ConstraintTemplate& t) {
  for (int i = 0; i < t.arity(); ++i) {
    const int p[] = {i};
    const std::uint32_t seen = projected_rows(t, p);
    if (seen == 0b01) return UnitDependence{i, false};
    if (seen == 0b10) return UnitDependence{i, true};
  }
  return std::nullopt;
}

std::optional<XorDependence> strongly_depends_on_2xor(const ConstraintTemplate& t) {
  for (int i = 0; i < t.arity(); ++i)
    for (int j = i + 1; j < t.arity(); ++j) {
      const int p[] = {i, j};
      // Only the rows 01 and 10 (as projections) may occur.
      if ((projected_rows(t, p) & 0b1001) == 0) return XorDependence{i, j};
    }
  return std::nullopt;
}

ConstraintDistribution::ConstraintDistribution(std::vector<ConstraintTemplate> templates,
                                               std::vector<Rational> probs)
    : templates_(std::move(templates)), probs_(std::move(probs)) {
  if (templates_.empty()) throw UsageError("distribution has no templates");
  if (templates_.size() != probs_.size()) throw UsageError("templates and probabilities differ in length");
  Rational sum(0);
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    if (templates_[i].arity() != templates_.front().arity())
      throw UsageError("distribution mixes arities " + std::to_string(templates_.front().arity()) + " and " +
                       std::to_string(templates_[i].arity()));
    if (probs_[i] < Rational(0) || probs_[i] > Rational(1)) throw UsageError("probability outside [0, 1]");
    sum += probs_[i];
  }
  if (sum != Rational(1)) throw UsageError("probabilities sum to " + format_rational(sum) + ", not 1");
}

ConstraintDistribution ConstraintDistribution::from_weights(std::vector<ConstraintTemplate> templates,
                                                            std::vector<Rational> weights) {
  Rational total(0);
  for (const Rational& w : weights) {
    if (w < Rational(0)) throw UsageError("negative weight");
    total += w;
  }
  if (total == Rational(0)) throw UsageError("weights sum to zero");
  for (Rational& w : weights) w /= total;
  return ConstraintDistribution(std::move(templates), std::move(weights));
}

ConstraintDistribution ConstraintDistribution::uniform(std::vector<ConstraintTemplate> templates) {
  std::vector<Rational> w(templates.size(), Rational(1));
  return from_weights(std::move(templates), std::move(w));
}

std::vector<std::size_t> ConstraintDistribution::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < probs_.size(); ++i)
    if (probs_[i] > Rational(0)) s.push_back(i);
  return s;
}

std::string_view to_string(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::CoarseUnitImplicate: return "coarse-unit-implicate";
    case ThresholdKind::CoarseTwoXorImplicate: return "coarse-2xor-implicate";
    case ThresholdKind::Sharp: return "sharp";
    case ThresholdKind::TriviallySatisfiable: return "trivially-satisfiable";
  }
  return "?";
}

bool is_trivially_satisfiable(const ConstraintDistribution& d) {
  bool zeros = true, ones = true;
  for (std::size_t i : d.support()) {
    const ConstraintTemplate& t = d.templates()[i];
    zeros = zeros && t.accepts(0);
    ones = ones && t.accepts(t.rows() - 1);
  }
  return zeros || ones;
}

ThresholdClass classify_threshold(const ConstraintDistribution& d) {
  const auto supp = d.support();
  if (supp.empty()) throw UsageError("distribution has empty support");
  ThresholdClass out;
  if (is_trivially_satisfiable(d)) {
    out.kind = ThresholdKind::TriviallySatisfiable;
    return out;
  }
  std::optional<ThresholdWitness> unit, two_xor;
  for (std::size_t i : supp) {
    const ConstraintTemplate& t = d.templates()[i];
    if (!unit)
      if (auto u = strongly_depends_on_literal(t))
        unit = ThresholdWitness{i, {Clause{{{u->position, !u->value}}}}};
    if (!two_xor)
      if (auto x = strongly_depends_on_2xor(t))
        two_xor = ThresholdWitness{
            i, {Clause{{{x->first, false}, {x->second, false}}}, Clause{{{x->first, true}, {x->second, true}}}}};
  }
  if (unit) {
    out.kind = ThresholdKind::CoarseUnitImplicate;
    out.witness = unit;
    out.other_coarse_condition = two_xor.has_value();
  } else if (two_xor) {
    out.kind = ThresholdKind::CoarseTwoXorImplicate;
    out.witness = two_xor;
  } else {
    out.kind = ThresholdKind::Sharp;
  }
  return out;
}

ConstraintTemplate clause_template(std::string_view signs) {
  const int k = static_cast<int>(signs.size());
  std::uint32_t falsified = 0;  // the single row violating the clause
  for (int i = 0; i < k; ++i) {
    if (signs[i] == '-') falsified |= 1u << i;
    else if (signs[i] != '+') throw UsageError("clause signs must be '+' or '-': '" + std::string(signs) + "'");
  }
  return ConstraintTemplate::from_predicate(
      k, [&](std::uint32_t a) { return a != falsified; }, "CLAUSE" + std::to_string(k) + ":" + std::string(signs));
}

std::vector<ConstraintTemplate> clause_templates(int k) {
  if (k < 1 || k > kMaxArity) throw UsageError("clause arity " + std::to_string(k) + " out of range");
  std::vector<ConstraintTemplate> out;
  for (std::uint32_t s = 0; s < (1u << k); ++s) {
    std::string signs(k, '+');
    for (int i = 0; i < k; ++i)
      if ((s >> (k - 1 - i)) & 1u) signs[i] = '-';
    out.push_back(clause_template(signs));
  }
  return out;
}

ConstraintTemplate or_template(int k) {
  return ConstraintTemplate::from_predicate(k, [](std::uint32_t a) { return a != 0; }, "OR" + std::to_string(k));
}

ConstraintTemplate nae_template(int k) {
  return ConstraintTemplate::from_predicate(
      k, [k](std::uint32_t a) { return a != 0 && a != (1u << k) - 1; }, "NAE" + std::to_string(k));
}

ConstraintTemplate parity_template(int k, bool odd) {
  return ConstraintTemplate::from_predicate(
      k, [odd](std::uint32_t a) { return (std::popcount(a) & 1) == static_cast<int>(odd); },
      "XOR" + std::to_string(k) + (odd ? "_ODD" : "_EVEN"));
}

ConstraintTemplate one_in_k_template(int k) {
  return ConstraintTemplate::from_predicate(
      k, [](std::uint32_t a) { return std::popcount(a) == 1; }, "ONE_IN_" + std::to_string(k));
}

std::optional<ConstraintTemplate> named_template(std::string_view name) {
  auto arity_of = [](std::string_view digits) -> int {
    int k = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || p != digits.data() + digits.size() || k < 1 || k > kMaxArity) return 0;
    return k;
  };
  auto starts = [&](std::string_view prefix) { return name.substr(0, prefix.size()) == prefix; };
  if (starts("CLAUSE")) {
    auto colon = name.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    int k = arity_of(name.substr(6, colon - 6));
    std::string_view signs = name.substr(colon + 1);
    if (k == 0 || static_cast<int>(signs.size()) != k) return std::nullopt;
    if (signs.find_first_not_of("+-") != std::string_view::npos) return std::nullopt;
    return clause_template(signs);
  }
  if (starts("ONE_IN_"))
    if (int k = arity_of(name.substr(7))) return one_in_k_template(k);
  if (starts("NAE"))
    if (int k = arity_of(name.substr(3))) return nae_template(k);
  if (starts("XOR")) {
    auto us = name.find('_');
    if (us == std::string_view::npos) return std::nullopt;
    int k = arity_of(name.substr(3, us - 3));
    if (k == 0) return std::nullopt;
    if (name.substr(us) == "_EVEN") return parity_template(k, false);
    if (name.substr(us) == "_ODD") return parity_template(k, true);
    return std::nullopt;
  }
  if (starts("OR"))
    if (int k = arity_of(name.substr(2))) return or_template(k);
  return std::nullopt;
}

ConstraintDistribution parse_distribution(std::string_view text) {
  std::vector<ConstraintTemplate> templates;
  std::vector<Rational> weights;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    try {
      std::size_t weight_at;
      if (tok[0] == "t") {
        if (tok.size() < 4 || tok.size() > 5) throw ParseError(line_no, "expected 't <id> <arity> <hex> [weight]'");
        int arity = 0;
        auto [p, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), arity);
        if (ec != std::errc{} || p != tok[2].data() + tok[2].size())
          throw ParseError(line_no, "bad arity '" + std::string(tok[2]) + "'");
        templates.push_back(ConstraintTemplate::from_hex(arity, tok[3], std::string(tok[1])));
        weight_at = 4;
      } else {
        auto t = named_template(tok[0]);
        if (!t) throw ParseError(line_no, "unknown template '" + std::string(tok[0]) + "'");
        if (tok.size() > 2) throw ParseError(line_no, "trailing tokens after template");
        templates.push_back(*t);
        weight_at = 1;
      }
      weights.push_back(tok.size() > weight_at ? parse_rational(tok[weight_at]) : Rational(1));
    } catch (const UsageError& e) {
      throw ParseError(line_no, e.what());
    }
    if (eol == text.size()) break;
  }
  if (templates.empty()) throw ParseError(0, "distribution lists no templates");
  try {
    return ConstraintDistribution::from_weights(std::move(templates), std::move(weights));
  } catch (const UsageError& e) {
    throw ParseError(0, e.what());
  }
}

std::string serialize_distribution(const ConstraintDistribution& d) {
  std::ostringstream os;
  for (std::size_t i = 0; i < d.templates().size(); ++i) {
    const auto& t = d.templates()[i];
    os << "t " << i << ' ' << t.arity() << ' ' << t.hex() << ' ' << format_rational(d.probs()[i]);
    if (!t.name().empty()) os << "  # " << t.name();
    os << '\n';
  }
  return os.str();
}

}  // namespace satphase
