// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "satphase/instance.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "satphase/error.hpp"
#include "satphase/rng.hpp"

namespace satphase {

namespace {

// Stream domains; frozen.
constexpr std::uint64_t kDomainMolloy = 1;
constexpr std::uint64_t kDomain2pThree = 3;
constexpr std::uint64_t kDomain2pTwo = 2;

// Draws template indices with the exact rational probabilities of `d`.
class TemplateSampler {
 public:
  explicit TemplateSampler(const ConstraintDistribution& d) {
    std::uint64_t lcm = 1;
    for (const Rational& p : d.probs()) {
      const auto den = static_cast<std::uint64_t>(p.denominator());
      const std::uint64_t g = std::gcd(lcm, den);
      if (lcm / g > std::numeric_limits<std::uint64_t>::max() / den)
        throw UsageError("probability denominators too large to sample exactly");
      lcm = lcm / g * den;
    }
    denominator_ = lcm;
    std::uint64_t acc = 0;
    for (const Rational& p : d.probs()) {
      acc += static_cast<std::uint64_t>(p.numerator()) * (lcm / static_cast<std::uint64_t>(p.denominator()));
      cumulative_.push_back(acc);
    }
  }

  std::size_t draw(CounterRng& rng) const {
    if (cumulative_.size() == 1) return 0;
    const std::uint64_t r = rng.below(denominator_);
    return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), r) -
                                    cumulative_.begin());
  }

 private:
  std::uint64_t denominator_ = 1;
  std::vector<std::uint64_t> cumulative_;
};

// Uniform ordered tuple of k distinct variables: a uniform k-subset in a
// uniform order is the same law as sequential draws without replacement.
std::vector<int> draw_tuple(CounterRng& rng, int n, int k) {
  std::vector<int> vars;
  vars.reserve(k);
  while (static_cast<int>(vars.size()) < k) {
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  return vars;
}

std::vector<std::string_view> tokens(std::string_view line) {
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

template <class Int>
Int to_int(std::string_view s, std::size_t line, const char* what) {
  Int v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t pos = 0, no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    out.push_back({++no, text.substr(pos, eol - pos)});
    pos = eol + 1;
  }
  return out;
}

Instance parse_block(const std::vector<Line>& lines, std::size_t begin, std::size_t end) {
  Instance inst;
  std::size_t declared_m = 0;
  bool header = false;
  std::map<long long, std::size_t> ids;
  for (std::size_t li = begin; li < end; ++li) {
    const Line& L = lines[li];
    std::string_view body = L.text;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    auto tok = tokens(body);
    if (tok.empty()) continue;
    if (tok[0] == "p") {
      if (header) throw ParseError(L.number, "duplicate header");
      if (tok.size() != 5 || tok[1] != "gsat") throw ParseError(L.number, "expected 'p gsat <n> <M> <k>'");
      inst.n = to_int<int>(tok[2], L.number, "variable count");
      declared_m = to_int<std::size_t>(tok[3], L.number, "constraint count");
      to_int<int>(tok[4], L.number, "arity");
      if (inst.n < 0) throw ParseError(L.number, "negative variable count");
      header = true;
      continue;
    }
    if (!header) throw ParseError(L.number, "record before 'p gsat' header");
    if (tok[0] == "m") {
      if (tok.size() < 3) throw ParseError(L.number, "expected 'm <key> <value>'");
      std::string value(tok[2]);
      for (std::size_t i = 3; i < tok.size(); ++i) value += " " + std::string(tok[i]);
      inst.meta.emplace_back(std::string(tok[1]), std::move(value));
    } else if (tok[0] == "t") {
      if (tok.size() != 4) throw ParseError(L.number, "expected 't <id> <arity> <hex>'");
      const auto id = to_int<long long>(tok[1], L.number, "template id");
      if (ids.count(id)) throw ParseError(L.number, "template id " + std::string(tok[1]) + " declared twice");
      const int arity = to_int<int>(tok[2], L.number, "arity");
      try {
        inst.templates.push_back(ConstraintTemplate::from_hex(arity, tok[3]));
      } catch (const UsageError& e) {
        throw ParseError(L.number, e.what());
      }
      ids[id] = inst.templates.size() - 1;
    } else if (tok[0] == "c") {
      if (tok.size() < 2) throw ParseError(L.number, "expected 'c <template-id> <v1> ... <vk>'");
      const auto id = to_int<long long>(tok[1], L.number, "template id");
      auto it = ids.find(id);
      if (it == ids.end()) throw ParseError(L.number, "unknown template id " + std::string(tok[1]));
      AppliedConstraint c{it->second, {}};
      const int arity = inst.templates[it->second].arity();
      if (static_cast<int>(tok.size()) - 2 != arity)
        throw ParseError(L.number, "template " + std::string(tok[1]) + " has arity " + std::to_string(arity) +
                                       ", got " + std::to_string(tok.size() - 2) + " variables");
      for (std::size_t i = 2; i < tok.size(); ++i) {
        const int v = to_int<int>(tok[i], L.number, "variable");
        if (v < 1 || v > inst.n) throw ParseError(L.number, "variable " + std::to_string(v) + " outside [1, n]");
        if (std::find(c.vars.begin(), c.vars.end(), v - 1) != c.vars.end())
          throw ParseError(L.number, "variable " + std::to_string(v) + " repeated in one constraint");
        c.vars.push_back(v - 1);
      }
      inst.constraints.push_back(std::move(c));
    } else {
      throw ParseError(L.number, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 'p gsat' header");
  if (inst.constraints.size() != declared_m)
    throw ParseError(lines[begin].number, "header declares " + std::to_string(declared_m) + " constraints, found " +
                                              std::to_string(inst.constraints.size()));
  return inst;
}

bool is_header(std::string_view line) {
  auto tok = tokens(line.substr(0, line.find('#')));
  return !tok.empty() && tok[0] == "p";
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

int Instance::max_arity() const noexcept {
  int k = 0;
  for (const auto& t : templates) k = std::max(k, t.arity());
  return k;
}

std::optional<std::string> Instance::meta_value(std::string_view key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return std::nullopt;
}

void Instance::set_meta(std::string key, std::string value) {
  for (auto& [k, v] : meta)
    if (k == key) {
      v = std::move(value);
      return;
    }
  meta.emplace_back(std::move(key), std::move(value));
}

void Instance::validate() const {
  if (n < 0) throw UsageError("negative variable count");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.template_id >= templates.size())
      throw UsageError("constraint " + std::to_string(i) + " names unknown template " + std::to_string(c.template_id));
    if (static_cast<int>(c.vars.size()) != templates[c.template_id].arity())
      throw UsageError("constraint " + std::to_string(i) + " has the wrong number of variables");
    for (std::size_t a = 0; a < c.vars.size(); ++a) {
      if (c.vars[a] < 0 || c.vars[a] >= n)
        throw UsageError("constraint " + std::to_string(i) + " uses variable outside [1, n]");
      for (std::size_t b = a + 1; b < c.vars.size(); ++b)
        if (c.vars[a] == c.vars[b]) throw UsageError("constraint " + std::to_string(i) + " repeats a variable");
    }
  }
}

bool Instance::constraint_satisfied(std::size_t i, const std::vector<bool>& assignment) const {
  const auto& c = constraints[i];
  std::uint32_t row = 0;
  for (std::size_t p = 0; p < c.vars.size(); ++p) row |= std::uint32_t{assignment[c.vars[p]]} << p;
  return templates[c.template_id].accepts(row);
}

bool Instance::satisfied_by(const std::vector<bool>& assignment) const {
  if (static_cast<int>(assignment.size()) != n) throw UsageError("assignment length differs from n");
  for (std::size_t i = 0; i < constraints.size(); ++i)
    if (!constraint_satisfied(i, assignment)) return false;
  return true;
}

Instance Instance::subset(const std::vector<std::size_t>& indices) const {
  Instance out;
  out.n = n;
  out.templates = templates;
  for (std::size_t i : indices) out.constraints.push_back(constraints.at(i));
  return out;
}

std::vector<int> Instance::occurring_vars() const {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const auto& c : constraints)
    for (int v : c.vars) seen[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

bool Cnf::satisfied_by(const std::vector<bool>& assignment) const {
  for (const Clause& c : clauses) {
    bool sat = false;
    for (const Literal& l : c.literals) sat = sat || assignment[l.var] != l.negated;
    if (!sat) return false;
  }
  return true;
}

Instance gen_molloy(const ConstraintDistribution& d, int n, std::size_t m, std::uint64_t seed) {
  const int k = d.arity();
  if (k < 1) throw UsageError("distribution has no templates");
  if (n < k) throw UsageError("need n >= k (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  const TemplateSampler sampler(d);
  Instance inst;
  inst.n = n;
  inst.templates = d.templates();
  inst.constraints.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    CounterRng rng(stream_key(seed, kDomainMolloy, i));
    std::vector<int> vars = draw_tuple(rng, n, k);
    inst.constraints.push_back({sampler.draw(rng), std::move(vars)});
  }
  inst.set_meta("generator", "molloy");
  inst.set_meta("seed", std::to_string(seed));
  inst.set_meta("density", format_double(static_cast<double>(m) / n));
  return inst;
}

Instance gen_ksat(int k, int n, std::size_t m, std::uint64_t seed) {
  Instance inst = gen_molloy(ConstraintDistribution::uniform(clause_templates(k)), n, m, seed);
  inst.set_meta("generator", "ksat");
  inst.set_meta("k", std::to_string(k));
  return inst;
}

Instance gen_2p_sat(double p, double c, int n, std::uint64_t seed) {
  if (!(p >= 0 && p <= 1)) throw UsageError("p must lie in [0, 1]");
  if (!(c >= 0)) throw UsageError("density must be nonnegative");
  if (n < 3) throw UsageError("(2+p)-SAT needs n >= 3");
  const auto total = static_cast<std::size_t>(std::floor(c * n + 0.5));
  const auto threes = std::min(total, static_cast<std::size_t>(std::floor(p * c * n + 0.5)));
  const std::size_t twos = total - threes;

  Instance inst;
  inst.n = n;
  inst.templates = clause_templates(3);
  for (auto& t : clause_templates(2)) inst.templates.push_back(std::move(t));
  for (std::size_t i = 0; i < threes; ++i) {
    CounterRng rng(stream_key(seed, kDomain2pThree, i));
    auto vars = draw_tuple(rng, n, 3);
    inst.constraints.push_back({static_cast<std::size_t>(rng.below(8)), std::move(vars)});
  }
  for (std::size_t i = 0; i < twos; ++i) {
    CounterRng rng(stream_key(seed, kDomain2pTwo, i));
    auto vars = draw_tuple(rng, n, 2);
    inst.constraints.push_back({8 + static_cast<std::size_t>(rng.below(4)), std::move(vars)});
  }
  inst.set_meta("generator", "2p");
  inst.set_meta("seed", std::to_string(seed));
  inst.set_meta("p", format_double(p));
  inst.set_meta("density", format_double(static_cast<double>(total) / n));
  return inst;
}

Instance gen_kxorsat(int k, int n, std::size_t m, std::uint64_t seed) {
  Instance inst = gen_molloy(ConstraintDistribution::uniform({parity_template(k, false), parity_template(k, true)}),
                             n, m, seed);
  inst.set_meta("generator", "kxor");
  inst.set_meta("k", std::to_string(k));
  return inst;
}

Cnf to_cnf(const Instance& inst) {
  Cnf cnf;
  cnf.n = inst.n;
  for (std::size_t i = 0; i < inst.constraints.size(); ++i) {
    const auto& c = inst.constraints[i];
    const auto& t = inst.templates[c.template_id];
    for (std::uint32_t a = 0; a < t.rows(); ++a) {
      if (t.accepts(a)) continue;
      Clause cl;
      for (int p = 0; p < t.arity(); ++p) cl.literals.push_back({c.vars[p], ((a >> p) & 1u) != 0});
      cnf.clauses.push_back(std::move(cl));
      cnf.origin.push_back(i);
    }
  }
  return cnf;
}

Instance instance_from_cnf(const Cnf& cnf) {
  Instance inst;
  inst.n = cnf.n;
  std::map<std::string, std::size_t> by_signs;
  for (const Clause& c : cnf.clauses) {
    if (c.empty()) throw UsageError("empty clause has no template form");
    std::string signs;
    AppliedConstraint ac;
    for (const Literal& l : c.literals) {
      signs += l.negated ? '-' : '+';
      ac.vars.push_back(l.var);
    }
    auto [it, fresh] = by_signs.try_emplace(signs, inst.templates.size());
    if (fresh) inst.templates.push_back(clause_template(signs));
    ac.template_id = it->second;
    inst.constraints.push_back(std::move(ac));
  }
  inst.set_meta("generator", "cnf");
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "p gsat " << inst.n << ' ' << inst.constraints.size() << ' ' << inst.max_arity() << '\n';
  for (const auto& [k, v] : inst.meta) os << "m " << k << ' ' << v << '\n';
  for (std::size_t i = 0; i < inst.templates.size(); ++i)
    os << "t " << i << ' ' << inst.templates[i].arity() << ' ' << inst.templates[i].hex() << '\n';
  for (const auto& c : inst.constraints) {
    os << "c " << c.template_id;
    for (int v : c.vars) os << ' ' << v + 1;
    os << '\n';
  }
  return os.str();
}

Instance parse_instance(std::string_view text) {
  auto lines = split_lines(text);
  return parse_block(lines, 0, lines.size());
}

std::vector<Instance> parse_instances(std::string_view text) {
  auto lines = split_lines(text);
  std::vector<Instance> out;
  std::size_t start = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_header(lines[i].text)) continue;
    if (start < i) out.push_back(parse_block(lines, start, i));
    start = i;
  }
  if (start < lines.size()) out.push_back(parse_block(lines, start, lines.size()));
  return out;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.n << ' ' << cnf.clauses.size() << '\n';
  for (const Clause& c : cnf.clauses) {
    for (const Literal& l : c.literals) os << (l.negated ? -(l.var + 1) : l.var + 1) << ' ';
    os << "0\n";
  }
  return os.str();
}

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> pending;
  auto flush = [&](std::size_t line) {
    const std::set<int> lits(pending.begin(), pending.end());
    std::set<int> kept;
    Clause c;
    // Literal order is kept; repeats collapse onto their first occurrence.
    for (int l : pending) {
      const int v = std::abs(l);
      if (v > cnf.n) throw ParseError(line, "literal " + std::to_string(l) + " exceeds declared variable count");
      if (lits.count(-l)) {
        pending.clear();
        return;  // tautology
      }
      if (kept.insert(l).second) c.literals.push_back({v - 1, l < 0});
    }
    pending.clear();
    cnf.clauses.push_back(std::move(c));
  };
  std::size_t seen_clauses = 0;
  for (const Line& L : split_lines(text)) {
    auto tok = tokens(L.text);
    if (tok.empty() || tok[0] == "c" || tok[0] == "%") continue;
    if (tok[0] == "p") {
      if (header) throw ParseError(L.number, "duplicate header");
      if (tok.size() != 4 || tok[1] != "cnf") throw ParseError(L.number, "expected 'p cnf <vars> <clauses>'");
      cnf.n = to_int<int>(tok[2], L.number, "variable count");
      declared = to_int<std::size_t>(tok[3], L.number, "clause count");
      header = true;
      continue;
    }
    if (!header) throw ParseError(L.number, "clause before 'p cnf' header");
    for (auto t : tok) {
      const int l = to_int<int>(t, L.number, "literal");
      if (l == 0) {
        ++seen_clauses;
        flush(L.number);
      } else {
        pending.push_back(l);
      }
    }
  }
  if (!header) throw ParseError(0, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(0, "last clause is not terminated by 0");
  if (seen_clauses != declared)
    throw ParseError(0, "header declares " + std::to_string(declared) + " clauses, found " +
                            std::to_string(seen_clauses));
  return cnf;
}

}  // namespace satphase
