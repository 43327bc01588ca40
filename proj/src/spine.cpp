// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "satphase/spine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "satphase/error.hpp"
#include "satphase/solver.hpp"

namespace satphase {

namespace {

constexpr int kSpineMaxCandidateArity = 5;

// A constraint seen as (variables, accepted rows); arity 0 never holds.
struct Unit {
  std::vector<int> vars;
  ConstraintTemplate::Table accepts;

  bool holds(std::uint64_t assignment) const {
    std::uint32_t row = 0;
    for (std::size_t p = 0; p < vars.size(); ++p) row |= static_cast<std::uint32_t>((assignment >> vars[p]) & 1u) << p;
    return accepts[row];
  }
};

std::vector<Unit> units_of(const Instance& inst) {
  std::vector<Unit> out;
  for (const auto& c : inst.constraints) out.push_back({c.vars, inst.templates[c.template_id].table()});
  return out;
}

std::vector<Unit> units_of(const Cnf& f) {
  std::vector<Unit> out;
  for (const Clause& c : f.clauses) {
    Unit u;
    std::uint32_t falsified = 0;
    for (std::size_t p = 0; p < c.literals.size(); ++p) {
      u.vars.push_back(c.literals[p].var);
      if (c.literals[p].negated) falsified |= 1u << p;
    }
    for (std::uint32_t a = 0; a < (1u << c.literals.size()); ++a) u.accepts[a] = a != falsified;
    out.push_back(std::move(u));
  }
  return out;
}

// Models of one maximal satisfiable subformula, which is the complement of
// `falsified`.
struct MssGroup {
  std::vector<std::uint64_t> falsified;
  std::size_t falsified_count = 0;
  std::vector<std::uint64_t> models;
};

// Every assignment satisfies a unique set of units; the maximal such sets are
// the maximal satisfiable subformulas, and their models are exactly the
// assignments that produce them.
std::vector<MssGroup> enumerate_mss(int n, const std::vector<Unit>& units) {
  const std::size_t m = units.size();
  const std::size_t words = std::max<std::size_t>(1, (m + 63) / 64);
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint64_t> fals(total * words, 0);
  std::vector<std::uint32_t> count(total, 0);
  for (std::uint64_t a = 0; a < total; ++a) {
    std::uint64_t* f = &fals[a * words];
    for (std::size_t j = 0; j < m; ++j)
      if (!units[j].holds(a)) {
        f[j / 64] |= std::uint64_t{1} << (j % 64);
        ++count[a];
      }
  }
  std::vector<std::uint64_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint64_t x, std::uint64_t y) { return count[x] < count[y]; });

  std::vector<MssGroup> groups;
  if (count[order.front()] == 0) {
    MssGroup g;
    g.falsified.assign(words, 0);
    for (std::uint64_t a : order) {
      if (count[a] != 0) break;
      g.models.push_back(a);
    }
    groups.push_back(std::move(g));
    return groups;
  }
  std::vector<std::vector<std::size_t>> by_min(m);
  for (std::uint64_t a : order) {
    const std::uint64_t* f = &fals[a * words];
    bool dominated = false;
    for (std::size_t w = 0; w < words && !dominated; ++w)
      for (std::uint64_t bits = f[w]; bits && !dominated; bits &= bits - 1) {
        const std::size_t e = w * 64 + std::countr_zero(bits);
        for (std::size_t gi : by_min[e]) {
          const MssGroup& g = groups[gi];
          bool subset = true;
          for (std::size_t x = 0; x < words && subset; ++x) subset = (g.falsified[x] & ~f[x]) == 0;
          if (!subset) continue;
          if (g.falsified_count == count[a]) groups[gi].models.push_back(a);
          dominated = true;
          break;
        }
      }
    if (dominated) continue;
    MssGroup g;
    g.falsified.assign(f, f + words);
    g.falsified_count = count[a];
    g.models.push_back(a);
    std::size_t first = 0;
    while (!((f[first / 64] >> (first % 64)) & 1u)) ++first;
    by_min[first].push_back(groups.size());
    groups.push_back(std::move(g));
  }
  return groups;
}

std::uint64_t pack(const std::vector<bool>& model) {
  std::uint64_t a = 0;
  for (std::size_t v = 0; v < model.size(); ++v)
    if (model[v]) a |= std::uint64_t{1} << v;
  return a;
}

std::uint32_t project(std::uint64_t assignment, const std::vector<int>& tuple) {
  std::uint32_t p = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) p |= static_cast<std::uint32_t>((assignment >> tuple[i]) & 1u) << i;
  return p;
}

// A candidate C = template applied to tuple (tau[perm[0]], ..., tau[perm[k-1]]),
// summarized by the patterns over sorted tau that it accepts.
struct CandidateMask {
  std::uint64_t accepted = 0;
  std::size_t template_index = 0;
  std::vector<int> perm;
};

std::map<int, std::vector<CandidateMask>> candidate_masks(const std::vector<ConstraintTemplate>& candidates) {
  std::map<int, std::vector<CandidateMask>> out;
  for (std::size_t ti = 0; ti < candidates.size(); ++ti) {
    const auto& t = candidates[ti];
    const int k = t.arity();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::uint64_t mask = 0;
      for (std::uint32_t p = 0; p < (1u << k); ++p) {
        std::uint32_t a = 0;
        for (int j = 0; j < k; ++j) a |= ((p >> perm[j]) & 1u) << j;
        if (t.accepts(a)) mask |= std::uint64_t{1} << p;
      }
      auto& list = out[k];
      if (std::none_of(list.begin(), list.end(), [&](const CandidateMask& c) { return c.accepted == mask; }))
        list.push_back({mask, ti, perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
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

Instance with_candidate(const Instance& inst, const std::vector<std::size_t>& xi, const ConstraintTemplate& t,
                        const std::vector<int>& vars) {
  Instance out = inst.subset(xi);
  out.templates.push_back(t);
  out.constraints.push_back({out.templates.size() - 1, vars});
  return out;
}

std::vector<std::size_t> all_indices(const Instance& inst) {
  std::vector<std::size_t> idx(inst.constraints.size());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

class SpineBuilder {
 public:
  SpineBuilder(const Instance& inst, const std::vector<ConstraintTemplate>& candidates, const SpineOptions& opts)
      : inst_(inst), candidates_(candidates), opts_(opts), in_spine_(static_cast<std::size_t>(inst.n), -1) {}

  void add(const std::vector<std::size_t>& xi, std::size_t template_index, const std::vector<int>& vars) {
    SpineCertificate cert{xi, candidates_[template_index], vars};
    if (opts_.shrink_certificates) shrink(cert);
    const std::size_t id = report_.certificates.size();
    report_.certificates.push_back(std::move(cert));
    for (int v : vars)
      if (in_spine_[v] < 0) in_spine_[v] = static_cast<long>(id);
  }

  bool covered(const std::vector<int>& tuple) const {
    return std::all_of(tuple.begin(), tuple.end(), [&](int v) { return in_spine_[v] >= 0; });
  }

  SpineReport finish(SpineMode mode) {
    report_.mode = mode;
    for (int v = 0; v < inst_.n; ++v)
      if (in_spine_[v] >= 0) {
        report_.variables.push_back(v);
        report_.certificate_of.push_back(static_cast<std::size_t>(in_spine_[v]));
      }
    report_.fraction = inst_.n ? static_cast<double>(report_.variables.size()) / inst_.n : 0.0;
    return std::move(report_);
  }

 private:
  void shrink(SpineCertificate& cert) const {
    std::vector<std::size_t> xi = cert.xi;
    for (std::size_t i = 0; i < xi.size();) {
      std::vector<std::size_t> trial = xi;
      trial.erase(trial.begin() + static_cast<long>(i));
      if (!is_satisfiable(with_candidate(inst_, trial, cert.offending_template, cert.offending_vars)))
        xi = std::move(trial);
      else
        ++i;
    }
    cert.xi = std::move(xi);
  }

  const Instance& inst_;
  const std::vector<ConstraintTemplate>& candidates_;
  SpineOptions opts_;
  std::vector<long> in_spine_;
  SpineReport report_;
};

std::vector<int> ordered_tuple(const std::vector<int>& tau, const std::vector<int>& perm) {
  std::vector<int> vars(tau.size());
  for (std::size_t j = 0; j < tau.size(); ++j) vars[j] = tau[perm[j]];
  return vars;
}

SpineReport spine_by_enumeration(const Instance& inst, const std::vector<ConstraintTemplate>& candidates,
                                 const SpineOptions& opts) {
  const auto masks = candidate_masks(candidates);
  const auto groups = enumerate_mss(inst.n, units_of(inst));
  SpineBuilder builder(inst, candidates, opts);
  for (const MssGroup& g : groups) {
    std::vector<std::size_t> xi;
    for (std::size_t j = 0; j < inst.constraints.size(); ++j)
      if (!((g.falsified[j / 64] >> (j % 64)) & 1u)) xi.push_back(j);
    for (const auto& [k, list] : masks) {
      if (k > inst.n) continue;
      std::vector<int> tau(k);
      std::iota(tau.begin(), tau.end(), 0);
      do {
        if (builder.covered(tau)) continue;
        std::uint64_t seen = 0;
        auto open = [&] {
          return std::any_of(list.begin(), list.end(), [&](const CandidateMask& c) { return (c.accepted & seen) == 0; });
        };
        for (std::uint64_t a : g.models) {
          const std::uint64_t bit = std::uint64_t{1} << project(a, tau);
          if (seen & bit) continue;
          seen |= bit;
          if (!open()) break;
        }
        for (const CandidateMask& c : list)
          if ((c.accepted & seen) == 0) {
            builder.add(xi, c.template_index, ordered_tuple(tau, c.perm));
            break;
          }
      } while (next_combination(tau, inst.n));
    }
  }
  return builder.finish(SpineMode::Exact);
}

// Satisfiable instance: the only maximal satisfiable subformula is the
// instance itself. Models found along the way refute most candidates.
SpineReport spine_by_solver(const Instance& inst, const std::vector<ConstraintTemplate>& candidates,
                            const SpineOptions& opts, std::uint64_t first_model) {
  const auto masks = candidate_masks(candidates);
  const auto xi = all_indices(inst);
  std::vector<std::uint64_t> pool{first_model};
  SpineBuilder builder(inst, candidates, opts);
  for (const auto& [k, list] : masks) {
    if (k > inst.n) continue;
    std::vector<int> tau(k);
    std::iota(tau.begin(), tau.end(), 0);
    do {
      if (builder.covered(tau)) continue;
      std::uint64_t seen = 0;
      for (std::uint64_t a : pool) seen |= std::uint64_t{1} << project(a, tau);
      for (const CandidateMask& c : list) {
        if ((c.accepted & seen) != 0) continue;
        const auto vars = ordered_tuple(tau, c.perm);
        auto model = find_model(with_candidate(inst, xi, candidates[c.template_index], vars));
        if (model) {
          const std::uint64_t a = pack(*model);
          pool.push_back(a);
          seen |= std::uint64_t{1} << project(a, tau);
          continue;
        }
        builder.add(xi, c.template_index, vars);
        break;
      }
    } while (next_combination(tau, inst.n));
  }
  return builder.finish(SpineMode::Exact);
}

SpineReport spine_from_mus(const Instance& inst, const std::vector<ConstraintTemplate>& candidates) {
  SpineReport report;
  report.mode = SpineMode::MusLowerBound;
  if (is_satisfiable(inst)) return report;
  const MusReport mus = extract_mus(inst);
  std::vector<long> cert_of(static_cast<std::size_t>(inst.n), -1);
  for (std::size_t ci : mus.core) {
    const auto& c = inst.constraints[ci];
    if (std::all_of(c.vars.begin(), c.vars.end(), [&](int v) { return cert_of[v] >= 0; })) continue;
    SpineCertificate cert;
    for (std::size_t other : mus.core)
      if (other != ci) cert.xi.push_back(other);
    cert.offending_template = inst.templates[c.template_id];
    cert.offending_vars = c.vars;
    for (int v : c.vars)
      if (cert_of[v] < 0) cert_of[v] = static_cast<long>(report.certificates.size());
    report.certificates.push_back(std::move(cert));
  }
  for (int v = 0; v < inst.n; ++v)
    if (cert_of[v] >= 0) {
      report.variables.push_back(v);
      report.certificate_of.push_back(static_cast<std::size_t>(cert_of[v]));
    }
  report.fraction = inst.n ? static_cast<double>(report.variables.size()) / inst.n : 0.0;
  (void)candidates;
  return report;
}

}  // namespace

std::string_view to_string(SpineMode m) { return m == SpineMode::Exact ? "exact" : "mus"; }

SpineMode parse_spine_mode(std::string_view name) {
  if (name == "exact") return SpineMode::Exact;
  if (name == "mus") return SpineMode::MusLowerBound;
  throw UsageError("unknown spine mode '" + std::string(name) + "' (exact|mus)");
}

SpineReport spine(const Instance& inst, const std::vector<ConstraintTemplate>& candidates, const SpineOptions& opts) {
  inst.validate();
  if (opts.mode == SpineMode::MusLowerBound) return spine_from_mus(inst, candidates);
  if (candidates.empty()) throw UsageError("spine needs at least one candidate template");
  for (const auto& t : candidates)
    if (t.arity() > kSpineMaxCandidateArity)
      throw UsageError("exact spine supports candidate arity <= " + std::to_string(kSpineMaxCandidateArity));
  if (inst.n > kSpineExactMaxVars)
    throw UsageError("exact spine is limited to n <= " + std::to_string(kSpineExactMaxVars) + " (n=" +
                     std::to_string(inst.n) + "); use mus mode for a lower bound");
  if (inst.n <= kSpineEnumerationMaxVars) return spine_by_enumeration(inst, candidates, opts);
  auto model = find_model(inst);
  if (!model)
    throw UsageError("exact spine of an unsatisfiable instance is limited to n <= " +
                     std::to_string(kSpineEnumerationMaxVars) + "; use mus mode for a lower bound");
  return spine_by_solver(inst, candidates, opts, pack(*model));
}

SpineReport spine(const Instance& inst, const ConstraintDistribution& d, const SpineOptions& opts) {
  std::vector<ConstraintTemplate> c;
  for (std::size_t i : d.support()) c.push_back(d.templates()[i]);
  return spine(inst, c, opts);
}

bool verify_certificate(const Instance& inst, const SpineCertificate& cert) {
  for (std::size_t i : cert.xi)
    if (i >= inst.constraints.size()) return false;
  if (static_cast<int>(cert.offending_vars.size()) != cert.offending_template.arity()) return false;
  if (!is_satisfiable(inst.subset(cert.xi))) return false;
  return !is_satisfiable(with_candidate(inst, cert.xi, cert.offending_template, cert.offending_vars));
}

std::string certificate_to_text(const Instance& inst, const SpineCertificate& cert, std::size_t index) {
  Instance out = with_candidate(inst, cert.xi, cert.offending_template, cert.offending_vars);
  out.set_meta("certificate", std::to_string(index));
  std::string xi;
  for (std::size_t i : cert.xi) xi += (xi.empty() ? "" : ",") + std::to_string(i + 1);
  out.set_meta("xi", xi.empty() ? "-" : xi);
  out.set_meta("offending", "last");
  return serialize_instance(out);
}

std::vector<Literal> spine_literals(const Cnf& f) {
  if (f.n > kSpineExactMaxVars)
    throw UsageError("literal spine is limited to n <= " + std::to_string(kSpineExactMaxVars));
  std::vector<Literal> out;
  if (f.n <= kSpineEnumerationMaxVars) {
    std::vector<char> pos(static_cast<std::size_t>(f.n), 0), neg(static_cast<std::size_t>(f.n), 0);
    for (const MssGroup& g : enumerate_mss(f.n, units_of(f))) {
      std::uint64_t all = ~std::uint64_t{0}, any = 0;
      for (std::uint64_t a : g.models) {
        all &= a;
        any |= a;
      }
      for (int v = 0; v < f.n; ++v) {
        if ((all >> v) & 1u) pos[v] = 1;
        if (!((any >> v) & 1u)) neg[v] = 1;
      }
    }
    for (int v = 0; v < f.n; ++v) {
      if (pos[v]) out.push_back({v, false});
      if (neg[v]) out.push_back({v, true});
    }
    return out;
  }
  if (dpll_solve(f).status != SolveStatus::Sat)
    throw UsageError("literal spine of an unsatisfiable formula is limited to n <= " +
                     std::to_string(kSpineEnumerationMaxVars));
  return backbone(f, BackboneMode::Probe);
}

std::vector<Literal> backbone(const Cnf& f, BackboneMode mode) {
  if (mode == BackboneMode::Auto) mode = f.n <= 16 ? BackboneMode::Enumerate : BackboneMode::Probe;
  std::vector<Literal> out;
  if (mode == BackboneMode::Enumerate) {
    if (f.n > kBackboneEnumerationMaxVars)
      throw UsageError("backbone enumeration limited to n <= " + std::to_string(kBackboneEnumerationMaxVars));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
    for (const Clause& c : f.clauses) {
      std::uint32_t p = 0, q = 0;
      for (const Literal& l : c.literals) (l.negated ? q : p) |= 1u << l.var;
      masks.emplace_back(p, q);
    }
    std::uint32_t all = ~0u, any = 0;
    bool sat = false;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << f.n); ++s) {
      const auto a = static_cast<std::uint32_t>(s);
      if (std::all_of(masks.begin(), masks.end(), [a](const auto& m) { return ((a & m.first) | (~a & m.second)) != 0; })) {
        sat = true;
        all &= a;
        any |= a;
      }
    }
    if (!sat) throw UsageError("backbone of an unsatisfiable formula is undefined");
    for (int v = 0; v < f.n; ++v) {
      if ((all >> v) & 1u) out.push_back({v, false});
      else if (!((any >> v) & 1u)) out.push_back({v, true});
    }
    return out;
  }
  DpllOptions opts;
  opts.heuristic = BranchHeuristic::MaxOccurrence;
  auto first = dpll_solve(f, opts);
  if (first.status != SolveStatus::Sat) throw UsageError("backbone of an unsatisfiable formula is undefined");
  const std::vector<bool> ref = *first.witness;
  std::vector<char> alive(static_cast<std::size_t>(f.n), 1);
  for (int v = 0; v < f.n; ++v) {
    if (!alive[v]) continue;
    Cnf probe = f;
    probe.clauses.push_back(Clause{{{v, ref[v]}}});  // forbid the reference value
    auto r = dpll_solve(probe, opts);
    if (r.status == SolveStatus::Sat) {
      for (int u = 0; u < f.n; ++u)
        if ((*r.witness)[u] != ref[u]) alive[u] = 0;
    } else {
      out.push_back({v, !ref[v]});
    }
  }
  return out;
}

MusReport extract_mus(const Instance& inst) {
  inst.validate();
  if (is_satisfiable(inst)) throw UsageError("instance is satisfiable; it has no unsatisfiable core");
  const std::size_t m = inst.constraints.size();
  std::vector<char> kept(m, 1), necessary(m, 0);
  std::vector<std::vector<std::size_t>> occurs(static_cast<std::size_t>(inst.n));
  for (std::size_t i = 0; i < m; ++i)
    for (int v : inst.constraints[i].vars) occurs[v].push_back(i);

  for (std::size_t i = 0; i < m; ++i) {
    if (necessary[i]) continue;
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < m; ++j)
      if (kept[j] && j != i) rest.push_back(j);
    auto model = find_model(inst.subset(rest));
    if (!model) {
      kept[i] = 0;
      continue;
    }
    necessary[i] = 1;
    // Model rotation: a flip that repairs i and breaks exactly one other kept
    // constraint j proves j necessary for every unsatisfiable subset.
    std::vector<bool> a = *model;
    for (int v : inst.constraints[i].vars) {
      a[v] = !a[v];
      if (inst.constraint_satisfied(i, a)) {
        long broken = -1;
        int count = 0;
        for (std::size_t j : occurs[v])
          if (kept[j] && j != i && !inst.constraint_satisfied(j, a)) {
            broken = static_cast<long>(j);
            ++count;
          }
        if (count == 1) necessary[static_cast<std::size_t>(broken)] = 1;
      }
      a[v] = !a[v];
    }
  }
  MusReport r;
  std::vector<char> seen(static_cast<std::size_t>(inst.n), 0);
  for (std::size_t i = 0; i < m; ++i)
    if (kept[i]) {
      r.core.push_back(i);
      for (int v : inst.constraints[i].vars) seen[v] = 1;
    }
  for (int v = 0; v < inst.n; ++v)
    if (seen[v]) r.core_vars.push_back(v);
  return r;
}

bool is_minimally_unsat(const Instance& inst) {
  if (is_satisfiable(inst)) return false;
  const auto idx = all_indices(inst);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    std::vector<std::size_t> rest = idx;
    rest.erase(rest.begin() + static_cast<long>(i));
    if (!is_satisfiable(inst.subset(rest))) return false;
  }
  return true;
}

}  // namespace satphase
