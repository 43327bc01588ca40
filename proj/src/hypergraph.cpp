// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "satphase/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "satphase/error.hpp"
#include "satphase/rng.hpp"

namespace satphase {

namespace {

using Words = std::vector<std::uint64_t>;

// Constraints as bitmasks over the compacted set of occurring variables.
struct Compact {
  std::size_t vars = 0;
  std::size_t words = 1;
  std::vector<Words> edges;
};

Compact compact(const Instance& inst) {
  const auto occ = inst.occurring_vars();
  std::vector<int> index(static_cast<std::size_t>(inst.n), -1);
  for (std::size_t i = 0; i < occ.size(); ++i) index[occ[i]] = static_cast<int>(i);
  Compact c;
  c.vars = occ.size();
  c.words = std::max<std::size_t>(1, (occ.size() + 63) / 64);
  for (const auto& ac : inst.constraints) {
    Words w(c.words, 0);
    for (int v : ac.vars) w[index[v] / 64] |= std::uint64_t{1} << (index[v] % 64);
    c.edges.push_back(std::move(w));
  }
  return c;
}

template <class Score>
SubformulaMax maximize(const Instance& inst, Score score) {
  inst.validate();
  const std::size_t m = inst.constraints.size();
  if (m == 0) throw UsageError("instance has no constraints");
  const Compact cp = compact(inst);
  SubformulaMax best;
  bool have = false;
  auto offer = [&](std::size_t edges, std::size_t verts, auto&& witness) {
    const Rational s = score(static_cast<std::int64_t>(edges), static_cast<std::int64_t>(verts));
    if (!have || s > best.value) {
      best.value = s;
      best.witness = witness();
      have = true;
    }
  };

  if (m <= kSubformulaEnumMaxConstraints) {
    Words acc(cp.words);
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << m); ++sub) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t j = 0; j < m; ++j)
        if ((sub >> j) & 1u)
          for (std::size_t w = 0; w < cp.words; ++w) acc[w] |= cp.edges[j][w];
      std::size_t verts = 0;
      for (auto w : acc) verts += static_cast<std::size_t>(std::popcount(w));
      offer(static_cast<std::size_t>(std::popcount(sub)), verts, [&] {
        std::vector<std::size_t> g;
        for (std::size_t j = 0; j < m; ++j)
          if ((sub >> j) & 1u) g.push_back(j);
        return g;
      });
    }
    best.exact = true;
    return best;
  }
  if (cp.vars <= kSubformulaEnumMaxVars) {
    // Best G inside a vertex set V is every edge spanned by V.
    for (std::uint64_t vs = 1; vs < (std::uint64_t{1} << cp.vars); ++vs) {
      std::size_t edges = 0;
      for (const auto& e : cp.edges)
        if ((e[0] & ~vs) == 0) ++edges;
      if (edges == 0) continue;
      offer(edges, static_cast<std::size_t>(std::popcount(vs)), [&] {
        std::vector<std::size_t> g;
        for (std::size_t j = 0; j < m; ++j)
          if ((cp.edges[j][0] & ~vs) == 0) g.push_back(j);
        return g;
      });
    }
    best.exact = true;
    return best;
  }
  // Min-degree peeling; every prefix is a genuine subformula, hence a lower bound.
  std::vector<char> alive_edge(m, 1);
  std::vector<std::vector<std::size_t>> incident(cp.vars);
  std::vector<std::size_t> degree(cp.vars, 0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t w = 0; w < cp.words; ++w)
      for (std::uint64_t b = cp.edges[j][w]; b; b &= b - 1) {
        const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(b));
        incident[v].push_back(j);
        ++degree[v];
      }
  std::vector<char> alive_vertex(cp.vars, 1);
  std::size_t edges = m, verts = cp.vars;
  while (edges > 0) {
    offer(edges, verts, [&] {
      std::vector<std::size_t> g;
      for (std::size_t j = 0; j < m; ++j)
        if (alive_edge[j]) g.push_back(j);
      return g;
    });
    std::size_t pick = cp.vars;
    for (std::size_t v = 0; v < cp.vars; ++v)
      if (alive_vertex[v] && (pick == cp.vars || degree[v] < degree[pick])) pick = v;
    alive_vertex[pick] = 0;
    --verts;
    for (std::size_t j : incident[pick]) {
      if (!alive_edge[j]) continue;
      alive_edge[j] = 0;
      --edges;
      for (std::size_t w = 0; w < cp.words; ++w)
        for (std::uint64_t b = cp.edges[j][w]; b; b &= b - 1) --degree[w * 64 + static_cast<std::size_t>(std::countr_zero(b))];
    }
  }
  best.exact = false;
  return best;
}

}  // namespace

Hypergraph formula_hypergraph(const Instance& inst) {
  Hypergraph h;
  h.n = inst.n;
  for (const auto& c : inst.constraints) {
    auto e = c.vars;
    std::sort(e.begin(), e.end());
    h.edges.push_back(std::move(e));
  }
  return h;
}

SubformulaMax c_star(const Instance& inst) {
  return maximize(inst, [](std::int64_t e, std::int64_t v) { return Rational(e, v); });
}

Rational deficiency(const Instance& inst, const Rational& r) {
  inst.validate();
  return r * static_cast<std::int64_t>(inst.constraints.size()) -
         Rational(static_cast<std::int64_t>(inst.occurring_vars().size()));
}

SubformulaMax max_deficiency(const Instance& inst, const Rational& r) {
  return maximize(inst, [&](std::int64_t e, std::int64_t v) { return r * e - Rational(v); });
}

std::string_view to_string(SparsityVerdict v) {
  switch (v) {
    case SparsityVerdict::Sparse: return "sparse";
    case SparsityVerdict::NotSparse: return "not-sparse";
    case SparsityVerdict::Unknown: return "unknown";
  }
  return "?";
}

SparsityResult is_xy_sparse(const Hypergraph& h, const Rational& x, const Rational& y) {
  if (x <= Rational(0) || y <= Rational(0)) throw UsageError("sparsity parameters must be positive");
  SparsityResult out;
  if (h.edges.empty()) return out;
  const Rational limit = x * static_cast<std::int64_t>(h.n);
  const auto s_max = static_cast<int>(std::min<std::int64_t>(h.n, limit.numerator() / limit.denominator()));
  auto violates = [&](std::int64_t edges, std::int64_t size) { return Rational(edges) > y * size; };

  if (h.n <= kSparsityExactMaxVars) {
    std::vector<std::uint32_t> masks;
    for (const auto& e : h.edges) {
      std::uint32_t m = 0;
      for (int v : e) m |= 1u << v;
      masks.push_back(m);
    }
    for (int s = 1; s <= s_max; ++s) {
      // Gosper's hack walks the s-subsets in increasing numeric (colex) order.
      for (std::uint64_t set = (std::uint64_t{1} << s) - 1; set < (std::uint64_t{1} << h.n);) {
        std::int64_t edges = 0;
        for (std::uint32_t m : masks)
          if ((m & ~static_cast<std::uint32_t>(set)) == 0) ++edges;
        if (violates(edges, s)) {
          out.verdict = SparsityVerdict::NotSparse;
          for (int v = 0; v < h.n; ++v)
            if ((set >> v) & 1u) out.witness.push_back(v);
          return out;
        }
        const std::uint64_t c = set & (0 - set);
        const std::uint64_t r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
      }
    }
    return out;
  }

  std::vector<char> alive_v(static_cast<std::size_t>(h.n), 1), alive_e(h.edges.size(), 1);
  std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(h.n));
  std::vector<std::int64_t> degree(static_cast<std::size_t>(h.n), 0);
  for (std::size_t j = 0; j < h.edges.size(); ++j)
    for (int v : h.edges[j]) {
      incident[v].push_back(j);
      ++degree[v];
    }
  std::int64_t edges = static_cast<std::int64_t>(h.edges.size()), size = h.n;
  while (size > 0) {
    if (size <= s_max && violates(edges, size)) {
      out.verdict = SparsityVerdict::NotSparse;
      for (int v = 0; v < h.n; ++v)
        if (alive_v[v]) out.witness.push_back(v);
      return out;
    }
    int pick = -1;
    for (int v = 0; v < h.n; ++v)
      if (alive_v[v] && (pick < 0 || degree[v] < degree[pick])) pick = v;
    alive_v[pick] = 0;
    --size;
    for (std::size_t j : incident[pick]) {
      if (!alive_e[j]) continue;
      alive_e[j] = 0;
      --edges;
      for (int v : h.edges[j]) --degree[v];
    }
  }
  out.verdict = SparsityVerdict::Unknown;
  return out;
}

SparsityParams cs_sparsity_params(int k, long double c, long double y) {
  if (!(c > 0)) throw UsageError("sparsity bound needs c > 0");
  if (!((k - 1) * y > 1))
    throw UsageError("sparsity bound needs (k-1)y > 1 (k=" + std::to_string(k) + ", y=" +
                     std::to_string(static_cast<double>(y)) + ")");
  SparsityParams p;
  p.k = k;
  p.c = c;
  p.y = y;
  p.epsilon = y - 1.0L / (k - 1);
  const long double log_base = -std::log(2.0L) - 1.0L + y * (std::log(y / c) - 1.0L);
  p.x = std::exp(log_base / p.epsilon);
  return p;
}

PrivateOrdering private_variable_ordering(const Instance& inst) {
  inst.validate();
  const std::size_t m = inst.constraints.size();
  std::vector<int> degree(static_cast<std::size_t>(inst.n), 0);
  for (const auto& c : inst.constraints)
    for (int v : c.vars) ++degree[v];
  std::vector<char> alive(m, 1);
  std::vector<std::size_t> removed;
  // Removal never raises a degree, so a peelable constraint stays peelable and
  // the greedy choice cannot block a peeling that exists.
  while (removed.size() < m) {
    std::size_t pick = m;
    for (std::size_t i = 0; i < m && pick == m; ++i) {
      if (!alive[i]) continue;
      const auto& vars = inst.constraints[i].vars;
      const auto priv = std::count_if(vars.begin(), vars.end(), [&](int v) { return degree[v] == 1; });
      if (priv >= static_cast<long>(vars.size()) - 2) pick = i;
    }
    if (pick == m) {
      PrivateOrdering out;
      for (std::size_t i = 0; i < m; ++i)
        if (alive[i]) out.stuck.push_back(i);
      return out;
    }
    alive[pick] = 0;
    for (int v : inst.constraints[pick].vars) --degree[v];
    removed.push_back(pick);
  }
  std::reverse(removed.begin(), removed.end());
  return PrivateOrdering{std::move(removed), {}};
}

std::size_t private_variable_count(const Instance& inst, const std::vector<std::size_t>& subset) {
  std::vector<int> degree(static_cast<std::size_t>(inst.n), 0);
  for (std::size_t i : subset)
    for (int v : inst.constraints.at(i).vars) ++degree[v];
  return static_cast<std::size_t>(std::count(degree.begin(), degree.end(), 1));
}

std::vector<double> sample_private_fractions(const Instance& inst, std::size_t min_size, std::size_t max_size,
                                             std::size_t samples, std::uint64_t seed) {
  const std::size_t m = inst.constraints.size();
  if (min_size < 1 || min_size > max_size || max_size > m) throw UsageError("subformula sizes outside [1, m]");
  std::vector<double> out;
  std::vector<std::size_t> idx(m);
  for (std::size_t s = 0; s < samples; ++s) {
    CounterRng rng(stream_key(seed, 0x707269766174ULL, s));
    const std::size_t size = min_size + static_cast<std::size_t>(rng.below(max_size - min_size + 1));
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < size; ++i) std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.below(m - i))]);
    std::vector<std::size_t> sub(idx.begin(), idx.begin() + static_cast<long>(size));
    out.push_back(inst.n ? static_cast<double>(private_variable_count(inst, sub)) / inst.n : 0.0);
  }
  return out;
}

}  // namespace satphase
