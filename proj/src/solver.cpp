// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "satphase/solver.hpp"

#include <algorithm>
#include <cmath>

#include "satphase/error.hpp"

namespace satphase {

namespace {

// Counting-based DPLL state. Literal code: 2*v for x_v, 2*v+1 for ~x_v.
class Dpll {
 public:
  Dpll(const Cnf& f, const DpllOptions& opts) : n_(f.n), opts_(opts) {
    start_.push_back(0);
    for (const Clause& c : f.clauses) {
      for (const Literal& l : c.literals) lits_.push_back(2 * l.var + (l.negated ? 1 : 0));
      start_.push_back(static_cast<int>(lits_.size()));
    }
    const int m = static_cast<int>(f.clauses.size());
    occ_.assign(2 * static_cast<std::size_t>(n_), {});
    active_occ_.assign(2 * static_cast<std::size_t>(n_), 0);
    for (int c = 0; c < m; ++c)
      for (int i = start_[c]; i < start_[c + 1]; ++i) {
        occ_[lits_[i]].push_back(c);
        ++active_occ_[lits_[i]];
      }
    sat_count_.assign(m, 0);
    free_count_.resize(m);
    for (int c = 0; c < m; ++c) {
      free_count_[c] = start_[c + 1] - start_[c];
      if (free_count_[c] == 0) empty_clause_ = true;
      if (free_count_[c] == 1) units_.push_back(c);
    }
    unsat_clauses_ = m;
    value_.assign(static_cast<std::size_t>(n_), -1);
    // Clauses of length L weigh 5^-L.
    int longest = 0;
    for (int c = 0; c < m; ++c) longest = std::max(longest, start_[c + 1] - start_[c]);
    weight_.resize(static_cast<std::size_t>(longest) + 1);
    for (int l = 0; l <= longest; ++l) weight_[l] = std::pow(5.0, -l);
  }

  SolveResult run() {
    SolveResult r;
    r.method = SolveMethod::Dpll;
    bool sat = false;
    if (!empty_clause_ && propagate()) sat = search(0);
    r.tree_size = tree_size_;
    r.max_depth = max_depth_;
    if (budget_hit_) {
      r.status = SolveStatus::BudgetExceeded;
    } else if (sat) {
      r.status = SolveStatus::Sat;
      std::vector<bool> w(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) w[v] = value_[v] == 1;
      r.witness = std::move(w);
    } else {
      r.status = SolveStatus::Unsat;
    }
    return r;
  }

 private:
  bool lit_true(int l) const { return value_[l >> 1] == ((l & 1) ? 0 : 1); }

  // Returns false on conflict; the update always completes so undo is exact.
  bool assign(int v, bool val) {
    value_[v] = val ? 1 : 0;
    trail_.push_back(v);
    const int t = 2 * v + (val ? 0 : 1);
    for (int c : occ_[t]) {
      if (sat_count_[c]++ == 0) {
        --unsat_clauses_;
        for (int i = start_[c]; i < start_[c + 1]; ++i) --active_occ_[lits_[i]];
      }
      --free_count_[c];
    }
    bool ok = true;
    for (int c : occ_[t ^ 1]) {
      --free_count_[c];
      if (sat_count_[c] == 0) {
        if (free_count_[c] == 0) ok = false;
        else if (free_count_[c] == 1) units_.push_back(c);
      }
    }
    return ok;
  }

  void unassign_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const int v = trail_.back();
      trail_.pop_back();
      const int t = 2 * v + (value_[v] ? 0 : 1);
      for (int c : occ_[t ^ 1]) ++free_count_[c];
      for (int c : occ_[t]) {
        ++free_count_[c];
        if (--sat_count_[c] == 0) {
          ++unsat_clauses_;
          for (int i = start_[c]; i < start_[c + 1]; ++i) ++active_occ_[lits_[i]];
        }
      }
      value_[v] = -1;
    }
  }

  // Unit propagation to fixpoint, then pure literals, repeated.
  bool propagate() {
    for (;;) {
      while (!units_.empty()) {
        const int c = units_.back();
        units_.pop_back();
        if (sat_count_[c] != 0) continue;
        if (free_count_[c] == 0) {
          units_.clear();
          return false;
        }
        if (free_count_[c] != 1) continue;
        int lit = -1;
        for (int i = start_[c]; i < start_[c + 1]; ++i)
          if (value_[lits_[i] >> 1] < 0) {
            lit = lits_[i];
            break;
          }
        if (!assign(lit >> 1, (lit & 1) == 0)) {
          units_.clear();
          return false;
        }
      }
      bool changed = false;
      for (int v = 0; v < n_; ++v) {
        if (value_[v] >= 0) continue;
        const int pos = active_occ_[2 * v], neg = active_occ_[2 * v + 1];
        if ((pos > 0) == (neg > 0)) continue;
        assign(v, pos > 0);  // cannot conflict: the falsified literal is inactive
        changed = true;
      }
      if (!changed && units_.empty()) return true;
    }
  }

  int pick() const {
    if (opts_.heuristic == BranchHeuristic::LowestIndex) {
      for (int v = 0; v < n_; ++v)
        if (value_[v] < 0 && active_occ_[2 * v] + active_occ_[2 * v + 1] > 0) return v;
      return -1;
    }
    int best = -1;
    double best_w = 0;
    for (int v = 0; v < n_; ++v) {
      if (value_[v] >= 0 || active_occ_[2 * v] + active_occ_[2 * v + 1] == 0) continue;
      double side[2] = {0, 0};
      for (int l = 2 * v; l <= 2 * v + 1; ++l)
        for (int c : occ_[l])
          if (sat_count_[c] == 0) side[l & 1] += weight_[free_count_[c]];
      const double w = side[0] * side[1] * 1024 + side[0] + side[1];
      if (best < 0 || w > best_w) {
        best = v;
        best_w = w;
      }
    }
    return best;
  }

  bool search(int depth) {
    if (unsat_clauses_ == 0) return true;
    const int v = pick();
    if (v < 0) return true;
    if (opts_.budget && tree_size_ >= *opts_.budget) {
      budget_hit_ = true;
      return false;
    }
    ++tree_size_;
    max_depth_ = std::max(max_depth_, depth + 1);
    for (bool val : {false, true}) {
      const std::size_t mark = trail_.size();
      if (assign(v, val) && propagate() && search(depth + 1)) return true;
      units_.clear();
      unassign_to(mark);
      if (budget_hit_) return false;
    }
    return false;
  }

  int n_;
  DpllOptions opts_;
  std::vector<int> lits_, start_;
  std::vector<std::vector<int>> occ_;
  std::vector<int> active_occ_, sat_count_, free_count_;
  std::vector<int> units_, trail_;
  std::vector<signed char> value_;
  std::vector<double> weight_;
  int unsat_clauses_ = 0;
  bool empty_clause_ = false;
  bool budget_hit_ = false;
  std::uint64_t tree_size_ = 0;
  int max_depth_ = 0;
};

}  // namespace

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "SAT";
    case SolveStatus::Unsat: return "UNSAT";
    case SolveStatus::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

std::string_view to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Dpll: return "dpll";
    case SolveMethod::Gauss: return "gauss";
    case SolveMethod::Brute: return "brute";
  }
  return "?";
}

SolveMethod parse_solve_method(std::string_view name) {
  if (name == "dpll") return SolveMethod::Dpll;
  if (name == "gauss") return SolveMethod::Gauss;
  if (name == "brute") return SolveMethod::Brute;
  throw UsageError("unknown solve method '" + std::string(name) + "' (dpll|gauss|brute)");
}

SolveResult dpll_solve(const Cnf& f, const DpllOptions& opts) { return Dpll(f, opts).run(); }

SolveResult gauss_solve_xor(const Instance& inst) {
  std::vector<bool> rhs_of(inst.templates.size());
  for (const auto& c : inst.constraints) {
    const auto& t = inst.templates[c.template_id];
    auto rhs = t.parity_rhs();
    if (!rhs)
      throw UsageError("template " + std::to_string(c.template_id) + (t.name().empty() ? "" : " (" + t.name() + ")") +
                       " is not a parity relation");
    rhs_of[c.template_id] = *rhs;
  }
  const int n = inst.n;
  const std::size_t words = static_cast<std::size_t>(n) / 64 + 1;  // bit n holds the right-hand side
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(inst.constraints.size());
  for (const auto& c : inst.constraints) {
    std::vector<std::uint64_t> row(words, 0);
    for (int v : c.vars) row[v / 64] ^= std::uint64_t{1} << (v % 64);
    if (rhs_of[c.template_id]) row[n / 64] ^= std::uint64_t{1} << (n % 64);
    rows.push_back(std::move(row));
  }
  auto bit = [](const std::vector<std::uint64_t>& r, int i) { return (r[i / 64] >> (i % 64)) & 1u; };

  SolveResult r;
  r.method = SolveMethod::Gauss;
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  std::uint64_t xors = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && !bit(rows[p], col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || !bit(rows[i], col)) continue;
      for (std::size_t w = 0; w < words; ++w) rows[i][w] ^= rows[rank][w];
      ++xors;
    }
    pivot_col.push_back(col);
    ++rank;
  }
  r.gauss_ops = xors * static_cast<std::uint64_t>(n + 1);
  for (std::size_t i = rank; i < rows.size(); ++i)
    if (bit(rows[i], n)) {
      r.status = SolveStatus::Unsat;
      return r;
    }
  std::vector<bool> w(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < rank; ++i) w[pivot_col[i]] = bit(rows[i], n);
  r.status = SolveStatus::Sat;
  r.witness = std::move(w);
  return r;
}

SolveResult brute_force_solve(const Cnf& f) {
  if (f.n > kBruteForceMaxVars)
    throw UsageError("brute force limited to n <= " + std::to_string(kBruteForceMaxVars) + " (n=" +
                     std::to_string(f.n) + ")");
  const int n = f.n;
  // Variable v sits at bit n-1-v so counting upward is lexicographic order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const Clause& c : f.clauses) {
    std::uint32_t pos = 0, neg = 0;
    for (const Literal& l : c.literals) (l.negated ? neg : pos) |= 1u << (n - 1 - l.var);
    masks.emplace_back(pos, neg);
  }
  SolveResult r;
  r.method = SolveMethod::Brute;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < total; ++s) {
    const auto a = static_cast<std::uint32_t>(s);
    bool ok = true;
    for (const auto& [pos, neg] : masks)
      if (!((a & pos) | (~a & neg))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<bool> w(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) w[v] = (a >> (n - 1 - v)) & 1u;
    r.status = SolveStatus::Sat;
    r.witness = std::move(w);
    return r;
  }
  r.status = SolveStatus::Unsat;
  return r;
}

bool all_parity(const Instance& inst) {
  for (const auto& c : inst.constraints)
    if (!inst.templates[c.template_id].is_parity()) return false;
  return true;
}

SolveResult solve(const Instance& inst, SolveMethod method, const DpllOptions& opts) {
  SolveResult r;
  switch (method) {
    case SolveMethod::Dpll: r = dpll_solve(to_cnf(inst), opts); break;
    case SolveMethod::Gauss: r = gauss_solve_xor(inst); break;
    case SolveMethod::Brute: r = brute_force_solve(to_cnf(inst)); break;
  }
  if (r.witness && !inst.satisfied_by(*r.witness))
    throw std::logic_error("solver returned a witness that violates the instance");
  return r;
}

std::optional<std::vector<bool>> find_model(const Instance& inst) {
  if (all_parity(inst)) return gauss_solve_xor(inst).witness;
  DpllOptions opts;
  opts.heuristic = BranchHeuristic::MaxOccurrence;
  return dpll_solve(to_cnf(inst), opts).witness;
}

}  // namespace satphase
