// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "satphase/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "satphase/error.hpp"
#include "satphase/rng.hpp"

namespace satphase {

namespace {

constexpr std::uint64_t kTrialDomain = 0x747269616cULL;
constexpr std::uint64_t kCriticalIndex = 0xffffffffULL;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

// "k=3" style parameters following the model name.
int model_param_int(const std::vector<std::string>& words, std::string_view key, int fallback) {
  for (std::size_t i = 1; i < words.size(); ++i)
    if (words[i].starts_with(std::string(key) + "=")) return parse_number<int>(words[i].substr(key.size() + 1), key);
  return fallback;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::optional<ThresholdClass> classify_model(const ModelSpec& model) {
  if (model.kind == ModelKind::TwoP) return std::nullopt;
  return classify_threshold(model.distribution());
}

double default_max_density(const ModelSpec& model, Scaling s) {
  if (s == Scaling::Sqrt) return 10.0;
  switch (model.kind) {
    case ModelKind::KSat: return std::ldexp(1.5, model.k);
    case ModelKind::TwoP: return 6.0;
    case ModelKind::KXor: return 2.0;
    case ModelKind::Dist: return 10.0;
  }
  return 10.0;
}

}  // namespace

std::string ModelSpec::label() const {
  switch (kind) {
    case ModelKind::KSat: return "ksat k=" + std::to_string(k);
    case ModelKind::TwoP: return "2p p=" + format_double(p);
    case ModelKind::KXor: return "kxor k=" + std::to_string(k);
    case ModelKind::Dist: return dist_path.empty() ? "dist" : "dist " + dist_path;
  }
  return "?";
}

std::vector<ConstraintTemplate> ModelSpec::language() const {
  switch (kind) {
    case ModelKind::KSat: return clause_templates(k);
    case ModelKind::TwoP: {
      auto out = clause_templates(3);
      for (auto& t : clause_templates(2)) out.push_back(std::move(t));
      return out;
    }
    case ModelKind::KXor: return {parity_template(k, false), parity_template(k, true)};
    case ModelKind::Dist: {
      std::vector<ConstraintTemplate> out;
      for (std::size_t i : dist.support()) out.push_back(dist.templates()[i]);
      return out;
    }
  }
  return {};
}

ConstraintDistribution ModelSpec::distribution() const {
  switch (kind) {
    case ModelKind::KSat: return ConstraintDistribution::uniform(clause_templates(k));
    case ModelKind::KXor: return ConstraintDistribution::uniform({parity_template(k, false), parity_template(k, true)});
    case ModelKind::Dist: return dist;
    case ModelKind::TwoP: break;
  }
  throw UsageError("(2+p)-SAT mixes arities and has no single distribution");
}

ModelSpec parse_model(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(w);
  if (words.empty()) throw UsageError("empty model specification");
  ModelSpec m;
  const std::string& name = words[0];
  if (name == "ksat") {
    m.kind = ModelKind::KSat;
    m.k = model_param_int(words, "k", 3);
    if (m.k < 1 || m.k > 8) throw UsageError("ksat needs 1 <= k <= 8");
  } else if (name == "kxor") {
    m.kind = ModelKind::KXor;
    m.k = model_param_int(words, "k", 3);
    if (m.k < 1 || m.k > 8) throw UsageError("kxor needs 1 <= k <= 8");
  } else if (name == "2p") {
    m.kind = ModelKind::TwoP;
    for (std::size_t i = 1; i < words.size(); ++i)
      if (words[i].starts_with("p=")) m.p = parse_number<double>(std::string_view(words[i]).substr(2), "p");
    if (!(m.p >= 0 && m.p <= 1)) throw UsageError("2p needs p in [0, 1]");
  } else if (name == "dist") {
    if (words.size() != 2) throw UsageError("dist needs exactly one path");
    m.kind = ModelKind::Dist;
    m.dist_path = words[1];
    m.dist = parse_distribution(read_file(m.dist_path));
  } else {
    throw UsageError("unknown model '" + name + "' (expected ksat, 2p, kxor or dist)");
  }
  return m;
}

ModelSpec model_from_distribution(ConstraintDistribution d, std::string label) {
  ModelSpec m;
  m.kind = ModelKind::Dist;
  m.dist = std::move(d);
  m.dist_path = std::move(label);
  return m;
}

Instance generate(const ModelSpec& model, int n, std::size_t m, std::uint64_t seed) {
  switch (model.kind) {
    case ModelKind::KSat: return gen_ksat(model.k, n, m, seed);
    case ModelKind::KXor: return gen_kxorsat(model.k, n, m, seed);
    case ModelKind::TwoP: return gen_2p_sat(model.p, static_cast<double>(m) / n, n, seed);
    case ModelKind::Dist: return gen_molloy(model.dist, n, m, seed);
  }
  throw UsageError("unknown model");
}

std::string_view to_string(Scaling s) {
  switch (s) {
    case Scaling::Linear: return "linear";
    case Scaling::Sqrt: return "sqrt";
    case Scaling::Auto: return "auto";
  }
  return "?";
}

Scaling parse_scaling(std::string_view text) {
  if (text == "linear") return Scaling::Linear;
  if (text == "sqrt") return Scaling::Sqrt;
  if (text == "auto") return Scaling::Auto;
  throw UsageError("unknown scaling '" + std::string(text) + "'");
}

Scaling resolve_scaling(const ModelSpec& model, Scaling s) {
  if (s != Scaling::Auto) return s;
  const auto cls = classify_model(model);
  return cls && cls->kind == ThresholdKind::CoarseUnitImplicate ? Scaling::Sqrt : Scaling::Linear;
}

std::size_t constraint_count(double g, int n, Scaling s) {
  if (!(g >= 0)) throw UsageError("density must be nonnegative");
  const double base = s == Scaling::Sqrt ? std::sqrt(static_cast<double>(n)) : static_cast<double>(n);
  return static_cast<std::size_t>(std::floor(g * base + 0.5));
}

std::uint64_t trial_seed(std::uint64_t master, int n, std::uint64_t density_index, std::uint64_t trial) {
  return stream_key(stream_key(master, static_cast<std::uint64_t>(n), density_index), kTrialDomain, trial);
}

std::string_view to_string(OrderParameter o) {
  switch (o) {
    case OrderParameter::Exact: return "exact";
    case OrderParameter::Mus: return "mus";
    case OrderParameter::None: return "none";
  }
  return "?";
}

OrderParameter parse_order_parameter(std::string_view text) {
  if (text == "exact") return OrderParameter::Exact;
  if (text == "mus") return OrderParameter::Mus;
  if (text == "none") return OrderParameter::None;
  throw UsageError("unknown spine mode '" + std::string(text) + "' (expected exact, mus or none)");
}

SweepConfig parse_sweep_config(std::string_view text, const std::string& base_dir) {
  SweepConfig cfg;
  bool have_model = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    try {
      if (key == "model") {
        std::string spec = value;
        if (spec.starts_with("dist ")) {
          std::string path = trim(std::string_view(spec).substr(5));
          if (!path.starts_with("/")) path = base_dir + "/" + path;
          spec = "dist " + path;
        }
        cfg.model = parse_model(spec);
        cfg.model_text = value;
        have_model = true;
      } else if (key == "n") {
        cfg.ns.clear();
        for (const auto& s : split(value, ',')) cfg.ns.push_back(parse_number<int>(s, "n"));
        for (int n : cfg.ns)
          if (n < 3) throw UsageError("every n must be >= 3");
      } else if (key == "densities") {
        cfg.densities.clear();
        if (value.find(':') != std::string::npos) {
          const auto parts = split(value, ':');
          if (parts.size() != 3) throw UsageError("density range is lo:step:hi");
          const double lo = parse_number<double>(parts[0], "density"), step = parse_number<double>(parts[1], "step"),
                       hi = parse_number<double>(parts[2], "density");
          if (!(step > 0)) throw UsageError("density step must be positive");
          for (std::size_t i = 0;; ++i) {
            const double c = lo + static_cast<double>(i) * step;
            if (c > hi + step * 1e-9) break;
            cfg.densities.push_back(c);
          }
        } else {
          for (const auto& s : split(value, ',')) cfg.densities.push_back(parse_number<double>(s, "density"));
        }
        for (std::size_t i = 0; i < cfg.densities.size(); ++i) {
          if (!(cfg.densities[i] >= 0)) throw UsageError("densities must be nonnegative");
          if (i > 0 && !(cfg.densities[i] > cfg.densities[i - 1]))
            throw UsageError("densities must be strictly increasing");
        }
      } else if (key == "trials") {
        cfg.trials = parse_number<std::size_t>(value, "trials");
        if (cfg.trials < 1) throw UsageError("trials must be >= 1");
      } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value, "seed");
      } else if (key == "budget") {
        if (value == "none") cfg.budget.reset();
        else cfg.budget = parse_number<std::uint64_t>(value, "budget");
      } else if (key == "out") {
        cfg.out = value;
      } else if (key == "spine_mode") {
        cfg.order = parse_order_parameter(value);
      } else if (key == "heuristic") {
        if (value == "max-occurrence") cfg.heuristic = BranchHeuristic::MaxOccurrence;
        else if (value == "lowest-index") cfg.heuristic = BranchHeuristic::LowestIndex;
        else throw UsageError("unknown heuristic '" + value + "'");
      } else if (key == "scaling") {
        cfg.scaling = parse_scaling(value);
      } else if (key == "allow_trivial") {
        cfg.allow_trivial = value == "true" || value == "1" || value == "yes";
      } else {
        throw UsageError("unknown key '" + key + "'");
      }
    } catch (const UsageError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_model) throw UsageError("sweep config needs a model");
  if (cfg.ns.empty()) throw UsageError("sweep config needs n");
  if (cfg.densities.empty()) throw UsageError("sweep config needs densities");
  return cfg;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 ? values[h] : (values[h - 1] + values[h]) / 2;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  SweepResult result;
  if (const auto cls = classify_model(cfg.model)) {
    if (cls->kind == ThresholdKind::TriviallySatisfiable) {
      if (!cfg.allow_trivial) throw UsageError("model is trivially satisfiable; set allow_trivial to sweep it anyway");
      result.warnings.push_back("model is trivially satisfiable");
    } else if (cls->kind != ThresholdKind::Sharp) {
      result.warnings.push_back("model has a coarse threshold (" + std::string(to_string(cls->kind)) + ")");
    }
  }
  const Scaling scaling = resolve_scaling(cfg.model, cfg.scaling);
  if (cfg.order == OrderParameter::Exact)
    for (int n : cfg.ns)
      if (n > kSpineExactMaxVars)
        throw UsageError("exact spine needs n <= " + std::to_string(kSpineExactMaxVars) + " (got " +
                         std::to_string(n) + "); use spine_mode = mus");
  const bool xor_model = cfg.model.kind == ModelKind::KXor;
  const auto language = cfg.model.language();
  DpllOptions dopts;
  dopts.budget = cfg.budget;
  dopts.heuristic = cfg.heuristic;

  for (int n : cfg.ns) {
    for (std::size_t di = 0; di < cfg.densities.size(); ++di) {
      SweepRow row;
      row.model = cfg.model.label();
      row.n = n;
      row.density = cfg.densities[di];
      row.m = constraint_count(row.density, n, scaling);
      row.trials = cfg.trials;
      row.order = cfg.order;
      row.seed = cfg.seed;
      std::vector<double> spine_values, unsat_trees, gauss_ops;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const Instance inst = generate(cfg.model, n, row.m, trial_seed(cfg.seed, n, di, t));
        const SolveResult r = dpll_solve(to_cnf(inst), dopts);
        std::optional<bool> sat;
        if (r.status == SolveStatus::BudgetExceeded) ++row.budget_exceeded;
        else sat = r.status == SolveStatus::Sat;
        if (xor_model) {
          const SolveResult g = gauss_solve_xor(inst);
          gauss_ops.push_back(static_cast<double>(g.gauss_ops));
          sat = g.status == SolveStatus::Sat;
        }
        if (sat == true) ++row.sat_count;
        if (sat == false && r.status == SolveStatus::Unsat) unsat_trees.push_back(static_cast<double>(r.tree_size));

        if (cfg.order == OrderParameter::None) continue;
        if (!sat) {
          ++row.spine_skipped;
          continue;
        }
        if (cfg.order == OrderParameter::Mus) {
          spine_values.push_back(*sat ? 0.0 : static_cast<double>(extract_mus(inst).core_vars.size()) / n);
        } else if (!*sat && n > kSpineEnumerationMaxVars) {
          ++row.spine_skipped;
        } else {
          spine_values.push_back(spine(inst, language).fraction);
        }
      }
      row.sat_prob = static_cast<double>(row.sat_count) / static_cast<double>(row.trials);
      if (cfg.order == OrderParameter::None || spine_values.empty()) {
        row.spine_mean = row.spine_median = std::numeric_limits<double>::quiet_NaN();
      } else {
        double sum = 0;
        for (double v : spine_values) sum += v;
        row.spine_mean = sum / static_cast<double>(spine_values.size());
        row.spine_median = median(spine_values);
      }
      row.tree_median = median(unsat_trees);
      row.gauss_median = xor_model ? median(gauss_ops) : std::numeric_limits<double>::quiet_NaN();
      row.flagged = 2 * row.budget_exceeded > row.trials;
      if (row.flagged)
        result.warnings.push_back("n=" + std::to_string(n) + " density=" + fmt6(row.density) +
                                  ": more than half of the trials exceeded the budget");
      result.rows.push_back(std::move(row));
    }
  }
  for (const auto& [a, b] : monotonicity_violations(result.rows))
    result.warnings.push_back("sat_prob rises beyond 3 sigma between densities " + fmt6(result.rows[a].density) +
                              " and " + fmt6(result.rows[b].density) + " at n=" + std::to_string(result.rows[a].n));
  return result;
}

std::string sweep_csv(const SweepConfig& cfg, const SweepResult& result) {
  std::string out;
  out += "# model=" + (cfg.model_text.empty() ? cfg.model.label() : cfg.model_text) + "\n";
  out += "# n=";
  for (std::size_t i = 0; i < cfg.ns.size(); ++i) out += (i ? "," : "") + std::to_string(cfg.ns[i]);
  out += "\n# densities=";
  for (std::size_t i = 0; i < cfg.densities.size(); ++i) out += (i ? "," : "") + fmt6(cfg.densities[i]);
  out += "\n# trials=" + std::to_string(cfg.trials) + " seed=" + std::to_string(cfg.seed) +
         " budget=" + (cfg.budget ? std::to_string(*cfg.budget) : std::string("none")) +
         " spine_mode=" + std::string(to_string(cfg.order)) +
         " heuristic=" + (cfg.heuristic == BranchHeuristic::MaxOccurrence ? "max-occurrence" : "lowest-index") +
         " scaling=" + std::string(to_string(resolve_scaling(cfg.model, cfg.scaling))) + "\n";
  out += "model,n,density,trials,sat_count,sat_prob,spine_mode,spine_mean,spine_median,tree_median,budget_exceeded,seed\n";
  for (const auto& r : result.rows) {
    out += r.model + "," + std::to_string(r.n) + "," + fmt6(r.density) + "," + std::to_string(r.trials) + "," +
           std::to_string(r.sat_count) + "," + fmt6(r.sat_prob) + "," + std::string(to_string(r.order)) + "," +
           fmt6(r.spine_mean) + "," + fmt6(r.spine_median) + "," + fmt6(r.tree_median) + "," +
           std::to_string(r.budget_exceeded) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> monotonicity_violations(const std::vector<SweepRow>& rows) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = rows[i + 1];
    if (a.n != b.n || !(b.density > a.density)) continue;
    const double pa = a.sat_prob, pb = b.sat_prob;
    const double sigma = std::sqrt(pa * (1 - pa) / static_cast<double>(a.trials) + pb * (1 - pb) / static_cast<double>(b.trials));
    if (pb - pa > 3 * sigma && pb > pa) out.emplace_back(i, i + 1);
  }
  return out;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {};
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * t)) / (1 + z2 / t);
  const double half = z / (1 + z2 / t) * std::sqrt(p * (1 - p) / t + z2 / (4 * t * t));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::size_t CriticalSample::sat_count(std::size_t m) const {
  return static_cast<std::size_t>(
      std::count_if(critical.begin(), critical.end(), [&](const auto& c) { return !c || *c > m; }));
}

double CriticalSample::sat_prob(std::size_t m) const {
  return critical.empty() ? 0.0 : static_cast<double>(sat_count(m)) / static_cast<double>(critical.size());
}

CriticalSample sample_critical(const ModelSpec& model, int n, const ThresholdOptions& opts) {
  if (opts.trials < 1) throw UsageError("trials must be >= 1");
  const auto cls = classify_model(model);
  const bool coarse_unit = cls && cls->kind == ThresholdKind::CoarseUnitImplicate;
  if (coarse_unit && opts.scaling == Scaling::Linear)
    throw EstimationError("coarse unit-implicate model: the threshold sits at Theta(sqrt n) constraints, so bisection "
                          "over linear densities degenerates; use sqrt scaling");
  CriticalSample s;
  s.model = &model;
  s.n = n;
  s.scaling = resolve_scaling(model, opts.scaling);
  const double gmax = opts.max_density > 0 ? opts.max_density : default_max_density(model, s.scaling);
  s.cap = constraint_count(gmax, n, s.scaling);

  // Instances are nested in m; for all models but (2+p)-SAT the instance at m
  // is the first m constraints of the one at the cap.
  const bool prefix = model.kind != ModelKind::TwoP;
  std::vector<std::size_t> seen;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const std::uint64_t seed = trial_seed(opts.seed, n, kCriticalIndex, t);
    const Instance full = generate(model, n, s.cap, seed);
    std::size_t lo = 0, hi = s.cap + 1;  // sat at lo, unsat at hi (once known)
    // Solves at m and, on success, moves lo past every further constraint the model satisfies.
    auto unsat_at = [&](std::size_t m) {
      Instance inst = prefix ? full : generate(model, n, m, seed);
      if (prefix) inst.constraints.resize(m);
      const auto w = find_model(inst);
      if (!w) return true;
      lo = std::max(lo, m);
      if (prefix)
        while (lo < s.cap && lo + 1 < hi && full.constraint_satisfied(lo, *w)) ++lo;
      return false;
    };
    if (!unsat_at(s.cap)) {
      s.critical.push_back(std::nullopt);
      continue;
    }
    hi = s.cap;
    if (!seen.empty()) {
      // Gallop out from the running median, which keeps most probes near the threshold.
      std::vector<std::size_t> sorted = seen;
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
      std::size_t probe = std::clamp<std::size_t>(sorted[sorted.size() / 2], lo + 1, hi);
      std::size_t step = std::max<std::size_t>(1, s.cap / 64);
      if (probe < hi && unsat_at(probe)) {
        hi = probe;
        while (hi > lo + 1) {
          probe = hi > lo + step ? hi - step : lo + 1;
          if (!unsat_at(probe)) break;
          hi = probe;
          step *= 2;
        }
      } else {
        while (hi > lo + 1) {
          probe = std::min(hi - 1, lo + step);
          if (unsat_at(probe)) {
            hi = probe;
            break;
          }
          step *= 2;
        }
      }
    }
    while (hi > lo + 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (unsat_at(mid)) hi = mid;
    }
    s.critical.push_back(hi);
    seen.push_back(hi);
  }
  return s;
}

ThresholdEstimate estimate_threshold_location(const CriticalSample& s, double target, double tolerance) {
  if (!(target > 0 && target < 1)) throw UsageError("target probability must lie in (0, 1)");
  if (!(tolerance > 0)) throw UsageError("tolerance must be positive");
  const double base = s.scaling == Scaling::Sqrt ? std::sqrt(static_cast<double>(s.n)) : static_cast<double>(s.n);
  ThresholdEstimate e;
  e.scaling = s.scaling;
  e.lo = 0;
  e.hi = static_cast<double>(s.cap) / base;
  auto prob = [&](double g) { return s.sat_prob(constraint_count(g, s.n, s.scaling)); };
  const double p_hi = prob(e.hi);
  if (p_hi > target) {
    const auto ci = wilson_interval(s.sat_count(s.cap), s.critical.size());
    throw EstimationError("target " + fmt6(target) + " not bracketed: sat probability at the maximum density " +
                          fmt6(e.hi) + " is " + fmt6(p_hi) + " (95% CI [" + fmt6(ci.lo) + ", " + fmt6(ci.hi) +
                          "], " + std::to_string(s.critical.size()) + " trials)");
  }
  while (e.hi - e.lo >= tolerance) {
    const double mid = (e.lo + e.hi) / 2;
    ++e.probes;
    if (prob(mid) > target) e.lo = mid;
    else e.hi = mid;
  }
  e.density = (e.lo + e.hi) / 2;
  const std::size_t m = constraint_count(e.density, s.n, s.scaling);
  e.sat_prob = s.sat_prob(m);
  e.ci = wilson_interval(s.sat_count(m), s.critical.size());
  return e;
}

ThresholdEstimate estimate_threshold_location(const ModelSpec& model, int n, double target,
                                              const ThresholdOptions& opts) {
  if (!(target > 0 && target < 1)) throw UsageError("target probability must lie in (0, 1)");
  return estimate_threshold_location(sample_critical(model, n, opts), target, opts.tolerance);
}

double estimate_window_width(const CriticalSample& s, double epsilon, double tolerance) {
  if (!(epsilon > 0 && epsilon < 0.5)) throw UsageError("epsilon must lie in (0, 1/2)");
  const double upper = estimate_threshold_location(s, epsilon, tolerance).density;
  const double lower = estimate_threshold_location(s, 1 - epsilon, tolerance).density;
  const double mid = estimate_threshold_location(s, 0.5, tolerance).density;
  return (upper - lower) / mid;
}

double estimate_window_width(const ModelSpec& model, int n, double epsilon, const ThresholdOptions& opts) {
  if (!(epsilon > 0 && epsilon < 0.5)) throw UsageError("epsilon must lie in (0, 1/2)");
  return estimate_window_width(sample_critical(model, n, opts), epsilon, opts.tolerance);
}

std::vector<double> unsat_mus_fractions(const ModelSpec& model, int n, std::size_t m, std::size_t count,
                                        std::uint64_t seed, std::size_t max_attempts) {
  std::vector<double> out;
  for (std::size_t t = 0; out.size() < count; ++t) {
    if (t >= max_attempts)
      throw EstimationError("only " + std::to_string(out.size()) + " unsatisfiable instances in " +
                            std::to_string(max_attempts) + " trials");
    const Instance inst = generate(model, n, m, trial_seed(seed, n, m, t));
    if (is_satisfiable(inst)) continue;
    out.push_back(static_cast<double>(extract_mus(inst).core_vars.size()) / n);
  }
  return out;
}

}  // namespace satphase
