// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "satphase/satphase.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "satphase/error.hpp"
#include "satphase/harness.hpp"
#include "satphase/hypergraph.hpp"
#include "satphase/instance.hpp"
#include "satphase/solver.hpp"
#include "satphase/spine.hpp"

struct satphase_instance {
  satphase::Instance inst;
};

struct satphase_distribution {
  satphase::ConstraintDistribution dist;
};

namespace {

thread_local std::string g_last_error;

template <class F>
satphase_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SATPHASE_OK;
  } catch (const satphase::ParseError& e) {
    g_last_error = e.what();
    return SATPHASE_E_PARSE;
  } catch (const satphase::UsageError& e) {
    g_last_error = e.what();
    return SATPHASE_E_USAGE;
  } catch (const satphase::IoError& e) {
    g_last_error = e.what();
    return SATPHASE_E_IO;
  } catch (const satphase::EstimationError& e) {
    g_last_error = e.what();
    return SATPHASE_E_ESTIMATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SATPHASE_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SATPHASE_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

void require(const void* p, const char* what) {
  if (!p) throw satphase::UsageError(std::string(what) + " must not be NULL");
}

std::string read_file(const char* path) {
  require(path, "path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw satphase::IoError(std::string("cannot read '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_dimacs(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == 'c' || line[b] == '#') continue;
    return line.compare(b, 5, "p cnf") == 0;
  }
  return false;
}

std::string g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string g12(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

template <class T>
std::string one_based(const std::vector<T>& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + std::to_string(x + 1);
  return out;
}

std::string rational_field(const std::string& key, const satphase::Rational& r) {
  return key + "=" + satphase::format_rational(r) + " " + key + "_approx=" + g6(satphase::to_double(r));
}

satphase::ThresholdOptions threshold_options(const satphase_threshold_options* o) {
  satphase::ThresholdOptions t;
  if (!o) return t;
  if (o->trials) t.trials = o->trials;
  t.seed = o->seed;
  if (o->tolerance > 0) t.tolerance = o->tolerance;
  if (o->max_density > 0) t.max_density = o->max_density;
  if (o->scaling) t.scaling = satphase::parse_scaling(o->scaling);
  return t;
}

}  // namespace

extern "C" {

const char* satphase_version(void) { return "1.0.0"; }

const char* satphase_last_error(void) { return g_last_error.c_str(); }

void satphase_string_free(char* s) { std::free(s); }

satphase_status satphase_distribution_parse(const char* text, satphase_distribution** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new satphase_distribution{satphase::parse_distribution(text)};
  });
}

satphase_status satphase_distribution_load(const char* path, satphase_distribution** out) {
  return guarded([&] {
    require(out, "out");
    *out = new satphase_distribution{satphase::parse_distribution(read_file(path))};
  });
}

satphase_status satphase_distribution_of_model(const char* model, satphase_distribution** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = new satphase_distribution{satphase::parse_model(model).distribution()};
  });
}

void satphase_distribution_free(satphase_distribution* d) { delete d; }

satphase_status satphase_distribution_serialize(const satphase_distribution* d, char** out) {
  return guarded([&] {
    require(d, "distribution");
    put(out, satphase::serialize_distribution(d->dist));
  });
}

satphase_status satphase_classify(const satphase_distribution* d, char** record) {
  return guarded([&] {
    require(d, "distribution");
    const auto cls = satphase::classify_threshold(d->dist);
    std::string r = "kind=" + std::string(satphase::to_string(cls.kind));
    if (cls.witness) {
      r += " template=" + std::to_string(cls.witness->template_index);
      std::string imp;
      for (const auto& c : cls.witness->implicates) imp += (imp.empty() ? "" : ";") + satphase::to_string(c);
      r += " implicates=" + imp;
    } else {
      r += " template=- implicates=-";
    }
    r += " other_coarse=" + std::string(cls.other_coarse_condition ? "1" : "0");
    put(record, r);
  });
}

satphase_status satphase_instance_parse(const char* text, satphase_instance** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new satphase_instance{satphase::parse_instance(text)};
  });
}

satphase_status satphase_instance_parse_dimacs(const char* text, satphase_instance** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new satphase_instance{satphase::instance_from_cnf(satphase::parse_dimacs(text))};
  });
}

satphase_status satphase_instance_load(const char* path, satphase_instance** out) {
  return guarded([&] {
    require(out, "out");
    const std::string text = read_file(path);
    *out = new satphase_instance{looks_like_dimacs(text) ? satphase::instance_from_cnf(satphase::parse_dimacs(text))
                                                         : satphase::parse_instance(text)};
  });
}

satphase_status satphase_generate(const char* model, int n, size_t m, uint64_t seed, satphase_instance** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = new satphase_instance{satphase::generate(satphase::parse_model(model), n, m, seed)};
  });
}

satphase_status satphase_generate_density(const char* model, int n, double density, uint64_t seed,
                                          satphase_instance** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto spec = satphase::parse_model(model);
    if (spec.kind == satphase::ModelKind::TwoP) {
      *out = new satphase_instance{satphase::gen_2p_sat(spec.p, density, n, seed)};
    } else {
      auto inst = satphase::generate(spec, n, satphase::constraint_count(density, n, satphase::Scaling::Linear), seed);
      *out = new satphase_instance{std::move(inst)};
    }
  });
}

void satphase_instance_free(satphase_instance* inst) { delete inst; }

int satphase_instance_num_vars(const satphase_instance* inst) { return inst ? inst->inst.n : 0; }

size_t satphase_instance_num_constraints(const satphase_instance* inst) {
  return inst ? inst->inst.constraints.size() : 0;
}

satphase_status satphase_instance_serialize(const satphase_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "instance");
    put(out, satphase::serialize_instance(inst->inst));
  });
}

satphase_status satphase_instance_to_dimacs(const satphase_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "instance");
    put(out, satphase::to_dimacs(satphase::to_cnf(inst->inst)));
  });
}

satphase_status satphase_solve(const satphase_instance* inst, const char* method, const char* heuristic,
                               int64_t budget, satphase_solve_info* info, char** record) {
  return guarded([&] {
    require(inst, "instance");
    satphase::DpllOptions opts;
    if (budget >= 0) opts.budget = static_cast<std::uint64_t>(budget);
    if (heuristic) {
      const std::string h = heuristic;
      if (h == "max-occurrence") opts.heuristic = satphase::BranchHeuristic::MaxOccurrence;
      else if (h != "lowest-index") throw satphase::UsageError("unknown heuristic '" + h + "'");
    }
    const auto m = satphase::parse_solve_method(method ? method : "dpll");
    const auto r = satphase::solve(inst->inst, m, opts);
    if (info) {
      info->result = r.status == satphase::SolveStatus::Sat     ? SATPHASE_SAT
                     : r.status == satphase::SolveStatus::Unsat ? SATPHASE_UNSAT
                                                                : SATPHASE_BUDGET_EXCEEDED;
      info->tree_size = r.tree_size;
      info->max_depth = r.max_depth;
      info->gauss_ops = r.gauss_ops;
    }
    std::string w = "-";
    if (r.witness) {
      w.clear();
      for (bool b : *r.witness) w += b ? '1' : '0';
      if (w.empty()) w = "-";
    }
    put(record, "status=" + std::string(satphase::to_string(r.status)) + " tree_size=" + std::to_string(r.tree_size) +
                    " max_depth=" + std::to_string(r.max_depth) + " method=" + std::string(satphase::to_string(r.method)) +
                    " gauss_ops=" + std::to_string(r.gauss_ops) + " witness=" + w);
  });
}

satphase_status satphase_spine(const satphase_instance* inst, const satphase_distribution* language,
                               const char* mode, char** record, char** certificates) {
  return guarded([&] {
    require(inst, "instance");
    satphase::SpineOptions opts;
    opts.mode = satphase::parse_spine_mode(mode ? mode : "exact");
    std::vector<satphase::ConstraintTemplate> candidates;
    if (language) {
      for (std::size_t i : language->dist.support()) candidates.push_back(language->dist.templates()[i]);
    } else {
      candidates = inst->inst.templates;
    }
    const auto rep = satphase::spine(inst->inst, candidates, opts);
    put(record, "mode=" + std::string(satphase::to_string(rep.mode)) + " n=" + std::to_string(inst->inst.n) +
                    " spine_size=" + std::to_string(rep.variables.size()) + " fraction=" + g6(rep.fraction) +
                    " certificates=" + std::to_string(rep.certificates.size()) + " vars=" + one_based(rep.variables));
    if (certificates) {
      std::string all;
      for (std::size_t i = 0; i < rep.certificates.size(); ++i)
        all += satphase::certificate_to_text(inst->inst, rep.certificates[i], i + 1);
      *certificates = dup(all);
    }
  });
}

satphase_status satphase_mus(const satphase_instance* inst, char** record, satphase_instance** core) {
  return guarded([&] {
    require(inst, "instance");
    const auto mus = satphase::extract_mus(inst->inst);
    const double frac = inst->inst.n ? static_cast<double>(mus.core_vars.size()) / inst->inst.n : 0.0;
    put(record, "status=UNSAT core_size=" + std::to_string(mus.size()) + " core_vars=" +
                    std::to_string(mus.core_vars.size()) + " fraction=" + g6(frac) + " constraints=" +
                    one_based(mus.core) + " vars=" + one_based(mus.core_vars));
    if (core) *core = new satphase_instance{inst->inst.subset(mus.core)};
  });
}

satphase_status satphase_c_star(const satphase_instance* inst, char** record) {
  return guarded([&] {
    require(inst, "instance");
    const auto r = satphase::c_star(inst->inst);
    put(record, rational_field("cstar", r.value) + " exact=" + (r.exact ? "1" : "0") + " witness=" +
                    one_based(r.witness));
  });
}

satphase_status satphase_deficiency(const satphase_instance* inst, const char* r, char** record) {
  return guarded([&] {
    require(inst, "instance");
    require(r, "r");
    const auto rr = satphase::parse_rational(r);
    const auto whole = satphase::deficiency(inst->inst, rr);
    const auto best = satphase::max_deficiency(inst->inst, rr);
    put(record, "r=" + satphase::format_rational(rr) + " " + rational_field("deficiency", whole) + " " +
                    rational_field("max_deficiency", best.value) + " exact=" + (best.exact ? "1" : "0") +
                    " witness=" + one_based(best.witness));
  });
}

satphase_status satphase_sparse(const satphase_instance* inst, const char* x, const char* y, char** record) {
  return guarded([&] {
    require(inst, "instance");
    require(x, "x");
    require(y, "y");
    const auto xr = satphase::parse_rational(x), yr = satphase::parse_rational(y);
    const auto res = satphase::is_xy_sparse(satphase::formula_hypergraph(inst->inst), xr, yr);
    put(record, "x=" + satphase::format_rational(xr) + " y=" + satphase::format_rational(yr) +
                    " verdict=" + std::string(satphase::to_string(res.verdict)) + " witness=" + one_based(res.witness));
  });
}

satphase_status satphase_cs_bound(int k, double c, double y, double* epsilon, double* x, char** record) {
  return guarded([&] {
    const auto p = satphase::cs_sparsity_params(k, c, y);
    if (epsilon) *epsilon = static_cast<double>(p.epsilon);
    if (x) *x = static_cast<double>(p.x);
    put(record, "k=" + std::to_string(k) + " c=" + g12(p.c) + " y=" + g12(p.y) + " epsilon=" + g12(p.epsilon) +
                    " x=" + g12(p.x));
  });
}

satphase_status satphase_private_ordering(const satphase_instance* inst, char** record) {
  return guarded([&] {
    require(inst, "instance");
    const auto res = satphase::private_variable_ordering(inst->inst);
    if (res.ordering) put(record, "ordering=" + one_based(*res.ordering));
    else put(record, "ordering=none stuck=" + one_based(res.stuck));
  });
}

satphase_status satphase_sweep(const char* config, const char* base_dir, char** csv, char** warnings) {
  return guarded([&] {
    require(config, "config");
    const auto cfg = satphase::parse_sweep_config(config, base_dir ? base_dir : ".");
    const auto result = satphase::run_sweep(cfg);
    put(csv, satphase::sweep_csv(cfg, result));
    std::string w;
    for (const auto& s : result.warnings) w += s + "\n";
    put(warnings, w);
  });
}

satphase_status satphase_threshold(const char* model, int n, double target, const satphase_threshold_options* opts,
                                   double* density, char** record) {
  return guarded([&] {
    require(model, "model");
    const auto spec = satphase::parse_model(model);
    const auto o = threshold_options(opts);
    const auto e = satphase::estimate_threshold_location(spec, n, target, o);
    if (density) *density = e.density;
    put(record, "n=" + std::to_string(n) + " target=" + g6(target) + " density=" + g6(e.density) +
                    " lo=" + g6(e.lo) + " hi=" + g6(e.hi) + " scaling=" + std::string(satphase::to_string(e.scaling)) +
                    " sat_prob=" + g6(e.sat_prob) + " ci_lo=" + g6(e.ci.lo) + " ci_hi=" + g6(e.ci.hi) +
                    " probes=" + std::to_string(e.probes) + " trials=" + std::to_string(o.trials));
  });
}

satphase_status satphase_window_width(const char* model, int n, double epsilon, const satphase_threshold_options* opts,
                                      double* width, char** record) {
  return guarded([&] {
    require(model, "model");
    const auto spec = satphase::parse_model(model);
    const auto o = threshold_options(opts);
    const auto s = satphase::sample_critical(spec, n, o);
    const double w = satphase::estimate_window_width(s, epsilon, o.tolerance);
    if (width) *width = w;
    put(record, "n=" + std::to_string(n) + " epsilon=" + g6(epsilon) + " width=" + g6(w) +
                    " c_half=" + g6(satphase::estimate_threshold_location(s, 0.5, o.tolerance).density) +
                    " scaling=" + std::string(satphase::to_string(s.scaling)) + " trials=" + std::to_string(o.trials));
  });
}

}  // extern "C"
