// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "satphase/satphase.h"

namespace {

int exit_code(satphase_status s) {
  switch (s) {
    case SATPHASE_OK: return 0;
    case SATPHASE_E_USAGE: return 2;
    case SATPHASE_E_PARSE: return 3;
    case SATPHASE_E_IO: return 4;
    case SATPHASE_E_ESTIMATION: return 5;
    case SATPHASE_E_INTERNAL: return 70;
  }
  return 70;
}

struct Failure {
  int code;
};

void check(satphase_status s) {
  if (s == SATPHASE_OK) return;
  std::cerr << "satphase: " << satphase_last_error() << "\n";
  throw Failure{exit_code(s)};
}

void usage_error(const std::string& msg) {
  std::cerr << "satphase: " << msg << "\n";
  throw Failure{2};
}

// Owns a library-allocated string.
class Text {
 public:
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { satphase_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

struct InstanceHandle {
  satphase_instance* p = nullptr;
  ~InstanceHandle() { satphase_instance_free(p); }
};

struct DistributionHandle {
  satphase_distribution* p = nullptr;
  ~DistributionHandle() { satphase_distribution_free(p); }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "satphase: cannot write '" << path << "'\n";
    throw Failure{4};
  }
}

void load(InstanceHandle& h, const std::string& path) { check(satphase_instance_load(path.c_str(), &h.p)); }

// "k=3,c=4.2,y=1" -> map
std::map<std::string, std::string> key_values(const std::string& text, const char* what) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) usage_error(std::string(what) + " expects key=value pairs, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::string need(const std::map<std::string, std::string>& kv, const std::string& key, const char* what) {
  const auto it = kv.find(key);
  if (it == kv.end()) usage_error(std::string(what) + " needs " + key + "=");
  return it->second;
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  usage_error(std::string("bad number for ") + what + ": '" + s + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random constraint satisfaction phase transitions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", satphase_version());

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  std::string gen_model, gen_out;
  int gen_n = 0;
  std::optional<std::size_t> gen_m;
  std::optional<double> gen_density;
  std::uint64_t gen_seed = 1;
  bool gen_dimacs = false;
  gen->add_option("--model", gen_model, "ksat k=3 | 2p p=0.6 | kxor k=3 | dist <path>")->required();
  gen->add_option("--n", gen_n, "Variables")->required();
  auto* gen_m_opt = gen->add_option("--m", gen_m, "Constraints");
  gen->add_option("--density", gen_density, "Constraints per variable")->excludes(gen_m_opt);
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  gen->add_flag("--dimacs", gen_dimacs, "Write the CNF expansion in DIMACS");

  // solve
  auto* solve = app.add_subcommand("solve", "Decide satisfiability");
  std::string solve_in, solve_method = "dpll", solve_heur = "lowest-index";
  std::optional<std::uint64_t> solve_budget;
  solve->add_option("--in", solve_in, "Instance (gsat text or DIMACS)")->required();
  solve->add_option("--method", solve_method, "dpll | gauss | brute");
  solve->add_option("--heuristic", solve_heur, "lowest-index | max-occurrence");
  solve->add_option("--budget", solve_budget, "Maximum DPLL branch nodes");

  // spine
  auto* spine = app.add_subcommand("spine", "Spine of an instance");
  std::string spine_in, spine_mode = "exact", spine_dist, spine_model, spine_certs;
  spine->add_option("--in", spine_in, "Instance")->required();
  spine->add_option("--mode", spine_mode, "exact | mus");
  auto* spine_dist_opt = spine->add_option("--dist", spine_dist, "Distribution file giving the constraint language");
  spine->add_option("--model", spine_model, "Model giving the constraint language")->excludes(spine_dist_opt);
  spine->add_option("--emit-certs", spine_certs, "Write certificates in the instance format");

  // mus
  auto* mus = app.add_subcommand("mus", "Minimal unsatisfiable subset");
  std::string mus_in, mus_core;
  mus->add_option("--in", mus_in, "Instance")->required();
  mus->add_option("--emit-core", mus_core, "Write the core as an instance");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Hypergraph quantities");
  std::string an_in, an_def, an_sparse, an_bound;
  bool an_cstar = false, an_private = false;
  analyze->add_option("--in", an_in, "Instance");
  analyze->add_flag("--cstar", an_cstar, "Maximum subformula density");
  analyze->add_option("--deficiency", an_def, "r=<r>");
  analyze->add_option("--sparse", an_sparse, "x=<x>,y=<y>");
  analyze->add_option("--cs-bound", an_bound, "k=<k>,c=<c>,y=<y>");
  analyze->add_flag("--private", an_private, "Private-variable ordering");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep to CSV");
  std::string sweep_config, sweep_out;
  sweep->add_option("--config", sweep_config, "Sweep configuration")->required();
  sweep->add_option("--out", sweep_out, "CSV output (default: config 'out' key, else stdout)");

  // classify
  auto* classify = app.add_subcommand("classify", "Sharp or coarse threshold");
  std::string cl_dist, cl_model;
  auto* cl_dist_opt = classify->add_option("--dist", cl_dist, "Distribution file");
  classify->add_option("--model", cl_model, "ksat k=3 | kxor k=3 | dist <path>")->excludes(cl_dist_opt);

  // cnf
  auto* cnf = app.add_subcommand("cnf", "Convert an instance to DIMACS");
  std::string cnf_in, cnf_out;
  cnf->add_option("--in", cnf_in, "Instance")->required();
  cnf->add_option("--out", cnf_out, "Output file");

  // threshold
  auto* thr = app.add_subcommand("threshold", "Threshold location or window width");
  std::string thr_model, thr_scaling = "auto";
  int thr_n = 0;
  double thr_target = 0.5, thr_tol = 0.02, thr_max = 0;
  std::optional<double> thr_window;
  std::size_t thr_trials = 200;
  std::uint64_t thr_seed = 1;
  thr->add_option("--model", thr_model, "Model")->required();
  thr->add_option("--n", thr_n, "Variables")->required();
  thr->add_option("--target", thr_target, "Satisfiability probability");
  thr->add_option("--window", thr_window, "Report the window width for this epsilon instead");
  thr->add_option("--trials", thr_trials, "Trials");
  thr->add_option("--seed", thr_seed, "Master seed");
  thr->add_option("--tol", thr_tol, "Bisection tolerance in density units");
  thr->add_option("--max-density", thr_max, "Upper end of the bracket");
  thr->add_option("--scaling", thr_scaling, "linear | sqrt | auto");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (!gen_m && !gen_density) usage_error("gen needs --m or --density");
      InstanceHandle h;
      if (gen_m) check(satphase_generate(gen_model.c_str(), gen_n, *gen_m, gen_seed, &h.p));
      else check(satphase_generate_density(gen_model.c_str(), gen_n, *gen_density, gen_seed, &h.p));
      Text t;
      check(gen_dimacs ? satphase_instance_to_dimacs(h.p, t.out()) : satphase_instance_serialize(h.p, t.out()));
      emit(t.str(), gen_out);
    } else if (*solve) {
      InstanceHandle h;
      load(h, solve_in);
      Text rec;
      const std::int64_t budget = solve_budget ? static_cast<std::int64_t>(*solve_budget) : -1;
      check(satphase_solve(h.p, solve_method.c_str(), solve_heur.c_str(), budget, nullptr, rec.out()));
      std::cout << rec.str() << "\n";
    } else if (*spine) {
      InstanceHandle h;
      load(h, spine_in);
      DistributionHandle d;
      if (!spine_dist.empty()) check(satphase_distribution_load(spine_dist.c_str(), &d.p));
      else if (!spine_model.empty()) check(satphase_distribution_of_model(spine_model.c_str(), &d.p));
      Text rec, certs;
      check(satphase_spine(h.p, d.p, spine_mode.c_str(), rec.out(), spine_certs.empty() ? nullptr : certs.out()));
      std::cout << rec.str() << "\n";
      if (!spine_certs.empty()) emit(certs.str(), spine_certs);
    } else if (*mus) {
      InstanceHandle h, core;
      load(h, mus_in);
      Text rec;
      check(satphase_mus(h.p, rec.out(), mus_core.empty() ? nullptr : &core.p));
      std::cout << rec.str() << "\n";
      if (!mus_core.empty()) {
        Text t;
        check(satphase_instance_serialize(core.p, t.out()));
        emit(t.str(), mus_core);
      }
    } else if (*analyze) {
      const bool needs_instance = an_cstar || !an_def.empty() || !an_sparse.empty() || an_private;
      if (!needs_instance && an_bound.empty())
        usage_error("analyze needs at least one of --cstar, --deficiency, --sparse, --cs-bound, --private");
      InstanceHandle h;
      if (needs_instance) {
        if (an_in.empty()) usage_error("analyze needs --in for instance quantities");
        load(h, an_in);
      }
      if (an_cstar) {
        Text rec;
        check(satphase_c_star(h.p, rec.out()));
        std::cout << rec.str() << "\n";
      }
      if (!an_def.empty()) {
        Text rec;
        check(satphase_deficiency(h.p, need(key_values(an_def, "--deficiency"), "r", "--deficiency").c_str(), rec.out()));
        std::cout << rec.str() << "\n";
      }
      if (!an_sparse.empty()) {
        const auto kv = key_values(an_sparse, "--sparse");
        Text rec;
        check(satphase_sparse(h.p, need(kv, "x", "--sparse").c_str(), need(kv, "y", "--sparse").c_str(), rec.out()));
        std::cout << rec.str() << "\n";
      }
      if (!an_bound.empty()) {
        const auto kv = key_values(an_bound, "--cs-bound");
        const double k = to_double(need(kv, "k", "--cs-bound"), "k");
        if (k != static_cast<int>(k)) usage_error("--cs-bound k must be an integer");
        Text rec;
        check(satphase_cs_bound(static_cast<int>(k), to_double(need(kv, "c", "--cs-bound"), "c"),
                                to_double(need(kv, "y", "--cs-bound"), "y"), nullptr, nullptr, rec.out()));
        std::cout << rec.str() << "\n";
      }
      if (an_private) {
        Text rec;
        check(satphase_private_ordering(h.p, rec.out()));
        std::cout << rec.str() << "\n";
      }
    } else if (*sweep) {
      std::ifstream in(sweep_config, std::ios::binary);
      if (!in) {
        std::cerr << "satphase: cannot read '" << sweep_config << "'\n";
        return 4;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      const std::string text = ss.str();
      const auto slash = sweep_config.find_last_of('/');
      const std::string base = slash == std::string::npos ? "." : sweep_config.substr(0, slash);
      Text csv, warnings;
      check(satphase_sweep(text.c_str(), base.c_str(), csv.out(), warnings.out()));
      std::cerr << warnings.str();
      std::string out = sweep_out;
      if (out.empty()) {
        // Fall back to the config's own out key.
        std::istringstream lines(text);
        for (std::string line; std::getline(lines, line);) {
          line = line.substr(0, line.find('#'));
          const auto eq = line.find('=');
          if (eq == std::string::npos) continue;
          std::string key = line.substr(0, eq);
          key.erase(key.find_last_not_of(" \t") + 1);
          key.erase(0, key.find_first_not_of(" \t"));
          if (key != "out") continue;
          out = line.substr(eq + 1);
          out.erase(0, out.find_first_not_of(" \t"));
          out.erase(out.find_last_not_of(" \t\r") + 1);
          if (!out.empty() && out[0] != '/') out = base + "/" + out;
        }
      }
      emit(csv.str(), out);
    } else if (*classify) {
      DistributionHandle d;
      if (!cl_dist.empty()) check(satphase_distribution_load(cl_dist.c_str(), &d.p));
      else if (!cl_model.empty()) check(satphase_distribution_of_model(cl_model.c_str(), &d.p));
      else usage_error("classify needs --dist or --model");
      Text rec;
      check(satphase_classify(d.p, rec.out()));
      std::cout << rec.str() << "\n";
    } else if (*cnf) {
      InstanceHandle h;
      load(h, cnf_in);
      Text t;
      check(satphase_instance_to_dimacs(h.p, t.out()));
      emit(t.str(), cnf_out);
    } else if (*thr) {
      satphase_threshold_options o{thr_trials, thr_seed, thr_tol, thr_max, thr_scaling.c_str()};
      Text rec;
      if (thr_window) check(satphase_window_width(thr_model.c_str(), thr_n, *thr_window, &o, nullptr, rec.out()));
      else check(satphase_threshold(thr_model.c_str(), thr_n, thr_target, &o, nullptr, rec.out()));
      std::cout << rec.str() << "\n";
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
