// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "satphase/satphase.h"

extern "C" int satphase_header_is_c(void);

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  satphase_string_free(s);
  return out;
}

std::string field(const std::string& record, const std::string& key) {
  const auto at = record.find(key + "=");
  if (at == std::string::npos) return {};
  const auto start = at + key.size() + 1;
  return record.substr(start, record.find(' ', start) - start);
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("header compiles as C") { CHECK(satphase_header_is_c() == 1); }

  TEST_CASE("version and errors") {
    CHECK(std::string(satphase_version()) == "1.0.0");
    satphase_instance* inst = nullptr;
    CHECK(satphase_instance_parse("p satphase 3 1 1\nbogus\n", &inst) == SATPHASE_E_PARSE);
    CHECK(inst == nullptr);
    CHECK(std::string(satphase_last_error()).find("line") != std::string::npos);
    CHECK(satphase_generate("ksat k=3", 10, 5, 1, nullptr) == SATPHASE_E_USAGE);
    CHECK(satphase_instance_load("/nonexistent/file", &inst) == SATPHASE_E_IO);
    CHECK(satphase_generate("nonsense", 10, 5, 1, &inst) == SATPHASE_E_USAGE);
    satphase_instance_free(nullptr);
    satphase_distribution_free(nullptr);
    satphase_string_free(nullptr);
  }

  TEST_CASE("instances round trip") {
    satphase_instance* inst = nullptr;
    REQUIRE(satphase_generate("ksat k=3", 20, 60, 7, &inst) == SATPHASE_OK);
    CHECK(satphase_instance_num_vars(inst) == 20);
    CHECK(satphase_instance_num_constraints(inst) == 60);
    char* text = nullptr;
    REQUIRE(satphase_instance_serialize(inst, &text) == SATPHASE_OK);
    const std::string first = take(text);
    satphase_instance* again = nullptr;
    REQUIRE(satphase_instance_parse(first.c_str(), &again) == SATPHASE_OK);
    REQUIRE(satphase_instance_serialize(again, &text) == SATPHASE_OK);
    CHECK(take(text) == first);

    REQUIRE(satphase_instance_to_dimacs(inst, &text) == SATPHASE_OK);
    const std::string dimacs = take(text);
    CHECK(dimacs.find("p cnf 20 60") != std::string::npos);
    satphase_instance* from_cnf = nullptr;
    REQUIRE(satphase_instance_parse_dimacs(dimacs.c_str(), &from_cnf) == SATPHASE_OK);
    satphase_solve_info a{}, b{};
    REQUIRE(satphase_solve(inst, "dpll", nullptr, -1, &a, nullptr) == SATPHASE_OK);
    REQUIRE(satphase_solve(from_cnf, "brute", nullptr, -1, &b, nullptr) == SATPHASE_OK);
    CHECK(a.result == b.result);
    satphase_instance_free(from_cnf);
    satphase_instance_free(again);
    satphase_instance_free(inst);
  }

  TEST_CASE("solve records") {
    satphase_instance* inst = nullptr;
    REQUIRE(satphase_instance_parse_dimacs("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n", &inst) == SATPHASE_OK);
    char* record = nullptr;
    satphase_solve_info info{};
    REQUIRE(satphase_solve(inst, "dpll", "max-occurrence", -1, &info, &record) == SATPHASE_OK);
    const auto r = take(record);
    CHECK(info.result == SATPHASE_UNSAT);
    CHECK(field(r, "status") == "UNSAT");
    CHECK(field(r, "witness") == "-");
    CHECK(satphase_solve(inst, "gauss", nullptr, -1, &info, nullptr) == SATPHASE_E_USAGE);
    CHECK(satphase_solve(inst, "dpll", "random", -1, &info, nullptr) == SATPHASE_E_USAGE);

    REQUIRE(satphase_mus(inst, &record, nullptr) == SATPHASE_OK);
    CHECK(field(take(record), "core_size") == "4");
    REQUIRE(satphase_spine(inst, nullptr, "exact", &record, nullptr) == SATPHASE_OK);
    CHECK(field(take(record), "fraction") == "1");
    REQUIRE(satphase_c_star(inst, &record) == SATPHASE_OK);
    CHECK(field(take(record), "cstar") == "2");
    REQUIRE(satphase_deficiency(inst, "1", &record) == SATPHASE_OK);
    CHECK(field(take(record), "max_deficiency") == "2");
    satphase_instance_free(inst);

    REQUIRE(satphase_generate("ksat k=3", 60, 600, 3, &inst) == SATPHASE_OK);
    REQUIRE(satphase_solve(inst, "dpll", nullptr, 0, &info, &record) == SATPHASE_OK);
    CHECK(info.result == SATPHASE_BUDGET_EXCEEDED);
    CHECK(field(take(record), "status") == "BUDGET_EXCEEDED");
    satphase_instance_free(inst);

    REQUIRE(satphase_generate("kxor k=3", 10, 4, 3, &inst) == SATPHASE_OK);
    REQUIRE(satphase_solve(inst, "gauss", nullptr, -1, &info, &record) == SATPHASE_OK);
    CHECK(info.result == SATPHASE_SAT);
    CHECK(field(take(record), "witness").size() == 10);
    CHECK(satphase_mus(inst, &record, nullptr) == SATPHASE_E_USAGE);
    satphase_instance_free(inst);
  }

  TEST_CASE("distributions") {
    satphase_distribution* d = nullptr;
    REQUIRE(satphase_distribution_parse("XOR3_EVEN\n", &d) == SATPHASE_OK);
    char* record = nullptr;
    REQUIRE(satphase_classify(d, &record) == SATPHASE_OK);
    CHECK(field(take(record), "kind") == "trivially-satisfiable");
    satphase_distribution_free(d);
    REQUIRE(satphase_distribution_parse("XOR3_EVEN\nXOR3_ODD\n", &d) == SATPHASE_OK);
    REQUIRE(satphase_classify(d, &record) == SATPHASE_OK);
    CHECK(field(take(record), "kind") == "sharp");
    satphase_distribution_free(d);
    REQUIRE(satphase_distribution_parse("t 0 2 02\nt 1 2 04\n", &d) == SATPHASE_OK);
    REQUIRE(satphase_classify(d, &record) == SATPHASE_OK);
    CHECK(field(take(record), "kind") == "coarse-unit-implicate");
    satphase_distribution_free(d);
    CHECK(satphase_distribution_parse("t 0 9 00\n", &d) == SATPHASE_E_PARSE);
    REQUIRE(satphase_distribution_of_model("ksat k=2", &d) == SATPHASE_OK);
    char* text = nullptr;
    REQUIRE(satphase_distribution_serialize(d, &text) == SATPHASE_OK);
    CHECK(take(text).find("t 3 2") != std::string::npos);
    satphase_distribution_free(d);
  }

  TEST_CASE("analytics") {
    double eps = 0, x = 0;
    char* record = nullptr;
    REQUIRE(satphase_cs_bound(3, 1, 1, &eps, &x, &record) == SATPHASE_OK);
    take(record);
    CHECK(eps == doctest::Approx(0.5));
    CHECK(x == doctest::Approx(4.579e-3).epsilon(1e-3));
    CHECK(satphase_cs_bound(3, 1, 0.5, &eps, &x, nullptr) == SATPHASE_E_USAGE);

    satphase_instance* inst = nullptr;
    REQUIRE(satphase_instance_parse_dimacs("p cnf 7 3\n1 2 3 0\n3 4 5 0\n5 6 7 0\n", &inst) == SATPHASE_OK);
    REQUIRE(satphase_private_ordering(inst, &record) == SATPHASE_OK);
    CHECK(field(take(record), "ordering") != "none");
    REQUIRE(satphase_sparse(inst, "1", "1/3", &record) == SATPHASE_OK);
    CHECK(field(take(record), "verdict") == "not-sparse");
    satphase_instance_free(inst);
  }

  TEST_CASE("sweeps and thresholds") {
    char *csv = nullptr, *warnings = nullptr;
    const char* cfg = "model = ksat k=2\nn = 50\ndensities = 0.5, 2\ntrials = 5\nspine_mode = none\n";
    REQUIRE(satphase_sweep(cfg, ".", &csv, &warnings) == SATPHASE_OK);
    const auto out = take(csv);
    take(warnings);
    CHECK(out.find("model,n,density,trials") != std::string::npos);
    CHECK(satphase_sweep("model = ksat k=2\nn = 50\ndensities = 2, 1\n", ".", &csv, nullptr) == SATPHASE_E_PARSE);

    satphase_threshold_options opts{50, 1, 0, 0, nullptr};
    double density = 0;
    char* record = nullptr;
    REQUIRE(satphase_threshold("ksat k=2", 100, 0.5, &opts, &density, &record) == SATPHASE_OK);
    take(record);
    CHECK(density > 0.6);
    CHECK(density < 1.8);
    opts.max_density = 0.01;
    CHECK(satphase_threshold("ksat k=2", 100, 0.5, &opts, &density, nullptr) == SATPHASE_E_ESTIMATION);
    opts.max_density = 0;
    double width = 0;
    REQUIRE(satphase_window_width("ksat k=2", 100, 0.25, &opts, &width, nullptr) == SATPHASE_OK);
    CHECK(width > 0);
  }
}
