// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "satphase/error.hpp"
#include "satphase/instance.hpp"
#include "satphase/solver.hpp"

using namespace satphase;

namespace {

// Upper 1e-3 quantile of chi-square with 7 degrees of freedom.
constexpr double kChi2_7_p001 = 24.322;

std::vector<std::vector<int>> signed_clauses(const Cnf& f) {
  std::vector<std::vector<int>> out;
  for (const auto& c : f.clauses) {
    std::vector<int> lits;
    for (const auto& l : c.literals) lits.push_back(l.negated ? -(l.var + 1) : l.var + 1);
    out.push_back(lits);
  }
  return out;
}

}  // namespace

TEST_SUITE("instance") {
  TEST_CASE("empty instance and determinism") {
    const auto d = ConstraintDistribution::uniform(clause_templates(3));
    CHECK(gen_molloy(d, 10, 0, 1).constraints.empty());
    CHECK(serialize_instance(gen_molloy(d, 50, 200, 9)) == serialize_instance(gen_molloy(d, 50, 200, 9)));
    CHECK(serialize_instance(gen_molloy(d, 50, 200, 9)) != serialize_instance(gen_molloy(d, 50, 200, 10)));
    CHECK_THROWS_AS(gen_molloy(d, 2, 1, 1), UsageError);
    CHECK_THROWS_AS(gen_ksat(3, 2, 1, 1), UsageError);
    CHECK_THROWS_AS(gen_kxorsat(3, 2, 1, 1), UsageError);
  }

  TEST_CASE("prefix property") {
    const auto d = ConstraintDistribution::uniform({nae_template(3), one_in_k_template(3)});
    const auto small = gen_molloy(d, 40, 30, 77);
    const auto large = gen_molloy(d, 40, 90, 77);
    REQUIRE(large.constraints.size() == 90);
    for (std::size_t i = 0; i < 30; ++i) CHECK(small.constraints[i] == large.constraints[i]);
  }

  TEST_CASE("sign patterns are uniform under gen_molloy") {
    const auto d = ConstraintDistribution::uniform(clause_templates(3));
    std::array<double, 8> counts{};
    std::size_t total = 0;
    for (std::uint64_t s = 0; s < 200; ++s)
      for (const auto& c : gen_molloy(d, 100, 400, 1000 + s).constraints) {
        ++counts[c.template_id];
        ++total;
      }
    const double expected = static_cast<double>(total) / 8;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < kChi2_7_p001);
  }

  TEST_CASE("gen_ksat is gen_molloy over uniform clause templates") {
    const auto inst = gen_ksat(3, 30, 90, 5);
    for (const auto& c : inst.constraints) {
      REQUIRE(c.vars.size() == 3);
      CHECK(c.vars[0] != c.vars[1]);
      CHECK(c.vars[0] != c.vars[2]);
      CHECK(c.vars[1] != c.vars[2]);
    }
    CHECK(inst.meta_value("density") == "3");
    const auto molloy = gen_molloy(ConstraintDistribution::uniform(clause_templates(3)), 30, 90, 5);
    CHECK(molloy.constraints == inst.constraints);
    CHECK(molloy.templates == inst.templates);

    // Variable marginal: each of 10 variables appears in 3/10 of the slots.
    std::array<double, 10> counts{};
    double total = 0;
    for (std::uint64_t s = 0; s < 200; ++s)
      for (const auto& c : gen_ksat(3, 10, 50, 300 + s).constraints)
        for (int v : c.vars) {
          ++counts[v];
          ++total;
        }
    double chi2 = 0;
    for (double c : counts) chi2 += (c - total / 10) * (c - total / 10) / (total / 10);
    CHECK(chi2 < 27.877);  // chi-square, 9 df, 1e-3
  }

  TEST_CASE("ordered tuples cover every permutation") {
    // With n = k = 3 every tuple is a permutation of {0,1,2}.
    std::map<std::vector<int>, int> seen;
    for (const auto& c : gen_molloy(ConstraintDistribution::uniform({nae_template(3)}), 3, 6000, 4).constraints)
      ++seen[c.vars];
    CHECK(seen.size() == 6);
    for (const auto& [tuple, count] : seen) CHECK(std::abs(count - 1000) < 150);
  }

  TEST_CASE("satisfiability far from the threshold") {
    int sat = 0;
    for (std::uint64_t s = 0; s < 200; ++s) sat += is_satisfiable(gen_ksat(2, 1000, 300, s));
    CHECK(sat >= 198);
    int sat3 = 0;
    for (std::uint64_t s = 0; s < 200; ++s) sat3 += is_satisfiable(gen_ksat(3, 60, 600, s));
    CHECK(sat3 <= 2);
  }

  TEST_CASE("(2+p)-SAT counts") {
    auto arities = [](const Instance& inst) {
      std::array<int, 4> c{};
      for (const auto& ac : inst.constraints) ++c[ac.vars.size()];
      return c;
    };
    const auto zero = arities(gen_2p_sat(0, 2, 50, 1));
    CHECK(zero[3] == 0);
    CHECK(zero[2] == 100);
    const auto one = arities(gen_2p_sat(1, 2, 50, 1));
    CHECK(one[2] == 0);
    CHECK(one[3] == 100);
    const auto half = arities(gen_2p_sat(0.5, 2, 100, 1));
    CHECK(half[3] == 100);
    CHECK(half[2] == 100);
    // floor(0.3*1.5*11 + 0.5) = 5 three-clauses of floor(16.5 + 0.5) = 17.
    const auto odd = arities(gen_2p_sat(0.3, 1.5, 11, 2));
    CHECK(odd[3] == 5);
    CHECK(odd[2] == 12);
    CHECK_THROWS_AS(gen_2p_sat(1.5, 1, 10, 1), UsageError);
  }

  TEST_CASE("k-XOR-SAT") {
    CHECK(is_satisfiable(gen_kxorsat(3, 10, 0, 1)));
    for (std::uint64_t s = 0; s < 500; ++s) {
      const auto inst = gen_kxorsat(3, 20, 5, s);
      CHECK((gauss_solve_xor(inst).status == SolveStatus::Sat) == oracle::satisfiable(inst));
    }
    int odd = 0;
    const auto big = gen_kxorsat(3, 50, 1000, 3);
    for (const auto& c : big.constraints) odd += *big.templates[c.template_id].parity_rhs();
    CHECK(std::abs(odd - 500) <= 53);  // two-sided binomial test at 1e-3
  }

  TEST_CASE("to_cnf maxterm expansion") {
    Instance inst;
    inst.n = 3;
    inst.templates = {or_template(3), parity_template(3, false)};
    inst.constraints = {{0, {0, 1, 2}}};
    const auto f = to_cnf(inst);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0].literals == std::vector<Literal>{{0, false}, {1, false}, {2, false}});

    inst.constraints = {{1, {2, 0, 1}}};
    const auto g = to_cnf(inst);
    REQUIRE(g.clauses.size() == 4);
    for (const auto& c : g.clauses) {
      int positives = 0;
      for (const auto& l : c.literals) positives += !l.negated;
      // Each clause forbids one odd assignment, so it has an even number of positives.
      CHECK(positives % 2 == 0);
      CHECK(g.origin[0] == 0);
    }
  }

  TEST_CASE("to_cnf preserves satisfiability and clause counts") {
    const auto d = ConstraintDistribution::uniform({nae_template(3), one_in_k_template(3), or_template(3),
                                                    parity_template(3, true)});
    for (std::uint64_t s = 0; s < 150; ++s) {
      const int n = 4 + static_cast<int>(s % 9);
      const auto inst = gen_molloy(d, n, static_cast<std::size_t>(n), s);
      const auto f = to_cnf(inst);
      std::size_t expected = 0;
      for (const auto& c : inst.constraints) expected += 8 - inst.templates[c.template_id].satisfying_count();
      CHECK(f.clauses.size() == expected);
      CHECK(oracle::satisfiable(inst) == oracle::cnf_satisfiable(n, signed_clauses(f)));
    }
  }

  TEST_CASE("text format round trip") {
    const auto d = ConstraintDistribution::uniform({nae_template(3), one_in_k_template(3), clause_template("+-+")});
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const auto inst = s % 2 ? gen_molloy(d, 5 + static_cast<int>(s % 20), s % 30, s) : gen_2p_sat(0.4, 1.3, 12, s);
      const auto text = serialize_instance(inst);
      const auto back = parse_instance(text);
      CHECK(back == inst);
      CHECK(serialize_instance(back) == text);
    }
  }

  TEST_CASE("parsing") {
    const auto inst = parse_instance("# comment\np gsat 10 2 3\nt 0 3 fe\nc 0 1 2 3\nc 0 10 9 8\nm seed 4\n");
    CHECK(inst.n == 10);
    CHECK(inst.constraints.size() == 2);
    CHECK(inst.max_arity() == 3);
    CHECK(inst.constraints[1].vars == std::vector<int>{9, 8, 7});
    CHECK(inst.meta_value("seed") == "4");

    auto line_of = [](const char* text) -> std::size_t {
      try {
        parse_instance(text);
      } catch (const ParseError& e) {
        return e.line();
      }
      return 0;
    };
    try {
      parse_instance("p gsat 4 1 3\nt 0 3 fe\nc 7 1 2 3\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("unknown template id 7") != std::string::npos);
    }
    CHECK(line_of("p gsat 4 1 3\nt 0 3 fe\nc 0 1 2 9\n") == 3);
    CHECK(line_of("p gsat 4 1 3\nt 0 3 fe\nc 0 1 1 2\n") == 3);
    CHECK(line_of("p gsat 4 1 3\nt 0 3 fe\nc 0 1 2\n") == 3);
    CHECK(line_of("p gsat 4 2 3\nt 0 3 fe\nc 0 1 2 3\n") > 0);
    CHECK(line_of("x nonsense\n") == 1);
    CHECK(line_of("t 0 3 fe\n") > 0);
  }

  TEST_CASE("parse_instances reads concatenated instances") {
    const auto a = gen_ksat(3, 8, 5, 1), b = gen_kxorsat(3, 9, 4, 2);
    const auto both = parse_instances(serialize_instance(a) + serialize_instance(b));
    REQUIRE(both.size() == 2);
    CHECK(both[0] == a);
    CHECK(both[1] == b);
  }

  TEST_CASE("DIMACS") {
    const auto inst = gen_ksat(3, 12, 40, 3);
    const auto f = to_cnf(inst);
    const auto back = parse_dimacs(to_dimacs(f));
    CHECK(back.n == f.n);
    REQUIRE(back.clauses.size() == f.clauses.size());
    for (std::size_t i = 0; i < f.clauses.size(); ++i) CHECK(back.clauses[i] == f.clauses[i]);

    const auto merged = parse_dimacs("c hi\np cnf 3 3\n1 1 -2 0\n2 -2 0\n3 0\n");
    REQUIRE(merged.clauses.size() == 2);
    CHECK(merged.clauses[0].size() == 2);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 5 0\n"), ParseError);

    const auto as_instance = instance_from_cnf(f);
    CHECK(oracle::satisfiable(as_instance) == oracle::cnf_satisfiable(12, signed_clauses(f)));
  }

  TEST_CASE("validation") {
    Instance inst;
    inst.n = 3;
    inst.templates = {or_template(3)};
    inst.constraints = {{0, {0, 1, 1}}};
    CHECK_THROWS_AS(inst.validate(), UsageError);
    inst.constraints = {{1, {0, 1, 2}}};
    CHECK_THROWS_AS(inst.validate(), UsageError);
    inst.constraints = {{0, {0, 1}}};
    CHECK_THROWS_AS(inst.validate(), UsageError);
    inst.constraints = {{0, {0, 1, 3}}};
    CHECK_THROWS_AS(inst.validate(), UsageError);
  }
}
