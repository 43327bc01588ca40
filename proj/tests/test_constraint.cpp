// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "satphase/constraint.hpp"
#include "satphase/error.hpp"
#include "satphase/rng.hpp"

using namespace satphase;

namespace {

ConstraintTemplate unit_x1() {
  return ConstraintTemplate::from_predicate(3, [](std::uint32_t a) { return (a & 1u) != 0; });
}

// x1 != x2 with a free third position.
ConstraintTemplate neq12_free3() {
  return ConstraintTemplate::from_predicate(3, [](std::uint32_t a) { return (a & 1u) != ((a >> 1) & 1u); });
}

ConstraintTemplate random_template(int k, std::uint64_t key) {
  CounterRng rng(key);
  for (;;) {
    ConstraintTemplate::Table t;
    for (std::uint32_t a = 0; a < (1u << k); ++a) t[a] = rng() & 1u;
    if (t.any()) return ConstraintTemplate(k, t);
  }
}

}  // namespace

TEST_SUITE("constraint") {
  TEST_CASE("eval_template on named relations") {
    const auto or3 = or_template(3);
    const std::array<bool, 3> zero{false, false, false}, first{true, false, false}, two{true, true, false};
    CHECK_FALSE(eval_template(or3, zero));
    CHECK(eval_template(or3, first));
    CHECK(eval_template(parity_template(3, false), two));
    const std::array<bool, 2> short_assignment{true, false};
    CHECK_THROWS_AS(eval_template(or3, short_assignment), UsageError);
  }

  TEST_CASE("template validation and hex round trip") {
    CHECK_THROWS_AS(ConstraintTemplate(0, {}), UsageError);
    CHECK_THROWS_AS(ConstraintTemplate(9, ConstraintTemplate::Table().set(0)), UsageError);
    CHECK_THROWS_AS(ConstraintTemplate(3, ConstraintTemplate::Table()), UsageError);
    CHECK_THROWS_AS(ConstraintTemplate(2, ConstraintTemplate::Table().set(5)), UsageError);
    // OR3 rejects only row 0: table bits 1..7, byte 0xfe.
    CHECK(or_template(3).hex() == "fe");
    CHECK(ConstraintTemplate::from_hex(3, "fe") == or_template(3));
    CHECK(ConstraintTemplate::from_hex(1, "02").accepts(1));
    for (int k = 1; k <= 8; ++k)
      for (std::uint64_t s = 0; s < 20; ++s) {
        const auto t = random_template(k, stream_key(11, static_cast<std::uint64_t>(k), s));
        CHECK(ConstraintTemplate::from_hex(k, t.hex()) == t);
      }
    CHECK_THROWS_AS(ConstraintTemplate::from_hex(3, "zz"), UsageError);
  }

  TEST_CASE("permuted moves positions") {
    const auto t = unit_x1();
    const std::array<int, 3> perm{2, 0, 1};
    const auto p = t.permuted(perm);
    // Position 1 of the result is original position 0.
    for (std::uint32_t a = 0; a < 8; ++a) CHECK(p.accepts(a) == (((a >> 1) & 1u) != 0));
  }

  TEST_CASE("implicates_up_to examples") {
    const auto unit = ConstraintTemplate::from_predicate(1, [](std::uint32_t a) { return a == 1; });
    const auto u = implicates_up_to(unit, 1);
    REQUIRE(u.size() == 1);
    CHECK(u[0] == Clause{{{0, false}}});

    const auto one3 = one_in_k_template(3);
    const auto imp = implicates_up_to(one3, 2);
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
      const Clause c{{{i, true}, {j, true}}};
      CHECK(std::find(imp.begin(), imp.end(), c) != imp.end());
    }
    CHECK(implicates_up_to(parity_template(3, false), 2).empty());
  }

  TEST_CASE("implicates_up_to matches the oracle on every 3-ary template") {
    for (std::uint32_t bits = 1; bits < 256; ++bits) {
      const ConstraintTemplate t(3, ConstraintTemplate::Table(bits));
      for (int len = 0; len <= 3; ++len) {
        const auto got = implicates_up_to(t, len);
        std::set<std::vector<std::pair<int, bool>>> keys;
        for (const auto& c : got) {
          CHECK(oracle::implies(t, c));
          std::vector<std::pair<int, bool>> key;
          for (const auto& l : c.literals) key.emplace_back(l.var, l.negated);
          keys.insert(key);
        }
        CHECK(keys.size() == got.size());
        CHECK(keys == oracle::implicate_set(t, len));
        // Ordering: by length, then lexicographic.
        for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].size() <= got[i].size());
      }
    }
  }

  TEST_CASE("minimal_only drops subsumed implicates") {
    const auto t = unit_x1();
    const auto all = implicates_up_to(t, 3);
    const auto minimal = implicates_up_to(t, 3, true);
    CHECK(all.size() > minimal.size());
    REQUIRE(minimal.size() == 1);
    CHECK(minimal[0] == Clause{{{0, false}}});
  }

  TEST_CASE("strong dependence") {
    const auto unit = strongly_depends_on_literal(unit_x1());
    REQUIRE(unit);
    CHECK(*unit == UnitDependence{0, true});
    CHECK_FALSE(strongly_depends_on_literal(or_template(3)));
    const auto neq = ConstraintTemplate::from_predicate(2, [](std::uint32_t a) { return a == 1 || a == 2; });
    CHECK_FALSE(strongly_depends_on_literal(neq));

    const auto x = strongly_depends_on_2xor(neq);
    REQUIRE(x);
    CHECK(*x == XorDependence{0, 1});
    CHECK_FALSE(strongly_depends_on_2xor(nae_template(3)));
    CHECK_FALSE(strongly_depends_on_2xor(one_in_k_template(3)));
  }

  TEST_CASE("dependence agrees with the implicate characterization") {
    for (std::uint32_t bits = 1; bits < 256; ++bits) {
      const ConstraintTemplate t(3, ConstraintTemplate::Table(bits));
      CHECK(strongly_depends_on_literal(t).has_value() == !implicates_up_to(t, 1).empty());
      const auto two = implicates_up_to(t, 2);
      bool pair = false;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          const Clause pos{{{i, false}, {j, false}}}, neg{{{i, true}, {j, true}}};
          if (std::find(two.begin(), two.end(), pos) != two.end() &&
              std::find(two.begin(), two.end(), neg) != two.end())
            pair = true;
        }
      CHECK(strongly_depends_on_2xor(t).has_value() == pair);
    }
  }

  TEST_CASE("trivial satisfiability") {
    CHECK_FALSE(is_trivially_satisfiable(ConstraintDistribution::uniform({nae_template(3)})));
    CHECK(is_trivially_satisfiable(ConstraintDistribution::uniform({or_template(3)})));
    CHECK_FALSE(
        is_trivially_satisfiable(ConstraintDistribution::uniform({clause_template("+++"), clause_template("---")})));
  }

  TEST_CASE("classify_threshold examples") {
    auto one = [](const ConstraintTemplate& t) { return ConstraintDistribution::uniform({t}); };
    // Unit template that is not satisfied by either constant assignment.
    const auto unit = ConstraintTemplate::from_predicate(3, [](std::uint32_t a) { return a == 1; });
    const auto cu = classify_threshold(one(unit));
    CHECK(cu.kind == ThresholdKind::CoarseUnitImplicate);
    REQUIRE(cu.witness);
    CHECK(cu.witness->implicates.size() == 1);

    const auto cx = classify_threshold(one(neq12_free3()));
    CHECK(cx.kind == ThresholdKind::CoarseTwoXorImplicate);
    REQUIRE(cx.witness);
    CHECK(cx.witness->implicates.size() == 2);

    const auto sharp = classify_threshold(ConstraintDistribution::uniform({parity_template(3, false), parity_template(3, true)}));
    CHECK(sharp.kind == ThresholdKind::Sharp);
    CHECK_FALSE(sharp.witness);
    CHECK(classify_threshold(one(or_template(3))).kind == ThresholdKind::TriviallySatisfiable);
  }

  TEST_CASE("classify_threshold agrees with the oracle on all singleton 3-ary distributions") {
    for (std::uint32_t bits = 1; bits < 256; ++bits) {
      const ConstraintTemplate t(3, ConstraintTemplate::Table(bits));
      const auto got = classify_threshold(ConstraintDistribution::uniform({t}));
      CHECK(got.kind == oracle::classify({t}));
      const bool coarse = got.kind == ThresholdKind::CoarseUnitImplicate || got.kind == ThresholdKind::CoarseTwoXorImplicate;
      CHECK(got.witness.has_value() == coarse);
      if (got.witness)
        for (const auto& c : got.witness->implicates) CHECK(oracle::implies(t, c));
    }
  }

  TEST_CASE("classification depends only on the support") {
    const auto a = clause_template("++-"), b = nae_template(3), c = neq12_free3();
    const auto base = classify_threshold(ConstraintDistribution::uniform({a, b, c})).kind;
    const auto weighted = ConstraintDistribution::from_weights({a, b, c}, {Rational(1), Rational(5), Rational(2, 3)});
    CHECK(classify_threshold(weighted).kind == base);
    const std::array<int, 3> perm{1, 2, 0};
    CHECK(classify_threshold(ConstraintDistribution::uniform({a.permuted(perm), b.permuted(perm), c.permuted(perm)})).kind ==
          base);
    // A zero-probability template does not count.
    const ConstraintDistribution with_zero({or_template(3), nae_template(3)}, {Rational(0), Rational(1)});
    CHECK(classify_threshold(with_zero).kind == ThresholdKind::Sharp);
  }

  TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(ConstraintDistribution({}, {}), UsageError);
    CHECK_THROWS_AS(ConstraintDistribution({or_template(3)}, {Rational(1, 2)}), UsageError);
    CHECK_THROWS_AS(ConstraintDistribution({or_template(3), or_template(2)}, {Rational(1, 2), Rational(1, 2)}), UsageError);
    CHECK_THROWS_AS(ConstraintDistribution({or_template(3)}, {Rational(1), Rational(0)}), UsageError);
    CHECK_THROWS_AS(ConstraintDistribution({or_template(3), nae_template(3)}, {Rational(3, 2), Rational(-1, 2)}), UsageError);
    const auto d = ConstraintDistribution::from_weights({or_template(3), nae_template(3)}, {Rational(1), Rational(3)});
    CHECK(d.probs()[0] == Rational(1, 4));
    CHECK(d.probs()[1] == Rational(3, 4));
  }

  TEST_CASE("clause_templates") {
    const auto k1 = clause_templates(1);
    REQUIRE(k1.size() == 2);
    CHECK(k1[0].accepts(1));
    CHECK_FALSE(k1[0].accepts(0));
    CHECK(k1[1].accepts(0));
    for (const auto& t : clause_templates(2)) CHECK(t.satisfying_count() == 3);
    const auto k3 = clause_templates(3);
    REQUIRE(k3.size() == 8);
    CHECK(k3[0] == clause_template("+++"));
    CHECK(k3[1] == clause_template("++-"));
    CHECK(k3[7] == clause_template("---"));
    // Each clause rejects exactly the row that falsifies every literal.
    for (std::size_t s = 0; s < 8; ++s) {
      std::uint32_t falsifier = 0;
      for (int i = 0; i < 3; ++i)
        if ((s >> (2 - i)) & 1u) falsifier |= 1u << i;  // '-' literal is false when the variable is 1
      for (std::uint32_t a = 0; a < 8; ++a) CHECK(k3[s].accepts(a) == (a != falsifier));
    }
  }

  TEST_CASE("named templates and distribution text") {
    CHECK(*named_template("OR3") == or_template(3));
    CHECK(*named_template("NAE3") == nae_template(3));
    CHECK(*named_template("XOR3_EVEN") == parity_template(3, false));
    CHECK(*named_template("XOR3_ODD") == parity_template(3, true));
    CHECK(*named_template("ONE_IN_3") == one_in_k_template(3));
    CHECK(*named_template("CLAUSE3:+-+") == clause_template("+-+"));
    CHECK_FALSE(named_template("FOO3"));

    const auto d = parse_distribution("# comment\nt 0 3 fe 1/3\nNAE3 2/3\n");
    REQUIRE(d.templates().size() == 2);
    CHECK(d.templates()[0] == or_template(3));
    CHECK(d.probs()[1] == Rational(2, 3));
    const auto again = parse_distribution(serialize_distribution(d));
    CHECK(again.templates() == d.templates());
    CHECK(again.probs() == d.probs());
    CHECK_THROWS(parse_distribution("t 0 3 fe 1\nt 1 2 0e 1\n"));
    try {
      parse_distribution("OR3 1\nBOGUS 1\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
}
