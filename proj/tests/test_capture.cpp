#include <doctest.h>

#include <bit>
#include <map>
#include <random>

#include "catalog.hpp"
#include "cspk/capture.hpp"
#include "cspk/oracle.hpp"

using namespace cspk;
using namespace cspk::testing;

TEST_CASE("witness expansion into alternating form") {
  Tuple t1{0, 1}, t2{1, 1}, t3{1, 0};
  SUBCASE("gamma (2,-1) becomes t1, t2, t1") {
    auto seq = witness_to_alternating(IntVec{2, -1}, {t1, t2});
    CHECK(seq == std::vector<Tuple>{t1, t2, t1});
  }
  SUBCASE("singleton") {
    CHECK(witness_to_alternating(IntVec{1}, {t1}) == std::vector<Tuple>{t1});
  }
  SUBCASE("already alternating input is unchanged") {
    CHECK(witness_to_alternating(IntVec{1, -1, 1}, {t1, t2, t3}) ==
          std::vector<Tuple>{t1, t2, t3});
  }
  SUBCASE("coefficients must sum to one") {
    CHECK_THROWS_AS(witness_to_alternating(IntVec{1, 1}, {t1, t2}), std::invalid_argument);
  }
}

TEST_CASE("decide_balanced on the catalog") {
  SUBCASE("2-OR is unbalanced with the canonical witness") {
    auto res = decide_balanced(or2());
    REQUIRE_FALSE(res.balanced);
    const auto& w = *res.witness;
    CHECK(w.target == Tuple{0, 0});
    CHECK(w.alternating == std::vector<Tuple>{{0, 1}, {1, 1}, {1, 0}});
    // exact replay over Z
    Tuple sum(2, 0);
    for (std::size_t j = 0; j < w.alternating.size(); ++j)
      for (int c = 0; c < 2; ++c) sum[c] += (j % 2 == 0 ? 1 : -1) * w.alternating[j][c];
    CHECK(sum == w.target);
  }
  SUBCASE("1-in-3 is balanced; smallest separating prime powers per non-member") {
    auto res = decide_balanced(one_in_three());
    REQUIRE(res.balanced);
    const auto& cert = *res.certificate;
    REQUIRE(cert.entries.size() == 5);
    std::map<std::string, Int> expected_q = {
        {"000", 2}, {"011", 2}, {"101", 2}, {"110", 2}, {"111", 3}};
    for (const auto& e : cert.entries) {
      Tuple u = index_to_tuple(e.u_index, 3);
      CHECK(e.ring.mod.q == expected_q.at(tuple_to_string(u)));
      CHECK(e.polynomial.degree() <= 1);
      CHECK(verify_capture(one_in_three(), u, e.polynomial));
    }
  }
  SUBCASE("equality is balanced") {
    auto res = decide_balanced(eq2());
    REQUIRE(res.balanced);
    for (const auto& e : res.certificate->entries) {
      CHECK(e.polynomial.degree() <= 1);
      CHECK(verify_capture(eq2(), index_to_tuple(e.u_index, 2), e.polynomial));
    }
  }
  SUBCASE("the full relation is balanced with an empty certificate") {
    auto res = decide_balanced(full_relation(2));
    REQUIRE(res.balanced);
    CHECK(res.certificate->entries.empty());
  }
  SUBCASE("the empty relation is balanced, captured by constants") {
    auto res = decide_balanced(empty_relation(2));
    REQUIRE(res.balanced);
    CHECK(res.certificate->entries.size() == 4);
    for (const auto& e : res.certificate->entries) {
      CHECK(e.ring.mod.q == 2);
      CHECK(e.polynomial.degree() == 0);
      CHECK(verify_capture(empty_relation(2), index_to_tuple(e.u_index, 2), e.polynomial));
    }
  }
}

TEST_CASE("degree-(k-1) capture construction") {
  SUBCASE("NAE-3 at the all-zero tuple expands (1-s)(2-s)") {
    auto p = degree_km1_capture(nae3(), {0, 0, 0});
    CHECK(p.degree() == 2);
    CHECK(verify_capture(nae3(), {0, 0, 0}, p));
    for (std::uint32_t i = 0; i < 8; ++i) {
      Tuple t = index_to_tuple(i, 3);
      int s = t[0] + t[1] + t[2];
      CHECK(p.evaluate(t) == Rat((1 - s) * (2 - s)));
    }
  }
  SUBCASE("arity-1 empty relation base case") {
    auto p = degree_km1_capture(empty_relation(1), {0});
    CHECK(p.degree() == 0);
    CHECK(p.evaluate({0}) == 1);
    CHECK(p.evaluate({1}) == 1);
  }
  SUBCASE("recursion picks the smallest non-member as w") {
    // R = {(0,0)}, u = (1,0): w = (0,1) disagrees everywhere, giving x1 - x2
    auto r = BooleanRelation::from_tuples("S", 2, {{0, 0}});
    auto p = degree_km1_capture(r, {1, 0});
    CHECK(p.degree() == 1);
    CHECK(verify_capture(r, {1, 0}, p));
    CHECK(p.evaluate({1, 0}) == 1);
    CHECK(p.evaluate({0, 0}) == 0);
    CHECK(p.evaluate({0, 1}) == -1);
    CHECK(p.evaluate({1, 1}) == 0);
  }
  SUBCASE("shared-coordinate recursion") {
    // u and the smallest other non-member share coordinate 1
    auto r = BooleanRelation::from_tuples("S", 2, {{0, 1}, {1, 1}});
    auto p = degree_km1_capture(r, {1, 0});  // non-members (0,0) and (1,0)
    CHECK(p.degree() <= 1);
    CHECK(verify_capture(r, {1, 0}, p));
  }
  SUBCASE("exhaustive validity for k <= 3") {
    for (int k = 1; k <= 3; ++k) {
      const std::uint32_t table = 1u << k;
      for (std::uint32_t mask = 0; mask < (1u << table); ++mask) {
        if (std::popcount(mask) >= static_cast<int>(table) - 1) continue;
        auto r = BooleanRelation::from_mask("T", k, mask);
        for (std::uint32_t ui = 0; ui < table; ++ui) {
          if (r.contains_index(ui)) continue;
          Tuple u = index_to_tuple(ui, k);
          auto p = degree_km1_capture(r, u);
          CHECK(p.degree() <= k - 1);
          CHECK(verify_capture(r, u, p));
        }
      }
    }
  }
}

TEST_CASE("minimal-degree rational capture") {
  SUBCASE("1-in-3 at the all-ones tuple is linear") {
    auto p = min_degree_capture(one_in_three(), {1, 1, 1}, 3);
    REQUIRE(p.has_value());
    CHECK(p->degree() == 1);
    CHECK(p->evaluate({1, 1, 1}) == 1);
    CHECK(verify_capture(one_in_three(), {1, 1, 1}, *p));
  }
  SUBCASE("2-OR has no linear capture over Q") {
    CHECK_FALSE(min_degree_capture(or2(), {0, 0}, 1).has_value());
  }
  SUBCASE("empty arity-1 relation is captured by a constant") {
    auto p = min_degree_capture(empty_relation(1), {0}, 1);
    REQUIRE(p.has_value());
    CHECK(p->degree() == 0);
    CHECK(p->evaluate({0}) == 1);
  }
}

TEST_CASE("verify_capture evaluates both conditions") {
  MultilinearPolynomial p(Ring::modulo(PrimePowerModulus(Int(3))), 3);
  p.set_coeff(0, -1);
  for (int v = 1; v <= 3; ++v) p.set_coeff(1u << (v - 1), 1);
  CHECK(verify_capture(one_in_three(), {0, 0, 0}, p));

  MultilinearPolynomial p2(Ring::modulo(PrimePowerModulus(Int(2))), 3);
  p2.set_coeff(0, -1);
  for (int v = 1; v <= 3; ++v) p2.set_coeff(1u << (v - 1), 1);
  CHECK_FALSE(verify_capture(one_in_three(), {1, 1, 1}, p2));

  MultilinearPolynomial zero(Ring::rationals(), 3);
  CHECK_FALSE(verify_capture(one_in_three(), {0, 0, 0}, zero));
}

TEST_CASE("unbalanced relations admit no degree-1 capture over any sampled ring") {
  std::vector<Int> prime_powers = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
  auto check_none = [&](const BooleanRelation& r) {
    auto res = decide_balanced(r);
    if (res.balanced) return;
    const Tuple& u = res.witness->target;
    CHECK_FALSE(min_degree_capture(r, u, 1).has_value());
    for (const auto& q : prime_powers)
      CHECK_FALSE(find_capture_modq(r, u, 1, PrimePowerModulus(q)).has_value());
  };
  check_none(or2());
  check_none(nae3());
  check_none(implication());
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 30; ++trial) check_none(random_relation(rng, 3, "T"));
}

TEST_CASE("balance decisions agree with the bounded alternating oracle") {
  std::mt19937 rng(515);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto r = random_relation(rng, 4, "T");
    auto algebraic = decide_balanced(r);
    auto search = bounded_alternating_search(r, 5);
    if (algebraic.balanced) {
      CHECK_FALSE(search.has_value());
    } else if (!search.has_value()) {
      // one-sided: the integer witness must then be longer than 5
      CHECK(algebraic.witness->alternating.size() > 5);
    }
    ++checked;
  }
  CHECK(checked == 60);
}
