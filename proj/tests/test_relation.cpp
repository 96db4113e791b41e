#include <doctest.h>

#include <algorithm>
#include <random>

#include "catalog.hpp"
#include "cspk/oracle.hpp"
#include "cspk/relation.hpp"

using namespace cspk;
using namespace cspk::testing;

namespace {

const TotalOperation& op(const std::string& name) {
  for (const auto& o : schaefer_operations())
    if (o.name == name) return o;
  throw std::logic_error("unknown operation " + name);
}

// Second, independently coded preservation check: iterates tuple choices
// in the reversed order and evaluates through Tuple objects.
bool preserved_oracle(const BooleanRelation& r, const TotalOperation& f) {
  auto members = r.member_tuples();
  std::reverse(members.begin(), members.end());
  if (members.empty()) return true;
  std::vector<std::size_t> pick(f.arity, 0);
  for (;;) {
    Tuple out(r.arity());
    for (int c = 0; c < r.arity(); ++c) {
      std::vector<int> args(f.arity);
      for (int j = 0; j < f.arity; ++j) args[j] = members[pick[j]][c];
      out[c] = f.apply(args);
    }
    if (!r.contains(out)) return false;
    std::size_t pos = 0;  // reversed odometer
    while (pos < pick.size() && pick[pos] + 1 == members.size()) pick[pos++] = 0;
    if (pos == pick.size()) return true;
    ++pick[pos];
  }
}

}  // namespace

TEST_CASE("tuple index codec puts coordinate 1 in the most significant bit") {
  CHECK(tuple_to_index({1, 0, 0}) == 4);
  CHECK(tuple_to_index({0, 0, 1}) == 1);
  CHECK(index_to_tuple(4, 3) == Tuple{1, 0, 0});
  CHECK(tuple_to_string({1, 0, 1}) == "101");
  CHECK(tuple_from_string("011") == Tuple{0, 1, 1});
  for (std::uint32_t i = 0; i < 32; ++i) CHECK(tuple_to_index(index_to_tuple(i, 5)) == i);
}

TEST_CASE("preservation by total operations") {
  SUBCASE("implication is preserved by conjunction") {
    CHECK(preserved_by_total(implication(), op("and")));
  }
  SUBCASE("majority breaks 1-in-3") {
    auto v = find_total_violation(one_in_three(), op("major"));
    REQUIRE(v.has_value());
    CHECK(v->output == Tuple{0, 0, 0});
  }
  SUBCASE("the full relation is preserved by everything") {
    for (const auto& o : schaefer_operations()) {
      CHECK(preserved_by_total(full_relation(o.arity), o));
      CHECK(preserved_by_total(full_relation(3), o));
      CHECK(preserved_by_total(empty_relation(3), o));
    }
  }
  SUBCASE("agrees with an independent enumeration order") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 40; ++trial) {
      auto r = random_relation(rng, 3, "T");
      for (const auto& o : schaefer_operations())
        CHECK(preserved_by_total(r, o) == preserved_oracle(r, o));
    }
  }
  SUBCASE("violations replay") {
    std::mt19937 rng(556);
    for (int trial = 0; trial < 40; ++trial) {
      auto r = random_relation(rng, 3, "T");
      for (const auto& o : schaefer_operations()) {
        auto v = find_total_violation(r, o);
        if (!v) continue;
        for (const auto& in : v->inputs) CHECK(r.contains(in));
        Tuple out(r.arity());
        for (int c = 0; c < r.arity(); ++c) {
          std::vector<int> args;
          for (const auto& in : v->inputs) args.push_back(in[c]);
          out[c] = o.apply(args);
        }
        CHECK(out == v->output);
        CHECK_FALSE(r.contains(out));
      }
    }
  }
}

TEST_CASE("schaefer reports") {
  SUBCASE("1-in-3 fails all six operations") {
    auto report = schaefer_report(ConstraintLanguage({one_in_three()}));
    CHECK_FALSE(report.tractable);
    for (const auto& e : report.entries) {
      CHECK_FALSE(e.preserves_all);
      CHECK(e.failing_relation == "R1IN3");
    }
  }
  SUBCASE("NAE-3 is intractable, conjunction counterexample replays") {
    auto report = schaefer_report(ConstraintLanguage({nae3()}));
    CHECK_FALSE(report.tractable);
    const auto& and_entry = report.entries[2];
    CHECK(and_entry.operation == "and");
    REQUIRE(and_entry.violation.has_value());
    // lexicographically first violating pair
    CHECK(and_entry.violation->inputs ==
          std::vector<Tuple>{{0, 0, 1}, {0, 1, 0}});
    CHECK(and_entry.violation->output == Tuple{0, 0, 0});
  }
  SUBCASE("implication alone is tractable") {
    auto report = schaefer_report(ConstraintLanguage({implication()}));
    CHECK(report.tractable);
  }
  SUBCASE("3-OR alone is tractable via disjunction") {
    auto report = schaefer_report(ConstraintLanguage({kor(3)}));
    CHECK(report.tractable);
    CHECK(report.entries[3].operation == "or");
    CHECK(report.entries[3].preserves_all);
  }
}

TEST_CASE("alternating preservation") {
  SUBCASE("2-OR breaks at the canonical witness") {
    auto v = preserved_by_alternating(or2(), 3);
    REQUIRE(v.has_value());
    CHECK(v->sequence == std::vector<Tuple>{{0, 1}, {1, 1}, {1, 0}});
    CHECK(v->sum == Tuple{0, 0});
  }
  SUBCASE("1-in-3 is preserved at m=3") {
    CHECK_FALSE(preserved_by_alternating(one_in_three(), 3).has_value());
  }
  SUBCASE("implication breaks") {
    auto v = preserved_by_alternating(implication(), 3);
    REQUIRE(v.has_value());
    CHECK(v->sequence == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 1}});
    CHECK(v->sum == Tuple{1, 0});
  }
  SUBCASE("even arity is rejected") {
    CHECK_THROWS_AS(preserved_by_alternating(or2(), 2), std::invalid_argument);
  }
  SUBCASE("counterexamples replay and preservation is genuine") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
      auto r = random_relation(rng, 3, "T");
      for (int m : {1, 3}) {
        auto v = preserved_by_alternating(r, m);
        if (v) {
          Tuple sum(r.arity(), 0);
          for (std::size_t j = 0; j < v->sequence.size(); ++j)
            for (int c = 0; c < r.arity(); ++c)
              sum[c] += (j % 2 == 0 ? 1 : -1) * v->sequence[j][c];
          CHECK(sum == v->sum);
          for (const auto& t : v->sequence) CHECK(r.contains(t));
          CHECK_FALSE(r.contains(v->sum));
        } else {
          // independent triple loop over member tuples
          auto members = r.member_tuples();
          bool found = false;
          if (m == 3) {
            for (const auto& a : members)
              for (const auto& b : members)
                for (const auto& c : members) {
                  Tuple s(r.arity());
                  bool boolean = true;
                  for (int i = 0; i < r.arity(); ++i) {
                    s[i] = a[i] - b[i] + c[i];
                    boolean = boolean && (s[i] == 0 || s[i] == 1);
                  }
                  if (boolean && !r.contains(s)) found = true;
                }
          }
          CHECK_FALSE(found);
        }
      }
    }
  }
}

TEST_CASE("alternating checks agree with the independent bounded search") {
  std::mt19937 rng(4321);
  for (int arity = 2; arity <= 4; ++arity) {
    for (int trial = 0; trial < 12; ++trial) {
      auto r = random_relation(rng, arity, "T");
      bool any_violation = false;
      for (int m : {1, 3, 5})
        if (preserved_by_alternating(r, m).has_value()) any_violation = true;
      CHECK(any_violation == bounded_alternating_search(r, 5).has_value());
    }
  }
}

TEST_CASE("weight spectra") {
  SUBCASE("NAE-3") {
    auto ws = weight_spectrum(nae3());
    CHECK(ws.is_symmetric);
    CHECK(ws.satisfying_weights == std::set<int>{1, 2});
  }
  SUBCASE("1-in-3") {
    auto ws = weight_spectrum(one_in_three());
    CHECK(ws.is_symmetric);
    CHECK(ws.satisfying_weights == std::set<int>{1});
  }
  SUBCASE("implication is not symmetric") {
    auto ws = weight_spectrum(implication());
    CHECK_FALSE(ws.is_symmetric);
    CHECK(ws.satisfying_weights == std::set<int>{0, 1, 2});
  }
  SUBCASE("symmetric relations are invariant under coordinate permutations") {
    std::mt19937 rng(888);
    for (int arity = 2; arity <= 6; ++arity) {
      for (int trial = 0; trial < 15; ++trial) {
        auto r = random_relation(rng, arity, "T");
        if (!weight_spectrum(r).is_symmetric) continue;
        std::vector<int> perm(arity);
        for (int i = 0; i < arity; ++i) perm[i] = i;
        do {
          for (std::uint32_t idx = 0; idx < r.table_size(); ++idx) {
            Tuple t = index_to_tuple(idx, arity);
            Tuple pt(arity);
            for (int i = 0; i < arity; ++i) pt[i] = t[perm[i]];
            CHECK(r.contains(t) == r.contains(pt));
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
}
