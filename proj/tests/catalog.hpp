#pragma once

// Shared relation zoo for the test suites.

#include <random>

#include "cspk/relation.hpp"

namespace cspk::testing {

inline BooleanRelation one_in_three() {
  return BooleanRelation::from_tuples("R1IN3", 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

inline BooleanRelation nae3() {
  return BooleanRelation::from_tuples(
      "NAE3", 3, {{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}});
}

inline BooleanRelation or2() { return kor(2).renamed("OR2"); }

// 2-OR with the unique falsifying assignment moved to u
inline BooleanRelation or2_variant(const Tuple& u) {
  BooleanRelation r("OR2V" + tuple_to_string(u), 2);
  for (std::uint32_t i = 0; i < 4; ++i)
    if (i != tuple_to_index(u)) r.insert_index(i);
  return r;
}

inline BooleanRelation eq2() {
  return BooleanRelation::from_tuples("EQ2", 2, {{0, 0}, {1, 1}});
}

inline BooleanRelation implication() {
  return BooleanRelation::from_tuples("IMPL", 2, {{0, 0}, {0, 1}, {1, 1}});
}

inline BooleanRelation random_relation(std::mt19937& rng, int arity, const std::string& name) {
  BooleanRelation r(name, arity);
  std::uniform_int_distribution<int> bit(0, 1);
  for (std::uint32_t i = 0; i < r.table_size(); ++i)
    if (bit(rng)) r.insert_index(i);
  return r;
}

inline BooleanRelation symmetric_relation(int arity, const std::set<int>& weights,
                                          const std::string& name) {
  BooleanRelation r(name, arity);
  for (std::uint32_t i = 0; i < r.table_size(); ++i) {
    int w = 0;
    for (int c = 0; c < arity; ++c) w += (i >> c) & 1u;
    if (weights.count(w)) r.insert_index(i);
  }
  return r;
}

}  // namespace cspk::testing
