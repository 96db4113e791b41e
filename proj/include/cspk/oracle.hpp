#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cspk/relation.hpp"
#include "cspk/sparsify.hpp"

namespace cspk {

// Desk-scale ground truth. Everything here evaluates relations straight
// off the membership bit sets and stays independent of the algebraic
// pipeline.

struct SatResult {
  bool satisfiable = false;
  std::optional<Tuple> witness;  // lexicographically first satisfying assignment
};

SatResult brute_force_satisfiable(const ConstraintLanguage& language, const CspInstance& instance);

struct EquivalenceVerdict {
  bool equivalent = false;
  std::optional<Tuple> counterexample;  // satisfies exactly one instance
  std::uint64_t assignments_checked = 0;
};

// Checks the full biconditional over all assignments, not just
// equisatisfiability.
EquivalenceVerdict check_equivalence(const ConstraintLanguage& language, const CspInstance& original,
                                     const CspInstance& kernel);

struct AlternatingWitness {
  std::vector<Tuple> sequence;  // odd length, alternating +/-
  Tuple target;                 // 0/1 sum outside the relation
};

// Exhaustive over all odd lengths m <= m_max and all member sequences
// (enumerated by sign multisets, which determine the sums).
std::optional<AlternatingWitness> bounded_alternating_search(const BooleanRelation& r, int m_max);

}  // namespace cspk
