#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cspk/exact.hpp"
#include "cspk/polynomial.hpp"
#include "cspk/relation.hpp"

namespace cspk {

// Odd alternating sequence of member tuples whose signed sum is a 0/1
// tuple outside the relation.
struct UnbalancedWitness {
  Tuple target;                    // non-member hit by the sum
  std::vector<Tuple> members;      // rows carrying nonzero coefficients
  IntVec gamma;                    // sum(gamma) = 1, sum(gamma_i * members_i) = target
  std::vector<Tuple> alternating;  // expanded +1/-1 sequence, odd length
};

struct CaptureEntry {
  std::uint32_t u_index = 0;  // non-member tuple index
  Ring ring;
  MultilinearPolynomial polynomial;

  CaptureEntry(std::uint32_t u, Ring r, MultilinearPolynomial p)
      : u_index(u), ring(std::move(r)), polynomial(std::move(p)) {}
};

struct CaptureCertificate {
  std::string relation;
  int arity = 0;
  std::vector<CaptureEntry> entries;  // one per non-member, ascending index
};

struct BalanceResult {
  bool balanced = false;
  std::optional<CaptureCertificate> certificate;  // set when balanced
  std::optional<UnbalancedWitness> witness;       // set when unbalanced
};

// Degree-1 captures over Z/q_uZ for every non-member, or the first (in
// tuple order) integer affine witness, converted to alternating form.
BalanceResult decide_balanced(const BooleanRelation& r);

// Expands integer coefficients with sum 1 into the odd +1/-1 sequence of
// length sum(|gamma_i|) realizing the same signed sum.
std::vector<Tuple> witness_to_alternating(const IntVec& gamma, const std::vector<Tuple>& tuples);

// Degree-(k-1) rational capture for |R| < 2^k - 1, built by the recursive
// product construction. Deterministic: w is the smallest non-member
// different from u, the shared coordinate is the smallest index.
MultilinearPolynomial degree_km1_capture(const BooleanRelation& r, const Tuple& u);

// Smallest d <= d_max such that the linear system p(r)=0 for r in R,
// p(u)=1 is solvable over Q on degree-<=d monomials.
std::optional<MultilinearPolynomial> min_degree_capture(const BooleanRelation& r, const Tuple& u,
                                                        int d_max);

// Degree-<=d capture over Z/qZ: solves the stacked member/u system for
// every nonzero target value until one is feasible.
std::optional<MultilinearPolynomial> find_capture_modq(const BooleanRelation& r, const Tuple& u,
                                                       int degree, const PrimePowerModulus& q);

// Both capture conditions, checked by evaluating at all 2^k points.
bool verify_capture(const BooleanRelation& r, const Tuple& u, const MultilinearPolynomial& p);

}  // namespace cspk
