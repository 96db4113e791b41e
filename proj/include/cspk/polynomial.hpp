#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cspk/exact.hpp"
#include "cspk/relation.hpp"

namespace cspk {

struct Ring {
  enum class Kind { Rationals, Mod };
  Kind kind = Kind::Rationals;
  PrimePowerModulus mod;  // meaningful when kind == Mod

  static Ring rationals() { return Ring{}; }
  static Ring modulo(PrimePowerModulus q) { return Ring{Kind::Mod, std::move(q)}; }

  bool operator==(const Ring&) const = default;
  std::string to_string() const;
};

// Monomial over variables x_1..x_k as a bit mask; bit i-1 stands for x_i.
using Monomial = std::uint32_t;

// (degree, lexicographic on sorted variable index sets), constant first
bool monomial_less(Monomial a, Monomial b);

std::uint32_t varmask_from_tuple(const Tuple& t);

// Multilinear polynomial in normal form. Coefficients are kept exact;
// under a Mod ring they are canonical representatives in [0, q), and zero
// coefficients are dropped in both rings.
class MultilinearPolynomial {
 public:
  MultilinearPolynomial(Ring ring, int arity);

  const Ring& ring() const { return ring_; }
  int arity() const { return arity_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const;

  void add_term(Monomial m, const Rat& coeff);
  void set_coeff(Monomial m, const Rat& coeff);
  Rat coeff(Monomial m) const;
  const std::map<Monomial, Rat>& terms() const { return coeffs_; }

  MultilinearPolynomial operator+(const MultilinearPolynomial& rhs) const;
  MultilinearPolynomial operator*(const MultilinearPolynomial& rhs) const;  // x^2 = x
  MultilinearPolynomial scaled(const Rat& f) const;

  // Evaluation at a 0/1 point; nonzero is decided in the ring.
  Rat evaluate(const Tuple& point) const;
  bool is_zero_at(const Tuple& point) const;

  static MultilinearPolynomial constant(Ring ring, int arity, const Rat& c);
  static MultilinearPolynomial variable(Ring ring, int arity, int var);  // 1-based

  std::string to_string() const;

 private:
  void normalize_term(Monomial m);

  Ring ring_;
  int arity_;
  std::map<Monomial, Rat> coeffs_;
};

}  // namespace cspk
