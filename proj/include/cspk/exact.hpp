#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cspk {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Dense matrix of exact integers, row-major. Dimensions are fixed at
// construction and must be positive.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_identity() const;
  bool is_diagonal() const;

  std::string to_string() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

IntVec mat_vec(const IntMatrix& a, const IntVec& x);   // a * x (column vector)
IntVec vec_mat(const IntVec& y, const IntMatrix& a);   // y * a (row vector)

// S = M * A * N with M, N unimodular over Z, S diagonal with the
// divisibility chain d1 | d2 | ... and nonnegative diagonal entries.
struct SnfResult {
  IntMatrix S, M, N, M_inv, N_inv;

  Int diag(std::size_t i) const;  // 0 beyond the stored diagonal
};

// Deterministic: pivot is the smallest nonzero absolute value, ties broken
// by lowest (row, col).
SnfResult smith_normal_form(const IntMatrix& a);

struct PrimePowerModulus {
  Int p;
  int k_exp = 1;
  Int q;

  PrimePowerModulus() : p(2), k_exp(1), q(2) {}
  explicit PrimePowerModulus(const Int& modulus);  // validates q = p^k
  PrimePowerModulus(const Int& prime, int exponent);

  bool operator==(const PrimePowerModulus&) const = default;
};

// Integer helpers used across the exact pipelines.
Int floor_div(const Int& a, const Int& b);
Int mod_canonical(const Int& a, const Int& q);  // representative in [0, q)
Int mod_inverse(const Int& a, const Int& q);    // gcd(a, q) = 1 required
bool is_prime(const Int& n);                    // trial division
int valuation(Int n, const Int& p);             // largest e with p^e | n, n != 0
std::vector<std::pair<Int, int>> factorize(Int n);  // n >= 1, trial division
Int smallest_prime_power_not_dividing(const Int& x);  // x != 0

// Coefficients gamma with sum(gamma) = 1 and sum(gamma_i * row_i) = u,
// decided by membership of (1,u) in the integer row span of (1,row_i).
std::optional<IntVec> integer_affine_member(const IntMatrix& rows, const IntVec& u);

// y with y * rows = u over Z, given a precomputed Smith form of the rows.
std::optional<IntVec> row_span_solve_with_snf(const SnfResult& f, const IntVec& u);

// Smallest prime power q (per the diagonal case split on the Smith form)
// with u not in the row span of `rows` over Z/qZ. Requires u outside the
// integer row span.
PrimePowerModulus find_separating_prime_power(const IntMatrix& rows, const IntVec& u);
PrimePowerModulus find_separating_prime_power_with_snf(const SnfResult& f, const IntVec& u);

// Some x with A x = b (mod q), or nothing. The variant taking a
// precomputed Smith form lets callers amortize the reduction across many
// right-hand sides.
std::optional<IntVec> solve_mod_prime_power(const IntMatrix& a, const IntVec& b,
                                            const PrimePowerModulus& q);
std::optional<IntVec> solve_mod_with_snf(const SnfResult& f, const IntVec& b,
                                         const PrimePowerModulus& q);

// Greedy first-pass row selection: index kept iff the row is not in the
// span of previously kept rows. Returned indices are 0-based, increasing.
std::vector<std::size_t> rational_row_basis(const std::vector<RatVec>& rows);
std::vector<std::size_t> modq_row_basis(const std::vector<IntVec>& rows,
                                        const PrimePowerModulus& q);

}  // namespace cspk
