#include <doctest.h>

#include <algorithm>
#include <random>

#include "cspk/exact.hpp"

using namespace cspk;

namespace {

void check_snf_invariants(const IntMatrix& a, const SnfResult& f) {
  CHECK(f.M * a * f.N == f.S);
  CHECK((f.M * f.M_inv).is_identity());
  CHECK((f.N * f.N_inv).is_identity());
  CHECK(f.S.is_diagonal());
  const std::size_t d = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < d; ++i) CHECK(f.diag(i) >= 0);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (f.diag(i) == 0) CHECK(f.diag(i + 1) == 0);
    else CHECK(f.diag(i + 1) % f.diag(i) == 0);
  }
}

// Independent oracle: exhaustive coefficient search over (Z/qZ)^m for row
// span membership.
bool in_span_modq_exhaustive(const std::vector<IntVec>& rows, const IntVec& u, const Int& q) {
  const std::size_t m = rows.size(), n = u.size();
  std::vector<Int> coeff(m, 0);
  for (;;) {
    bool match = true;
    for (std::size_t j = 0; j < n && match; ++j) {
      Int s = 0;
      for (std::size_t i = 0; i < m; ++i) s += coeff[i] * rows[i][j];
      if (mod_canonical(s - u[j], q) != 0) match = false;
    }
    if (match) return true;
    std::size_t pos = 0;
    while (pos < m && coeff[pos] + 1 == q) coeff[pos++] = 0;
    if (pos == m) return false;
    ++coeff[pos];
  }
}

// Independent rational solver for the row-combination certificates.
std::optional<RatVec> solve_rational_oracle(std::vector<RatVec> rows, RatVec rhs) {
  // solves x * rows = rhs by elimination on the transpose
  const std::size_t m = rows.size();
  if (m == 0) {
    for (const auto& v : rhs)
      if (v != 0) return std::nullopt;
    return RatVec{};
  }
  const std::size_t n = rhs.size();
  std::vector<RatVec> aug(n, RatVec(m + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) aug[j][i] = rows[i][j];
    aug[j][m] = rhs[j];
  }
  std::size_t rank = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t col = 0; col < m && rank < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = rank; i < n; ++i)
      if (aug[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel == n) continue;
    std::swap(aug[rank], aug[sel]);
    Rat f = aug[rank][col];
    for (auto& v : aug[rank]) v /= f;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == rank || aug[i][col] == 0) continue;
      Rat g = aug[i][col];
      for (std::size_t jj = 0; jj <= m; ++jj) aug[i][jj] -= g * aug[rank][jj];
    }
    pivots.emplace_back(rank, col);
    ++rank;
  }
  for (std::size_t i = rank; i < n; ++i)
    if (aug[i][m] != 0) return std::nullopt;
  RatVec x(m, Rat(0));
  for (auto [pr, pc] : pivots) x[pc] = aug[pr][m];
  return x;
}

}  // namespace

TEST_CASE("smith normal form on small fixed matrices") {
  SUBCASE("identity") {
    IntMatrix a = IntMatrix::identity(2);
    auto f = smith_normal_form(a);
    CHECK(f.S.is_identity());
    CHECK(f.M.is_identity());
    CHECK(f.N.is_identity());
    check_snf_invariants(a, f);
  }
  SUBCASE("diag(2,3) couples to diag(1,6)") {
    IntMatrix a{{2, 0}, {0, 3}};
    auto f = smith_normal_form(a);
    CHECK(f.diag(0) == 1);
    CHECK(f.diag(1) == 6);
    check_snf_invariants(a, f);
  }
  SUBCASE("zero matrix") {
    IntMatrix a(1, 3);
    auto f = smith_normal_form(a);
    for (std::size_t j = 0; j < 3; ++j) CHECK(f.S.at(0, j) == 0);
    check_snf_invariants(a, f);
  }
}

TEST_CASE("smith normal form invariants on random matrices") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dim(1, 5), entry(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
    check_snf_invariants(a, smith_normal_form(a));
  }
}

TEST_CASE("integer affine membership") {
  SUBCASE("alternating OR2 witness coefficients") {
    IntMatrix rows{{0, 1}, {1, 1}, {1, 0}};
    auto gamma = integer_affine_member(rows, IntVec{0, 0});
    REQUIRE(gamma.has_value());
    CHECK(*gamma == IntVec{1, -1, 1});
  }
  SUBCASE("weight obstruction for 1-in-3 rows") {
    IntMatrix rows{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK_FALSE(integer_affine_member(rows, IntVec{1, 1, 0}).has_value());
    // bounded oracle: no gamma in [-4,4]^3 with sum 1 reaches (1,1,0)
    for (int g1 = -4; g1 <= 4; ++g1)
      for (int g2 = -4; g2 <= 4; ++g2) {
        int g3 = 1 - g1 - g2;
        CHECK((g1 != 1 || g2 != 1 || g3 != 0));
      }
  }
  SUBCASE("single row reproduces itself") {
    IntMatrix rows{{1, 0, 1}};
    auto gamma = integer_affine_member(rows, IntVec{1, 0, 1});
    REQUIRE(gamma.has_value());
    CHECK(*gamma == IntVec{1});
  }
  SUBCASE("returned coefficients replay exactly") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(0, 1), dim(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t m = dim(rng), n = dim(rng);
      IntMatrix rows(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) rows.at(i, j) = entry(rng);
      IntVec u(n);
      for (auto& v : u) v = entry(rng);
      if (auto gamma = integer_affine_member(rows, u)) {
        Int sum = 0;
        for (const auto& g : *gamma) sum += g;
        CHECK(sum == 1);
        for (std::size_t j = 0; j < n; ++j) {
          Int s = 0;
          for (std::size_t i = 0; i < m; ++i) s += (*gamma)[i] * rows.at(i, j);
          CHECK(s == u[j]);
        }
      }
    }
  }
}

TEST_CASE("separating prime powers") {
  auto verify = [](const IntMatrix& rows, const IntVec& u, const Int& expected) {
    auto q = find_separating_prime_power(rows, u);
    CHECK(q.q == expected);
    std::vector<IntVec> rv;
    for (std::size_t i = 0; i < rows.rows(); ++i) rv.push_back(rows.row(i));
    CHECK_FALSE(in_span_modq_exhaustive(rv, u, q.q));
  };
  verify(IntMatrix{{1, 0, 2}}, IntVec{1, 0, 1}, 2);
  verify(IntMatrix{{1, 2}}, IntVec{1, 1}, 2);
  verify(IntMatrix{{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}}, IntVec{1, 1, 1, 1}, 3);

  SUBCASE("rejects vectors inside the integer span") {
    IntMatrix rows{{1, 0}, {0, 1}};
    CHECK_THROWS_AS(find_separating_prime_power(rows, IntVec{3, 5}), std::invalid_argument);
  }
}

TEST_CASE("solving modulo prime powers") {
  SUBCASE("2x = 2 (mod 4)") {
    auto x = solve_mod_prime_power(IntMatrix{{2}}, IntVec{2}, PrimePowerModulus(Int(4)));
    REQUIRE(x.has_value());
    CHECK(mod_canonical(2 * (*x)[0] - 2, 4) == 0);
  }
  SUBCASE("2x = 1 (mod 4) has no solution") {
    CHECK_FALSE(solve_mod_prime_power(IntMatrix{{2}}, IntVec{1}, PrimePowerModulus(Int(4))));
  }
  SUBCASE("2x2 system mod 4") {
    IntMatrix a{{1, 1}, {0, 2}};
    auto x = solve_mod_prime_power(a, IntVec{0, 2}, PrimePowerModulus(Int(4)));
    REQUIRE(x.has_value());
    CHECK(mod_canonical((*x)[0] + (*x)[1] - 0, 4) == 0);
    CHECK(mod_canonical(2 * (*x)[1] - 2, 4) == 0);
  }
  SUBCASE("agrees with exhaustive search on small systems") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> entry(0, 8), dim(1, 3);
    for (const Int q : {Int(2), Int(3), Int(4), Int(5), Int(8), Int(9)}) {
      PrimePowerModulus pp(q);
      for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = dim(rng), n = dim(rng);
        IntMatrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) a.at(i, j) = entry(rng);
        IntVec b(m);
        for (auto& v : b) v = entry(rng);

        auto x = solve_mod_prime_power(a, b, pp);
        // exhaustive over (Z/qZ)^n
        bool any = false;
        IntVec cand(n, 0);
        for (;;) {
          bool ok = true;
          for (std::size_t i = 0; i < m && ok; ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < n; ++j) s += a.at(i, j) * cand[j];
            if (mod_canonical(s - b[i], q) != 0) ok = false;
          }
          if (ok) {
            any = true;
            break;
          }
          std::size_t pos = 0;
          while (pos < n && cand[pos] + 1 == q) cand[pos++] = 0;
          if (pos == n) break;
          ++cand[pos];
        }
        CHECK(x.has_value() == any);
        if (x) {
          for (std::size_t i = 0; i < m; ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < n; ++j) s += a.at(i, j) * (*x)[j];
            CHECK(mod_canonical(s - b[i], q) == 0);
          }
        }
      }
    }
  }
  SUBCASE("invalid modulus is rejected") {
    CHECK_THROWS_AS(PrimePowerModulus(Int(6)), std::invalid_argument);
    CHECK_THROWS_AS(PrimePowerModulus(Int(1)), std::invalid_argument);
  }
}

TEST_CASE("rational row basis") {
  SUBCASE("dependent middle row is dropped") {
    std::vector<RatVec> rows = {{1, 1}, {2, 2}, {0, 1}};
    CHECK(rational_row_basis(rows) == std::vector<std::size_t>{0, 2});
  }
  SUBCASE("all-zero rows keep nothing") {
    std::vector<RatVec> rows = {{0, 0, 0}, {0, 0, 0}};
    CHECK(rational_row_basis(rows).empty());
  }
  SUBCASE("four generic rows in three columns keep three") {
    std::vector<RatVec> rows = {{1, 2, 3}, {2, 3, 5}, {5, 7, 11}, {1, 0, 1}};
    CHECK(rational_row_basis(rows).size() == 3);
  }
  SUBCASE("discarded rows carry combination certificates") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<RatVec> rows(6, RatVec(3));
      for (auto& r : rows)
        for (auto& v : r) v = entry(rng);
      auto kept = rational_row_basis(rows);
      std::vector<RatVec> kept_rows;
      for (auto i : kept) kept_rows.push_back(rows[i]);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::find(kept.begin(), kept.end(), i) != kept.end()) continue;
        CHECK(solve_rational_oracle(kept_rows, rows[i]).has_value());
      }
    }
  }
}

TEST_CASE("mod-q row basis") {
  PrimePowerModulus q4(Int(4)), q3(Int(3)), q2(Int(2));
  SUBCASE("(0,1) is outside span_4{(0,2)}") {
    std::vector<IntVec> rows = {{0, 2}, {0, 1}};
    CHECK(modq_row_basis(rows, q4) == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("doubling mod 3 is redundant") {
    std::vector<IntVec> rows = {{1, 1}, {2, 2}, {1, 0}};
    CHECK(modq_row_basis(rows, q3) == std::vector<std::size_t>{0, 2});
  }
  SUBCASE("zero row keeps nothing") {
    std::vector<IntVec> rows = {{0, 0}};
    CHECK(modq_row_basis(rows, q2).empty());
  }
  SUBCASE("kept count obeys the module-length bound and discards are in span") {
    std::mt19937 rng(31337);
    for (const Int qv : {Int(2), Int(3), Int(4), Int(8), Int(9)}) {
      PrimePowerModulus q(qv);
      std::uniform_int_distribution<int> entry(0, static_cast<int>(qv) - 1);
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<IntVec> rows(10, IntVec(3));
        for (auto& r : rows)
          for (auto& v : r) v = entry(rng);
        auto kept = modq_row_basis(rows, q);
        CHECK(kept.size() <= static_cast<std::size_t>(q.k_exp) * 3);
        std::vector<IntVec> kept_rows;
        for (auto i : kept) kept_rows.push_back(rows[i]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (std::find(kept.begin(), kept.end(), i) != kept.end()) continue;
          CHECK(in_span_modq_exhaustive(kept_rows, rows[i], qv));
        }
      }
    }
  }
}
