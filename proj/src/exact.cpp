#include "cspk/exact.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cspk {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("IntMatrix: dimensions must be positive");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> init)
    : IntMatrix(init.size(), init.begin()->size()) {
  std::size_t i = 0;
  for (const auto& r : init) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    std::size_t j = 0;
    for (long long v : r) at(i, j++) = v;
    ++i;
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) throw std::invalid_argument("IntMatrix: no rows");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  IntVec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && at(i, j) != 0) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j);
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  return os.str();
}

IntVec mat_vec(const IntMatrix& a, const IntVec& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
  IntVec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a.at(i, j) * x[j];
  return out;
}

IntVec vec_mat(const IntVec& y, const IntMatrix& a) {
  if (y.size() != a.rows()) throw std::invalid_argument("vec_mat: dimension mismatch");
  IntVec out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += y[i] * a.at(i, j);
  }
  return out;
}

Int SnfResult::diag(std::size_t i) const {
  if (i < S.rows() && i < S.cols()) return S.at(i, i);
  return 0;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_canonical(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += abs(q);
  return r;
}

namespace {

// g = ax + by
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return abs(a);
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

Int mod_inverse(const Int& a, const Int& q) {
  Int x, y;
  Int g = ext_gcd(mod_canonical(a, q), q, x, y);
  if (g != 1) throw std::invalid_argument("mod_inverse: not a unit");
  return mod_canonical(x, q);
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int valuation(Int n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  n = abs(n);
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n < 1) throw std::invalid_argument("factorize: argument must be >= 1");
  std::vector<std::pair<Int, int>> out;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Int smallest_prime_power_not_dividing(const Int& x) {
  if (x == 0) throw std::invalid_argument("all prime powers divide zero");
  Int ax = abs(x);
  for (Int q = 2;; ++q) {
    auto f = factorize(q);
    if (f.size() != 1) continue;
    if (ax % q != 0) return q;
  }
}

PrimePowerModulus::PrimePowerModulus(const Int& modulus) {
  auto f = factorize(modulus);
  if (modulus < 2 || f.size() != 1)
    throw std::invalid_argument("modulus is not a prime power: " + modulus.str());
  p = f[0].first;
  k_exp = f[0].second;
  q = modulus;
}

PrimePowerModulus::PrimePowerModulus(const Int& prime, int exponent) {
  if (!is_prime(prime) || exponent < 1) throw std::invalid_argument("invalid prime power");
  p = prime;
  k_exp = exponent;
  q = 1;
  for (int i = 0; i < exponent; ++i) q *= prime;
}

namespace {

// Elementary-operation bookkeeping keeping S = M * A * N, M * M_inv = I,
// N * N_inv = I exact at every step.
struct SnfWork {
  IntMatrix S, M, N, M_inv, N_inv;

  explicit SnfWork(const IntMatrix& a)
      : S(a),
        M(IntMatrix::identity(a.rows())),
        N(IntMatrix::identity(a.cols())),
        M_inv(IntMatrix::identity(a.rows())),
        N_inv(IntMatrix::identity(a.cols())) {}

  void swap_rows(std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < S.cols(); ++j) std::swap(S.at(r1, j), S.at(r2, j));
    for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M.at(r1, j), M.at(r2, j));
    for (std::size_t i = 0; i < M_inv.rows(); ++i) std::swap(M_inv.at(i, r1), M_inv.at(i, r2));
  }

  void swap_cols(std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t i = 0; i < S.rows(); ++i) std::swap(S.at(i, c1), S.at(i, c2));
    for (std::size_t i = 0; i < N.rows(); ++i) std::swap(N.at(i, c1), N.at(i, c2));
    for (std::size_t j = 0; j < N_inv.cols(); ++j) std::swap(N_inv.at(c1, j), N_inv.at(c2, j));
  }

  // row r1 += c * row r2
  void add_row(std::size_t r1, std::size_t r2, const Int& c) {
    for (std::size_t j = 0; j < S.cols(); ++j) S.at(r1, j) += c * S.at(r2, j);
    for (std::size_t j = 0; j < M.cols(); ++j) M.at(r1, j) += c * M.at(r2, j);
    for (std::size_t i = 0; i < M_inv.rows(); ++i) M_inv.at(i, r2) -= c * M_inv.at(i, r1);
  }

  // col c1 += c * col c2
  void add_col(std::size_t c1, std::size_t c2, const Int& c) {
    for (std::size_t i = 0; i < S.rows(); ++i) S.at(i, c1) += c * S.at(i, c2);
    for (std::size_t i = 0; i < N.rows(); ++i) N.at(i, c1) += c * N.at(i, c2);
    for (std::size_t j = 0; j < N_inv.cols(); ++j) N_inv.at(c2, j) -= c * N_inv.at(c1, j);
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < S.cols(); ++j) S.at(r, j) = -S.at(r, j);
    for (std::size_t j = 0; j < M.cols(); ++j) M.at(r, j) = -M.at(r, j);
    for (std::size_t i = 0; i < M_inv.rows(); ++i) M_inv.at(i, r) = -M_inv.at(i, r);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  SnfWork w(a);
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t steps = std::min(m, n);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // pivot: smallest nonzero absolute value in the trailing block,
      // ties by lowest (row, col)
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& v = w.S.at(i, j);
          if (v == 0) continue;
          Int av = abs(v);
          if (!found || av < best) {
            found = true;
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (!found) return {w.S, w.M, w.N, w.M_inv, w.N_inv};  // trailing block zero

      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.S.at(i, t) == 0) continue;
        Int q = floor_div(w.S.at(i, t), w.S.at(t, t));
        if (q != 0) w.add_row(i, t, -q);
        if (w.S.at(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.S.at(t, j) == 0) continue;
        Int q = floor_div(w.S.at(t, j), w.S.at(t, t));
        if (q != 0) w.add_col(j, t, -q);
        if (w.S.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;  // remainders smaller than the pivot appeared

      // enforce d_t | every trailing entry
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j)
          if (w.S.at(i, j) % w.S.at(t, t) != 0) {
            w.add_row(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (w.S.at(t, t) < 0) w.negate_row(t);
  }
  return {w.S, w.M, w.N, w.M_inv, w.N_inv};
}

// y * rows = u over Z via the Smith form; particular solution with zero
// free coordinates.
std::optional<IntVec> row_span_solve_with_snf(const SnfResult& f, const IntVec& u) {
  const std::size_t m = f.M.rows(), n = f.N.rows();
  if (u.size() != n) throw std::invalid_argument("row_span_solve_with_snf: dimension mismatch");
  IntVec un = vec_mat(u, f.N);
  IntVec yp(m);
  for (std::size_t j = 0; j < n; ++j) {
    Int d = f.diag(j);
    if (d == 0) {
      if (un[j] != 0) return std::nullopt;
    } else {
      if (un[j] % d != 0) return std::nullopt;
      yp[j] = un[j] / d;
    }
  }
  return vec_mat(yp, f.M);
}

namespace {

IntMatrix with_leading_ones(const IntMatrix& rows) {
  IntMatrix ext(rows.rows(), rows.cols() + 1);
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    ext.at(i, 0) = 1;
    for (std::size_t j = 0; j < rows.cols(); ++j) ext.at(i, j + 1) = rows.at(i, j);
  }
  return ext;
}

}  // namespace

std::optional<IntVec> integer_affine_member(const IntMatrix& rows, const IntVec& u) {
  if (u.size() != rows.cols())
    throw std::invalid_argument("integer_affine_member: dimension mismatch");
  IntMatrix ext = with_leading_ones(rows);
  IntVec u_ext(u.size() + 1);
  u_ext[0] = 1;
  for (std::size_t j = 0; j < u.size(); ++j) u_ext[j + 1] = u[j];
  return row_span_solve_with_snf(smith_normal_form(ext), u_ext);
}

PrimePowerModulus find_separating_prime_power(const IntMatrix& rows, const IntVec& u) {
  if (u.size() != rows.cols())
    throw std::invalid_argument("find_separating_prime_power: dimension mismatch");
  return find_separating_prime_power_with_snf(smith_normal_form(rows), u);
}

PrimePowerModulus find_separating_prime_power_with_snf(const SnfResult& f, const IntVec& u) {
  if (u.size() != f.N.rows())
    throw std::invalid_argument("find_separating_prime_power_with_snf: dimension mismatch");
  IntVec un = vec_mat(u, f.N);

  std::optional<Int> best;
  auto offer = [&best](const Int& q) {
    if (!best || q < *best) best = q;
  };
  for (std::size_t j = 0; j < un.size(); ++j) {
    Int d = f.diag(j);
    if (d == 0) {
      if (un[j] != 0) offer(smallest_prime_power_not_dividing(un[j]));
    } else if (un[j] % d != 0) {
      for (const auto& [p, e] : factorize(d)) {
        if (valuation(un[j], p) < e) {
          Int q = 1;
          for (int i = 0; i < e; ++i) q *= p;
          offer(q);
        }
      }
    }
  }
  if (!best)
    throw std::invalid_argument("find_separating_prime_power: u lies in the integer span");
  return PrimePowerModulus(*best);
}

std::optional<IntVec> solve_mod_with_snf(const SnfResult& f, const IntVec& b,
                                         const PrimePowerModulus& pp) {
  const std::size_t m = f.M.rows(), n = f.N.rows();
  if (b.size() != m) throw std::invalid_argument("solve_mod_with_snf: dimension mismatch");
  const Int& q = pp.q;

  IntVec c = mat_vec(f.M, b);
  for (auto& v : c) v = mod_canonical(v, q);

  IntVec xp(n);
  const std::size_t diag_len = std::min(m, n);
  for (std::size_t i = 0; i < diag_len; ++i) {
    Int d = mod_canonical(f.diag(i), q);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    Int g = gcd(d, q);
    if (c[i] % g != 0) return std::nullopt;
    Int qg = q / g;
    xp[i] = mod_canonical((c[i] / g) * mod_inverse(d / g, qg), qg);
  }
  for (std::size_t i = diag_len; i < m; ++i)
    if (c[i] != 0) return std::nullopt;

  IntVec x = mat_vec(f.N, xp);
  for (auto& v : x) v = mod_canonical(v, q);
  return x;
}

std::optional<IntVec> solve_mod_prime_power(const IntMatrix& a, const IntVec& b,
                                            const PrimePowerModulus& q) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_mod_prime_power: dimension mismatch");
  return solve_mod_with_snf(smith_normal_form(a), b, q);
}

std::vector<std::size_t> rational_row_basis(const std::vector<RatVec>& rows) {
  std::vector<std::size_t> kept;
  // echelon basis: (pivot column, row with pivot normalized to 1)
  std::vector<std::pair<std::size_t, RatVec>> basis;

  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    RatVec r = rows[idx];
    for (const auto& [pc, br] : basis) {
      if (r[pc] == 0) continue;
      Rat f = r[pc];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * br[j];
    }
    std::size_t pivot = r.size();
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot == r.size()) continue;  // in the span of kept rows

    Rat f = r[pivot];
    for (auto& v : r) v /= f;
    // keep earlier basis rows reduced against the new pivot
    for (auto& [pc, br] : basis) {
      if (br[pivot] == 0) continue;
      Rat g = br[pivot];
      for (std::size_t j = 0; j < br.size(); ++j) br[j] -= g * r[j];
    }
    basis.emplace_back(pivot, std::move(r));
    kept.push_back(idx);
  }
  return kept;
}

std::vector<std::size_t> modq_row_basis(const std::vector<IntVec>& rows,
                                        const PrimePowerModulus& q) {
  std::vector<std::size_t> kept;
  std::vector<IntVec> kept_rows;
  std::optional<SnfResult> cached;  // Smith form of kept_rows transposed

  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    IntVec r(rows[idx].size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = mod_canonical(rows[idx][j], q.q);

    bool in_span;
    if (kept_rows.empty()) {
      in_span = std::all_of(r.begin(), r.end(), [](const Int& v) { return v == 0; });
    } else {
      in_span = solve_mod_with_snf(*cached, r, q).has_value();
    }
    if (in_span) continue;

    kept.push_back(idx);
    kept_rows.push_back(std::move(r));
    IntMatrix kt(kept_rows.front().size(), kept_rows.size());
    for (std::size_t c = 0; c < kept_rows.size(); ++c)
      for (std::size_t i = 0; i < kt.rows(); ++i) kt.at(i, c) = kept_rows[c][i];
    cached = smith_normal_form(kt);
  }
  return kept;
}

}  // namespace cspk
