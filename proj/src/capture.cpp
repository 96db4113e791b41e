#include "cspk/capture.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cspk {

namespace {

std::vector<Monomial> monomials_up_to_degree(int arity, int degree) {
  std::vector<Monomial> out;
  for (Monomial m = 0; m < (1u << arity); ++m)
    if (std::popcount(m) <= degree) out.push_back(m);
  std::sort(out.begin(), out.end(), monomial_less);
  return out;
}

int eval_monomial(Monomial m, std::uint32_t varmask) { return (m & ~varmask) == 0 ? 1 : 0; }

}  // namespace

std::vector<Tuple> witness_to_alternating(const IntVec& gamma, const std::vector<Tuple>& tuples) {
  if (gamma.size() != tuples.size())
    throw std::invalid_argument("witness_to_alternating: size mismatch");
  Int total = 0;
  for (const Int& g : gamma) total += g;
  if (total != 1) throw std::invalid_argument("witness_to_alternating: coefficients must sum to 1");

  std::vector<Tuple> plus, minus;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    for (Int c = 0; c < abs(gamma[i]); ++c)
      (gamma[i] > 0 ? plus : minus).push_back(tuples[i]);
  }
  std::vector<Tuple> seq;
  seq.reserve(plus.size() + minus.size());
  for (std::size_t i = 0; i < plus.size(); ++i) {
    seq.push_back(plus[i]);
    if (i < minus.size()) seq.push_back(minus[i]);
  }
  return seq;
}

std::optional<MultilinearPolynomial> find_capture_modq(const BooleanRelation& r, const Tuple& u,
                                                       int degree, const PrimePowerModulus& q) {
  if (r.contains(u)) throw std::invalid_argument("find_capture_modq: u must be a non-member");
  const int k = r.arity();
  const auto monomials = monomials_up_to_degree(k, degree);
  const auto members = r.member_tuples();

  IntMatrix a(members.size() + 1, monomials.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::uint32_t vm = varmask_from_tuple(members[i]);
    for (std::size_t j = 0; j < monomials.size(); ++j) a.at(i, j) = eval_monomial(monomials[j], vm);
  }
  std::uint32_t uvm = varmask_from_tuple(u);
  for (std::size_t j = 0; j < monomials.size(); ++j)
    a.at(members.size(), j) = eval_monomial(monomials[j], uvm);

  SnfResult f = smith_normal_form(a);
  for (Int c = 1; c < q.q; ++c) {
    IntVec b(members.size() + 1, Int(0));
    b.back() = c;
    if (auto x = solve_mod_with_snf(f, b, q)) {
      MultilinearPolynomial p(Ring::modulo(q), k);
      for (std::size_t j = 0; j < monomials.size(); ++j)
        if ((*x)[j] != 0) p.set_coeff(monomials[j], Rat((*x)[j]));
      return p;
    }
  }
  return std::nullopt;
}

BalanceResult decide_balanced(const BooleanRelation& r) {
  const int k = r.arity();
  const auto members = r.member_tuples();
  const auto nonmembers = r.nonmember_indices();

  // one reduction of the leading-one-extended member matrix serves both
  // the integer span tests and the prime-power selection
  std::optional<SnfResult> ext_snf;
  if (!members.empty()) {
    IntMatrix ext(members.size(), k + 1);
    for (std::size_t i = 0; i < members.size(); ++i) {
      ext.at(i, 0) = 1;
      for (int j = 0; j < k; ++j) ext.at(i, j + 1) = members[i][j];
    }
    ext_snf = smith_normal_form(ext);
  }
  auto extend = [k](const Tuple& u) {
    IntVec u_ext(k + 1);
    u_ext[0] = 1;
    for (int j = 0; j < k; ++j) u_ext[j + 1] = u[j];
    return u_ext;
  };

  if (ext_snf) {
    for (std::uint32_t ui : nonmembers) {
      Tuple u = index_to_tuple(ui, k);
      auto y = row_span_solve_with_snf(*ext_snf, extend(u));
      if (!y) continue;
      UnbalancedWitness w;
      w.target = u;
      for (std::size_t i = 0; i < y->size(); ++i) {
        if ((*y)[i] == 0) continue;
        w.members.push_back(members[i]);
        w.gamma.push_back((*y)[i]);
      }
      w.alternating = witness_to_alternating(w.gamma, w.members);
      BalanceResult res;
      res.balanced = false;
      res.witness = std::move(w);
      return res;
    }
  }

  CaptureCertificate cert;
  cert.relation = r.name();
  cert.arity = k;
  for (std::uint32_t ui : nonmembers) {
    Tuple u = index_to_tuple(ui, k);
    PrimePowerModulus q = ext_snf ? find_separating_prime_power_with_snf(*ext_snf, extend(u))
                                  : PrimePowerModulus(Int(2), 1);
    auto p = find_capture_modq(r, u, 1, q);
    if (!p || !verify_capture(r, u, *p))
      throw std::logic_error("degree-1 capture construction failed for " + r.name());
    cert.entries.emplace_back(ui, Ring::modulo(q), std::move(*p));
  }
  BalanceResult res;
  res.balanced = true;
  res.certificate = std::move(cert);
  return res;
}

namespace {

// Restriction of a membership table to coordinate `coord` (1-based) fixed
// at `value`; the coordinate is removed.
std::vector<bool> restrict_table(const std::vector<bool>& members, int k, int coord, int value) {
  std::vector<bool> out(std::size_t{1} << (k - 1));
  const std::uint32_t low_bits = k - coord;  // coordinates coord+1..k
  for (std::uint32_t idx = 0; idx < out.size(); ++idx) {
    std::uint32_t high = idx >> low_bits;
    std::uint32_t low = idx & ((1u << low_bits) - 1);
    std::uint32_t full = (high << (low_bits + 1)) | (static_cast<std::uint32_t>(value) << low_bits) | low;
    out[idx] = members[full];
  }
  return out;
}

// Re-embeds a polynomial over k-1 variables into k variables, skipping
// the removed coordinate.
MultilinearPolynomial lift_polynomial(const MultilinearPolynomial& p, int k, int coord) {
  MultilinearPolynomial out(p.ring(), k);
  for (const auto& [m, c] : p.terms()) {
    Monomial lifted = 0;
    Monomial rest = m;
    while (rest) {
      int pos = std::countr_zero(rest);  // 0-based variable position in p
      int full = pos < coord - 1 ? pos : pos + 1;
      lifted |= (1u << full);
      rest &= rest - 1;
    }
    out.add_term(lifted, c);
  }
  return out;
}

MultilinearPolynomial km1_recurse(int k, const std::vector<bool>& members, std::uint32_t ui) {
  const Ring ring = Ring::rationals();
  if (k == 1) {
    // |R| < 2^1 - 1 forces the empty relation
    return MultilinearPolynomial::constant(ring, 1, 1);
  }
  std::uint32_t wi = 0;
  bool found = false;
  for (std::uint32_t i = 0; i < members.size(); ++i)
    if (!members[i] && i != ui) {
      wi = i;
      found = true;
      break;
    }
  if (!found) throw std::logic_error("km1_recurse: no second non-member");

  Tuple u = index_to_tuple(ui, k);
  Tuple w = index_to_tuple(wi, k);
  int shared = 0;
  for (int i = 1; i <= k; ++i)
    if (u[i - 1] == w[i - 1]) {
      shared = i;
      break;
    }

  if (shared == 0) {
    // u and w disagree everywhere: p = prod_{i=1}^{k-1} (i - sum_j r_j(x_j))
    // with r_j(x) = x when u_j = 0 and 1 - x otherwise
    MultilinearPolynomial s(ring, k);
    for (int j = 1; j <= k; ++j) {
      if (u[j - 1] == 0) {
        s.add_term(1u << (j - 1), 1);
      } else {
        s.add_term(0, 1);
        s.add_term(1u << (j - 1), -1);
      }
    }
    MultilinearPolynomial p = MultilinearPolynomial::constant(ring, k, 1);
    for (int i = 1; i <= k - 1; ++i)
      p = p * (MultilinearPolynomial::constant(ring, k, i) + s.scaled(-1));
    return p;
  }

  const int b = u[shared - 1];
  auto sub_members = restrict_table(members, k, shared, b);
  const std::uint32_t low_bits = k - shared;
  std::uint32_t sub_u = ((ui >> (low_bits + 1)) << low_bits) | (ui & ((1u << low_bits) - 1));
  MultilinearPolynomial sub = km1_recurse(k - 1, sub_members, sub_u);
  MultilinearPolynomial factor(ring, k);
  factor.add_term(0, 1 - b);
  factor.add_term(1u << (shared - 1), -1);
  return factor * lift_polynomial(sub, k, shared);
}

}  // namespace

MultilinearPolynomial degree_km1_capture(const BooleanRelation& r, const Tuple& u) {
  if (r.contains(u)) throw std::invalid_argument("degree_km1_capture: u must be a non-member");
  if (r.size() >= r.table_size() - 1)
    throw std::invalid_argument("degree_km1_capture requires |R| < 2^k - 1");
  std::vector<bool> members(r.table_size());
  for (auto i : r.member_indices()) members[i] = true;
  return km1_recurse(r.arity(), members, tuple_to_index(u));
}

namespace {

// Gauss-Jordan over Q; particular solution with free variables at zero.
std::optional<RatVec> solve_rational(std::vector<RatVec> rows, RatVec b) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  for (std::size_t i = 0; i < m; ++i) rows[i].push_back(b[i]);

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t sel = m;
    for (std::size_t i = rank; i < m; ++i)
      if (rows[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel == m) continue;
    std::swap(rows[rank], rows[sel]);
    Rat f = rows[rank][col];
    for (auto& v : rows[rank]) v /= f;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      Rat g = rows[i][col];
      for (std::size_t j = col; j <= n; ++j) rows[i][j] -= g * rows[rank][j];
    }
    pivots.emplace_back(rank, col);
    ++rank;
  }
  for (std::size_t i = rank; i < m; ++i)
    if (rows[i][n] != 0) return std::nullopt;

  RatVec x(n, Rat(0));
  for (const auto& [pr, pc] : pivots) x[pc] = rows[pr][n];
  return x;
}

}  // namespace

std::optional<MultilinearPolynomial> min_degree_capture(const BooleanRelation& r, const Tuple& u,
                                                        int d_max) {
  if (r.contains(u)) throw std::invalid_argument("min_degree_capture: u must be a non-member");
  const int k = r.arity();
  const auto members = r.member_tuples();

  for (int d = 0; d <= d_max; ++d) {
    auto monomials = monomials_up_to_degree(k, d);
    std::vector<RatVec> rows;
    RatVec b;
    for (const auto& t : members) {
      std::uint32_t vm = varmask_from_tuple(t);
      RatVec row(monomials.size());
      for (std::size_t j = 0; j < monomials.size(); ++j) row[j] = eval_monomial(monomials[j], vm);
      rows.push_back(std::move(row));
      b.push_back(0);
    }
    {
      std::uint32_t vm = varmask_from_tuple(u);
      RatVec row(monomials.size());
      for (std::size_t j = 0; j < monomials.size(); ++j) row[j] = eval_monomial(monomials[j], vm);
      rows.push_back(std::move(row));
      b.push_back(1);
    }
    if (auto x = solve_rational(std::move(rows), std::move(b))) {
      MultilinearPolynomial p(Ring::rationals(), k);
      for (std::size_t j = 0; j < monomials.size(); ++j)
        if ((*x)[j] != 0) p.set_coeff(monomials[j], (*x)[j]);
      return p;
    }
  }
  return std::nullopt;
}

bool verify_capture(const BooleanRelation& r, const Tuple& u, const MultilinearPolynomial& p) {
  if (p.arity() != r.arity() || static_cast<int>(u.size()) != r.arity())
    throw std::invalid_argument("verify_capture: arity mismatch");
  for (std::uint32_t i = 0; i < r.table_size(); ++i) {
    Tuple t = index_to_tuple(i, r.arity());
    if (r.contains_index(i)) {
      if (!p.is_zero_at(t)) return false;
    } else if (i == tuple_to_index(u)) {
      if (p.is_zero_at(t)) return false;
    }
  }
  return true;
}

}  // namespace cspk
