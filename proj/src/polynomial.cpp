#include "cspk/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace cspk {

std::string Ring::to_string() const {
  if (kind == Kind::Rationals) return "Q";
  return "Z/" + mod.q.str();
}

bool monomial_less(Monomial a, Monomial b) {
  int da = std::popcount(a), db = std::popcount(b);
  if (da != db) return da < db;
  // lexicographic on sorted index sets: compare lowest set bits first
  while (a != 0 && b != 0) {
    int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

std::uint32_t varmask_from_tuple(const Tuple& t) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i]) mask |= (1u << i);
  return mask;
}

MultilinearPolynomial::MultilinearPolynomial(Ring ring, int arity)
    : ring_(std::move(ring)), arity_(arity) {
  if (arity < 0) throw std::invalid_argument("polynomial arity must be >= 0");
}

int MultilinearPolynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : coeffs_) d = std::max(d, std::popcount(m));
  return d;
}

void MultilinearPolynomial::normalize_term(Monomial m) {
  auto it = coeffs_.find(m);
  if (it == coeffs_.end()) return;
  if (ring_.kind == Ring::Kind::Mod) {
    if (denominator(it->second) != 1)
      throw std::invalid_argument("non-integer coefficient in a Z/qZ polynomial");
    it->second = Rat(mod_canonical(numerator(it->second), ring_.mod.q));
  }
  if (it->second == 0) coeffs_.erase(it);
}

void MultilinearPolynomial::add_term(Monomial m, const Rat& coeff) {
  if (m >= (1u << arity_)) throw std::invalid_argument("monomial outside polynomial arity");
  coeffs_[m] += coeff;
  normalize_term(m);
}

void MultilinearPolynomial::set_coeff(Monomial m, const Rat& coeff) {
  if (m >= (1u << arity_)) throw std::invalid_argument("monomial outside polynomial arity");
  coeffs_[m] = coeff;
  normalize_term(m);
}

Rat MultilinearPolynomial::coeff(Monomial m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

MultilinearPolynomial MultilinearPolynomial::operator+(const MultilinearPolynomial& rhs) const {
  if (!(ring_ == rhs.ring_) || arity_ != rhs.arity_)
    throw std::invalid_argument("polynomial ring/arity mismatch");
  MultilinearPolynomial out = *this;
  for (const auto& [m, c] : rhs.coeffs_) out.add_term(m, c);
  return out;
}

MultilinearPolynomial MultilinearPolynomial::operator*(const MultilinearPolynomial& rhs) const {
  if (!(ring_ == rhs.ring_) || arity_ != rhs.arity_)
    throw std::invalid_argument("polynomial ring/arity mismatch");
  MultilinearPolynomial out(ring_, arity_);
  for (const auto& [ma, ca] : coeffs_)
    for (const auto& [mb, cb] : rhs.coeffs_) out.add_term(ma | mb, ca * cb);
  return out;
}

MultilinearPolynomial MultilinearPolynomial::scaled(const Rat& f) const {
  MultilinearPolynomial out(ring_, arity_);
  for (const auto& [m, c] : coeffs_) out.add_term(m, c * f);
  return out;
}

Rat MultilinearPolynomial::evaluate(const Tuple& point) const {
  if (static_cast<int>(point.size()) != arity_)
    throw std::invalid_argument("evaluation point arity mismatch");
  std::uint32_t pm = varmask_from_tuple(point);
  Rat acc = 0;
  for (const auto& [m, c] : coeffs_)
    if ((m & ~pm) == 0) acc += c;
  if (ring_.kind == Ring::Kind::Mod) return Rat(mod_canonical(numerator(acc), ring_.mod.q));
  return acc;
}

bool MultilinearPolynomial::is_zero_at(const Tuple& point) const {
  return evaluate(point) == 0;
}

MultilinearPolynomial MultilinearPolynomial::constant(Ring ring, int arity, const Rat& c) {
  MultilinearPolynomial p(std::move(ring), arity);
  p.add_term(0, c);
  return p;
}

MultilinearPolynomial MultilinearPolynomial::variable(Ring ring, int arity, int var) {
  if (var < 1 || var > arity) throw std::invalid_argument("variable index out of range");
  MultilinearPolynomial p(std::move(ring), arity);
  p.add_term(1u << (var - 1), 1);
  return p;
}

std::string MultilinearPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::vector<Monomial> order;
  for (const auto& [m, c] : coeffs_) order.push_back(m);
  std::sort(order.begin(), order.end(), monomial_less);

  std::ostringstream os;
  bool first = true;
  for (Monomial m : order) {
    Rat c = coeff(m);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rat ac = abs(c);
    bool need_coeff = (m == 0) || ac != 1;
    if (need_coeff) os << ac.str();
    bool need_star = need_coeff && m != 0;
    Monomial rest = m;
    while (rest) {
      int i = std::countr_zero(rest);
      os << (need_star ? "*" : "") << "x" << (i + 1);
      need_star = true;
      rest &= rest - 1;
    }
  }
  return os.str();
}

}  // namespace cspk
