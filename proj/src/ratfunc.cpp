#include "cavity/ratfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace cavity {

UniPoly::UniPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::from_param_poly(const Poly& p) {
  std::vector<Rational> c;
  for (const auto& [m, coeff] : p.terms()) {
    if (m.x != 0 || m.y != 0) throw std::invalid_argument("UniPoly: polynomial depends on v1/v2");
    if (static_cast<int>(c.size()) <= m.a) c.resize(m.a + 1);
    c[m.a] += coeff;
  }
  return UniPoly(std::move(c));
}

Poly UniPoly::to_param_poly() const {
  Poly p;
  for (std::size_t k = 0; k < c_.size(); ++k) p += Poly::term(c_[k], 0, 0, static_cast<int>(k));
  return p;
}

Rational UniPoly::eval(const Rational& a) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + *it;
  return acc;
}

UniPoly operator+(const UniPoly& lhs, const UniPoly& rhs) {
  std::vector<Rational> c(std::max(lhs.c_.size(), rhs.c_.size()));
  for (std::size_t i = 0; i < lhs.c_.size(); ++i) c[i] += lhs.c_[i];
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c[i] += rhs.c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& lhs, const UniPoly& rhs) { return lhs + rhs * Rational(-1); }

UniPoly operator*(const UniPoly& lhs, const UniPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return UniPoly();
  std::vector<Rational> c(lhs.c_.size() + rhs.c_.size() - 1);
  for (std::size_t i = 0; i < lhs.c_.size(); ++i)
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) c[i + j] += lhs.c_[i] * rhs.c_[j];
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& lhs, const Rational& s) {
  std::vector<Rational> c = lhs.c_;
  for (auto& v : c) v *= s;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

std::string UniPoly::to_string(std::string_view var) const {
  return to_param_poly().to_string("x", "y", var);
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw std::domain_error("UniPoly division by zero");
  std::vector<Rational> rem = num.coefficients();
  const auto& d = den.coefficients();
  if (rem.size() < d.size()) return {UniPoly(), num};
  std::vector<Rational> quot(rem.size() - d.size() + 1);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational q = rem[k + d.size() - 1] / d.back();
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] -= q * d[j];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(UniPoly lhs, UniPoly rhs) {
  while (!rhs.is_zero()) {
    auto r = divmod(lhs, rhs).second;
    lhs = std::move(rhs);
    rhs = std::move(r);
  }
  return lhs.monic();
}

RatFunc::RatFunc(UniPoly num, UniPoly den) {
  if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  if (num.is_zero()) {
    num_ = UniPoly();
    den_ = UniPoly(Rational(1));
    return;
  }
  const UniPoly g = gcd(num, den);
  num_ = divmod(num, g).first;
  den_ = divmod(den, g).first;
  const Rational lead = den_.leading();
  num_ = num_ * (Rational(1) / lead);
  den_ = den_ * (Rational(1) / lead);
}

RatFunc operator+(const RatFunc& l, const RatFunc& r) {
  return RatFunc(l.num_ * r.den_ + r.num_ * l.den_, l.den_ * r.den_);
}

RatFunc operator-(const RatFunc& l, const RatFunc& r) {
  return RatFunc(l.num_ * r.den_ - r.num_ * l.den_, l.den_ * r.den_);
}

RatFunc operator*(const RatFunc& l, const RatFunc& r) {
  return RatFunc(l.num_ * r.num_, l.den_ * r.den_);
}

RatFunc operator/(const RatFunc& l, const RatFunc& r) {
  if (r.is_zero()) throw std::domain_error("RatFunc division by zero");
  return RatFunc(l.num_ * r.den_, l.den_ * r.num_);
}

}  // namespace cavity
