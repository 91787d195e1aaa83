#pragma once

#include "cavity/polynomial.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cavity {

/// Dense univariate polynomial with rational coefficients, lowest degree first.
/// Used for coefficients that depend on the symbolic parameter a.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);
  explicit UniPoly(const Rational& constant) : UniPoly(std::vector<Rational>{constant}) {}

  /// Reads an a-only Poly (no v1/v2 dependence) as a polynomial in a.
  static UniPoly from_param_poly(const Poly& p);
  Poly to_param_poly() const;

  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }
  Rational eval(const Rational& a) const;

  friend UniPoly operator+(const UniPoly& lhs, const UniPoly& rhs);
  friend UniPoly operator-(const UniPoly& lhs, const UniPoly& rhs);
  friend UniPoly operator*(const UniPoly& lhs, const UniPoly& rhs);
  friend UniPoly operator*(const UniPoly& lhs, const Rational& c);
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  UniPoly monic() const;
  std::string to_string(std::string_view var = "a") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den);
/// Monic greatest common divisor (zero if both are zero).
UniPoly gcd(UniPoly lhs, UniPoly rhs);

/// Element of Q(a), kept reduced with a monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  explicit RatFunc(UniPoly num, UniPoly den = UniPoly(Rational(1)));

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& l, const RatFunc& r);
  friend RatFunc operator-(const RatFunc& l, const RatFunc& r);
  friend RatFunc operator*(const RatFunc& l, const RatFunc& r);
  friend RatFunc operator/(const RatFunc& l, const RatFunc& r);

 private:
  UniPoly num_;
  UniPoly den_;
};

}  // namespace cavity
