#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cavity {

using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion of a finite double to a rational (binary fractions are exact).
Rational to_rational(double value);

/// Parses "p", "p/q" or a decimal literal such as "-0.25" exactly.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

std::string format_rational(const Rational& value);

/// Exponents of one monomial v1^x * v2^y * a^a. The third slot carries the
/// cavity length parameter when it is kept symbolic.
struct Monomial {
  int x = 0;
  int y = 0;
  int a = 0;

  int degree() const { return x + y + a; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order, highest degree first, then x, y, a descending.
struct GradedLex {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const {
    if (lhs.degree() != rhs.degree()) return lhs.degree() > rhs.degree();
    if (lhs.x != rhs.x) return lhs.x > rhs.x;
    if (lhs.y != rhs.y) return lhs.y > rhs.y;
    return lhs.a > rhs.a;
  }
};

enum class Var { V1, V2 };

/// Exact polynomial in two variables (v1, v2) with rational coefficients and
/// an optional symbolic length parameter a. Zero coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLex>;

  Poly() = default;
  explicit Poly(const Rational& constant);
  explicit Poly(int constant) : Poly(Rational(constant)) {}

  static Poly v1();
  static Poly v2();
  /// The symbolic cavity parameter a.
  static Poly param();
  static Poly term(const Rational& coefficient, int x, int y, int a = 0);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree counting all three slots; -1 for the zero polynomial.
  int degree() const;
  int degree_in(Var var) const;
  int param_degree() const;
  bool has_param() const { return param_degree() > 0; }
  Rational coefficient(const Monomial& m) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly lhs, const Rational& c) { return lhs *= c; }
  friend Poly operator*(const Rational& c, Poly rhs) { return rhs *= c; }
  friend Poly operator-(Poly p) { return p *= Rational(-1); }
  friend bool operator==(const Poly& lhs, const Poly& rhs) { return lhs.terms_ == rhs.terms_; }

  Poly pow(unsigned exponent) const;

  /// Substitutes a numeric value for the symbolic parameter.
  Poly bind_param(const Rational& a) const;

  Rational eval_exact(const Rational& v1, const Rational& v2, const Rational& a = Rational(0)) const;
  /// Convenience double evaluation; use CompiledPoly in loops.
  double eval(double v1, double v2, double a = 0.0) const;

  /// Sum of `c * a^k * x^i * y^j` terms in graded-lex order.
  std::string to_string(std::string_view v1_name = "x", std::string_view v2_name = "y",
                        std::string_view param_name = "a") const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

Poly diff(const Poly& p, Var var, int order = 1);

/// Term-wise antiderivative with zero integration constant.
Poly antideriv(const Poly& p, Var var);

/// Composition p(sub1, sub2); the parameter slot is carried through untouched.
Poly compose(const Poly& p, const Poly& sub1, const Poly& sub2);

/// (v1, v2) -> (m11 v1 + m12 v2 + c1, m21 v1 + m22 v2 + c2).
struct AffineMap {
  Rational m11{1}, m12{0}, c1{0};
  Rational m21{0}, m22{1}, c2{0};

  static AffineMap identity() { return {}; }
  /// Characteristic coordinates (X, Y) = (x + y, -x + y).
  static AffineMap to_characteristic();
  /// Physical coordinates (x, y) = ((X - Y)/2, (X + Y)/2).
  static AffineMap to_physical();
};

Poly affine_subst(const Poly& p, const AffineMap& map);

/// The wave operator -d2/dv1^2 + d2/dv2^2.
Poly wave_operator(const Poly& p);

/// Restriction of p to the line r(tau) = origin + tau * direction. The result
/// is univariate in tau, stored in the v1 slot (coefficients may still carry a).
Poly restrict_to_segment(const Poly& p, const std::array<Poly, 2>& origin,
                         const std::array<Poly, 2>& direction);

/// Dense double-precision copy of a polynomial with the parameter bound, for
/// repeated Horner evaluation. Accuracy is that of IEEE double arithmetic.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const Poly& p, double a);

  double operator()(double v1, double v2) const;

 private:
  // rows_[i][j] is the coefficient of v1^i v2^j
  std::vector<std::vector<double>> rows_;
};

}  // namespace cavity
