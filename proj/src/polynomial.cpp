#include "cavity/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cavity {

using boost::multiprecision::cpp_int;

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("to_rational: non-finite value");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // 53 bits of mantissa fit in an int64 exactly
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  cpp_int num = scaled;
  cpp_int den = 1;
  if (exponent > 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

namespace {

cpp_int parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty integer");
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') pos = 1;
  if (pos == text.size()) throw std::invalid_argument("parse_rational: bare sign");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("parse_rational: bad digit in '" + std::string(text) + "'");
  }
  std::string digits(text.substr(pos));
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  cpp_int value(digits);
  return text[0] == '-' ? cpp_int(-value) : value;
}

cpp_int pow10(int n) {
  cpp_int r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const cpp_int den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(parse_integer(text.substr(0, slash)), den);
  }

  int exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exp10 = static_cast<int>(parse_integer(text.substr(e + 1)));
    text = text.substr(0, e);
  }
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  for (char c : text) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("parse_rational: bad character in '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("parse_rational: no digits");
  // a leading zero would make cpp_int read the string as octal
  const auto first = digits.find_first_not_of('0');
  cpp_int num(first == std::string::npos ? std::string("0") : digits.substr(first));
  if (negative) num = -num;
  exp10 -= frac_digits;
  if (exp10 >= 0) return Rational(num * pow10(exp10));
  return Rational(num, pow10(-exp10));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string format_rational(const Rational& value) {
  const cpp_int num = numerator(value);
  const cpp_int den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Poly::Poly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

Poly Poly::v1() { return term(1, 1, 0); }
Poly Poly::v2() { return term(1, 0, 1); }
Poly Poly::param() { return term(1, 0, 0, 1); }

Poly Poly::term(const Rational& coefficient, int x, int y, int a) {
  if (x < 0 || y < 0 || a < 0) throw std::invalid_argument("Poly::term: negative exponent");
  Poly p;
  p.add_term(Monomial{x, y, a}, coefficient);
  return p;
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

int Poly::degree_in(Var var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, var == Var::V1 ? m.x : m.y);
  return d;
}

int Poly::param_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.a);
  return d;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  Poly out;
  for (const auto& [ml, cl] : lhs.terms_) {
    for (const auto& [mr, cr] : rhs.terms_) {
      out.add_term(Monomial{ml.x + mr.x, ml.y + mr.y, ml.a + mr.a}, cl * cr);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Poly Poly::bind_param(const Rational& a) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Rational factor = 1;
    for (int k = 0; k < m.a; ++k) factor *= a;
    out.add_term(Monomial{m.x, m.y, 0}, c * factor);
  }
  return out;
}

Rational Poly::eval_exact(const Rational& v1, const Rational& v2, const Rational& a) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int k = 0; k < m.x; ++k) t *= v1;
    for (int k = 0; k < m.y; ++k) t *= v2;
    for (int k = 0; k < m.a; ++k) t *= a;
    sum += t;
  }
  return sum;
}

double Poly::eval(double v1, double v2, double a) const { return CompiledPoly(*this, a)(v1, v2); }

std::string Poly::to_string(std::string_view v1_name, std::string_view v2_name,
                            std::string_view param_name) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  auto factor = [&out](std::string_view name, int exponent) {
    if (exponent == 0) return;
    out += " * ";
    out += name;
    if (exponent > 1) out += "^" + std::to_string(exponent);
  };
  for (const auto& [m, c] : terms_) {
    if (first) {
      out += format_rational(c);
    } else {
      out += c < 0 ? " - " : " + ";
      out += format_rational(c < 0 ? Rational(-c) : c);
    }
    first = false;
    factor(param_name, m.a);
    factor(v1_name, m.x);
    factor(v2_name, m.y);
  }
  return out;
}

Poly diff(const Poly& p, Var var, int order) {
  if (order < 0) throw std::invalid_argument("diff: negative order");
  Poly current = p;
  for (int step = 0; step < order; ++step) {
    Poly next;
    for (const auto& [m, c] : current.terms()) {
      const int e = var == Var::V1 ? m.x : m.y;
      if (e == 0) continue;
      next += var == Var::V1 ? Poly::term(c * e, m.x - 1, m.y, m.a)
                             : Poly::term(c * e, m.x, m.y - 1, m.a);
    }
    current = std::move(next);
  }
  return current;
}

Poly antideriv(const Poly& p, Var var) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    if (var == Var::V1) {
      out += Poly::term(c / (m.x + 1), m.x + 1, m.y, m.a);
    } else {
      out += Poly::term(c / (m.y + 1), m.x, m.y + 1, m.a);
    }
  }
  return out;
}

Poly compose(const Poly& p, const Poly& sub1, const Poly& sub2) {
  std::vector<Poly> pow1{Poly(1)};
  std::vector<Poly> pow2{Poly(1)};
  auto power = [](std::vector<Poly>& cache, const Poly& base, int e) -> const Poly& {
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    out += (power(pow1, sub1, m.x) * power(pow2, sub2, m.y)) * Poly::term(c, 0, 0, m.a);
  }
  return out;
}

AffineMap AffineMap::to_characteristic() {
  return AffineMap{Rational(1), Rational(1), Rational(0), Rational(-1), Rational(1), Rational(0)};
}

AffineMap AffineMap::to_physical() {
  const Rational half(1, 2);
  return AffineMap{half, -half, Rational(0), half, half, Rational(0)};
}

Poly affine_subst(const Poly& p, const AffineMap& map) {
  const Poly sub1 = map.m11 * Poly::v1() + map.m12 * Poly::v2() + Poly(map.c1);
  const Poly sub2 = map.m21 * Poly::v1() + map.m22 * Poly::v2() + Poly(map.c2);
  return compose(p, sub1, sub2);
}

Poly wave_operator(const Poly& p) { return diff(p, Var::V2, 2) - diff(p, Var::V1, 2); }

Poly restrict_to_segment(const Poly& p, const std::array<Poly, 2>& origin,
                         const std::array<Poly, 2>& direction) {
  const Poly tau = Poly::v1();
  return compose(p, origin[0] + direction[0] * tau, origin[1] + direction[1] * tau);
}

CompiledPoly::CompiledPoly(const Poly& p, double a) {
  for (const auto& [m, c] : p.terms()) {
    const double coefficient = to_double(c) * std::pow(a, m.a);
    if (static_cast<int>(rows_.size()) <= m.x) rows_.resize(m.x + 1);
    auto& row = rows_[m.x];
    if (static_cast<int>(row.size()) <= m.y) row.resize(m.y + 1, 0.0);
    row[m.y] += coefficient;
  }
}

double CompiledPoly::operator()(double v1, double v2) const {
  double outer = 0.0;
  for (auto row = rows_.rbegin(); row != rows_.rend(); ++row) {
    double inner = 0.0;
    for (auto c = row->rbegin(); c != row->rend(); ++c) inner = inner * v2 + *c;
    outer = outer * v1 + inner;
  }
  return outer;
}

}  // namespace cavity
