#pragma once

#include "cavity/polynomial.hpp"

#include <cmath>
#include <random>

namespace cavity::testing {

/// 2y^3 - 2x^2 y - 4a y^2 + 4a x y with a symbolic.
inline Poly linear_psi() {
  return Poly::term(2, 0, 3) - Poly::term(2, 2, 1) - Poly::term(4, 0, 2, 1) + Poly::term(4, 1, 1, 1);
}

/// 2y (y - x)(x + y - 2a), a symbolic.
inline Poly walls() {
  const Poly x = Poly::v1();
  const Poly y = Poly::v2();
  return Poly::term(2, 0, 1) * (y - x) * (x + y - Poly::term(2, 0, 0, 1));
}

inline Poly random_q(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  Poly q;
  for (int deg = 0; deg <= max_degree; ++deg) {
    for (int i = 0; i <= deg; ++i) q += Poly::term(coeff(rng), i, deg - i);
  }
  return q;
}

/// Integral of A cos(k (t + s) / 2) over [t0, t1] x [s0, s1], by separating
/// cos(u + v) = cos u cos v - sin u sin v.
inline double cosine_rect_integral(double A, double k, double t0, double t1, double s0, double s1) {
  const double h = 0.5 * k;
  const double ct = (std::sin(h * t1) - std::sin(h * t0)) / h;
  const double st = (std::cos(h * t0) - std::cos(h * t1)) / h;
  const double cs = (std::sin(h * s1) - std::sin(h * s0)) / h;
  const double ss = (std::cos(h * s0) - std::cos(h * s1)) / h;
  return A * (ct * cs - st * ss);
}

/// Composite Simpson rule in both directions, n even.
template <typename G>
double simpson2(const G& g, double t0, double t1, double s0, double s1, int n) {
  const double ht = (t1 - t0) / n;
  const double hs = (s1 - s0) / n;
  auto w = [n](int i) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) sum += w(i) * w(j) * g(t0 + i * ht, s0 + j * hs);
  }
  return sum * ht * hs / 9.0;
}

}  // namespace cavity::testing
