#pragma once

#include "cavity/geometry.hpp"

#include <functional>
#include <vector>

namespace cavity {

/// Tensorized Gauss-Legendre rule: `order` nodes per axis on each of
/// `subdivision` x `subdivision` equal cells.
struct QuadratureSpec {
  int order = 12;
  int subdivision = 1;

  void validate() const;
};

/// Order 12 per axis; max(1, ceil(2a / 0.25)) cells per axis.
QuadratureSpec default_quadrature(const TriangleDomain& d);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached per order; nodes by Newton iteration on the Legendre recurrence.
const GaussRule& gauss_legendre(int order);

using Integrand2 = std::function<double(double, double)>;
using Integrand1 = std::function<double(double)>;

/// Integral of g(t, s) over the rectangle; zero-area rectangles give 0.
double integrate_rect(const Integrand2& g, const Rect& r, const QuadratureSpec& spec);

/// Integral of g over [lo, hi] (signed: reversed limits flip the sign).
double integrate_line(const Integrand1& g, double lo, double hi, const QuadratureSpec& spec);

}  // namespace cavity
