#pragma once

#include "cavity/geometry.hpp"
#include "cavity/polynomial.hpp"

#include <functional>
#include <string>
#include <variant>

namespace cavity {

/// Bound stress evaluator (x, y) -> f(x, y).
using StressEvaluator = std::function<double(double, double)>;

/// Shear stress over viscosity, f = T_xy / mu, driving the cavity flow.
class StressField {
 public:
  /// Polynomial in (x, y); may keep the length parameter a symbolic.
  struct Polynomial {
    Poly f;
  };
  /// amplitude * cos(wavenumber * y)
  struct Cosine {
    double amplitude = 0.0;
    double wavenumber = 0.0;
  };
  /// Arbitrary continuous evaluator.
  struct Opaque {
    StressEvaluator eval;
    std::string label;
  };
  using Kind = std::variant<Polynomial, Cosine, Opaque>;

  static StressField polynomial(Poly f);
  static StressField cosine(double amplitude, double wavenumber);
  static StressField opaque(StressEvaluator eval, std::string label = "opaque");

  const Kind& kind() const { return kind_; }
  const Poly* as_polynomial() const;
  const Cosine* as_cosine() const;

  /// Evaluator with the length parameter bound to d.a().
  StressEvaluator bind(const TriangleDomain& d) const;
  double operator()(const TriangleDomain& d, double x, double y) const { return bind(d)(x, y); }

  /// max |f| over the closed triangle, sampled on a 33 x 33 lattice.
  double sampled_max_abs(const TriangleDomain& d) const;

  std::string describe() const;

 private:
  explicit StressField(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// f = 16 y - 8 a, the linear shear example (a kept symbolic).
Poly linear_example_stress();

}  // namespace cavity
