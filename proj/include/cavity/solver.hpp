#pragma once

#include "cavity/geometry.hpp"
#include "cavity/polynomial.hpp"
#include "cavity/quadrature.hpp"
#include "cavity/stress.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

namespace cavity {

class IncompatibleStress : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A candidate stream function does not vanish on the cavity walls.
class BoundaryViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Gradient {
  double dx = 0.0;
  double dy = 0.0;
};

/// Stream function on the triangular cavity. Every instance vanishes on the
/// boundary; the factories check this and throw BoundaryViolation otherwise.
class StreamFunction {
 public:
  struct ExactPoly {
    Poly psi;  // parameter bound to the domain's a
    CompiledPoly compiled;
  };
  /// -(2 A a^2 / 9 pi^2) [cos(3 pi y / a) + cos(3 pi (x - y) / 2a) - 2 cos^2(3 pi (x + y) / 4a)]
  struct SinusoidalClosedForm {
    double amplitude = 0.0;
  };
  /// Per-point evaluation of the solution formula by tensor Gauss quadrature.
  struct Quadrature {
    StressField stress;
    QuadratureSpec spec;
    StressEvaluator f;
  };
  using Backing = std::variant<ExactPoly, SinusoidalClosedForm, Quadrature>;

  static StreamFunction exact(const Poly& psi, const TriangleDomain& d);
  static StreamFunction sinusoidal(double amplitude, const TriangleDomain& d);
  /// boundary_allowance: absolute slack on top of the relative boundary check,
  /// for stresses that are compatible only up to a tolerance.
  static StreamFunction quadrature(const StressField& stress, const TriangleDomain& d, const QuadratureSpec& spec,
                                   double boundary_allowance = 0.0);

  const TriangleDomain& domain() const { return domain_; }
  const Backing& backing() const { return *backing_; }
  const Poly* exact_poly() const;
  bool is_quadrature() const { return std::holds_alternative<Quadrature>(*backing_); }
  /// Whether evaluation outside the closed triangle is meaningful.
  bool extends_beyond_domain() const { return !is_quadrature(); }

  /// Quadrature backings evaluate at the nearest point of the closed triangle.
  double operator()(PhysicalPoint p) const;
  double operator()(double x, double y) const { return (*this)({x, y}); }

  /// (d/dx, d/dy). Exact for polynomial and closed-form backings; the
  /// quadrature backing differentiates the integral formula under the sign.
  Gradient gradient(PhysicalPoint p) const;

  /// max |psi| over an interior lattice; 0 for the null field.
  double scale() const { return scale_; }
  std::string describe() const;

 private:
  StreamFunction(TriangleDomain d, Backing backing);
  void check_boundary(double allowance = 0.0) const;

  TriangleDomain domain_;
  std::shared_ptr<const Backing> backing_;
  double scale_ = 0.0;
};

/// Boundary values must stay within this multiple of scale().
inline constexpr double kBoundaryRelTol = 1e-12;

/// Exact solution of -psi_xx + psi_yy = f with psi = 0 on the boundary, by
/// integrating the solution formula over both rectangles with symbolic limits.
/// The parameter a stays symbolic. Throws IncompatibleStress.
Poly exact_stream_polynomial(const Poly& f);

StreamFunction solve_exact_poly(const Poly& f, const TriangleDomain& d);

/// Throws IncompatibleStress unless compat_check passes at compat_tol.
StreamFunction solve_quadrature(const StressField& f, const TriangleDomain& d, const QuadratureSpec& spec,
                                double compat_tol = 1e-10);

StreamFunction sinusoidal_closed_form(double amplitude, const TriangleDomain& d);

/// The stress the sinusoidal closed form actually solves: 2 A cos(3 pi y / a).
StressField sinusoidal_source_stress(double amplitude, const TriangleDomain& d);

/// (2y^3 - 2x^2 y - 4a y^2 + 4a x y)(y - 100 x^2 - a)(y + x/4 - 5a/6), a symbolic.
Poly realistic_stream_polynomial();

struct RealisticExample {
  StreamFunction psi;
  Poly stress;  // bound to d.a()
};

RealisticExample realistic_example(const TriangleDomain& d);

/// |(-psi(x-h,y) + 2 psi - psi(x+h,y))/h^2 + (psi(x,y-h) - 2 psi + psi(x,y+h))/h^2 - f(x,y)|
double residual(const StreamFunction& psi, const StressEvaluator& f, PhysicalPoint p, double h);

}  // namespace cavity
