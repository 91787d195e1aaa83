#pragma once

#include "cavity/geometry.hpp"
#include "cavity/polynomial.hpp"
#include "cavity/quadrature.hpp"
#include "cavity/ratfunc.hpp"
#include "cavity/stress.hpp"

#include "json.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cavity {

/// The stress in characteristic integration variables:
/// F(t, s) = f((t - s)/2, (t + s)/2), with t in v1 and s in v2.
Poly characteristic_stress(const Poly& f);

/// Exact compatibility integral C(X) = int_X^{2a} int_{-X}^0 F(t, s) ds dt as
/// a polynomial in X (v1 slot). The parameter a stays symbolic.
Poly compat_polynomial(const Poly& f);

/// Closed form of the compatibility integral for A cos(k y):
/// (16 A / k^2) sin(k X / 4) sin(k (2a - X) / 4) cos(k a / 2).
double cosine_compat_residual(double amplitude, double wavenumber, double a, double X);

/// Compatibility integral at one X in [0, 2a]. Polynomial stresses are
/// integrated exactly, cosines in closed form, opaque stresses by quadrature.
double compat_residual(const StressField& f, const TriangleDomain& d, double X,
                       const QuadratureSpec& quad);

/// n Chebyshev-Lobatto nodes a (1 - cos(j pi / (n - 1))) on [0, 2a].
std::vector<double> chebyshev_sweep(const TriangleDomain& d, int n);

struct SweepSample {
  double X = 0.0;
  double residual = 0.0;
};

struct CompatibilityReport {
  std::vector<SweepSample> sweep;
  double max_abs_residual = 0.0;
  /// (2a)^2 * max|f| over the triangle; residuals are judged relative to it.
  double normalization = 0.0;
  double tolerance = 0.0;
  /// Polynomial stresses only; bound to the domain's a.
  std::optional<Poly> exact_constraint;
  bool compatible = false;

  double relative_residual() const;
  nlohmann::ordered_json to_json() const;
};

CompatibilityReport compat_check(const StressField& f, const TriangleDomain& d, int n_sweep = 65,
                                 double tol = 1e-10);
CompatibilityReport compat_check(const StressField& f, const TriangleDomain& d, int n_sweep, double tol,
                                 const QuadratureSpec& quad);

/// Linear constraints on the coefficients c of f = sum c_i basis_i.
struct ConstraintSystem {
  /// Row r constrains the coefficient of X^x_powers[r] in C(X).
  std::vector<int> x_powers;
  /// matrix[r][i], entries are polynomials in a (constants when a is bound).
  std::vector<std::vector<UniPoly>> matrix;
  /// Rank over the field of rational functions in a.
  int rank = 0;
  /// Basis of the admissible coefficient vectors; each vector is primitive
  /// with its first nonzero entry monic.
  std::vector<std::vector<UniPoly>> nullspace;
};

/// Symbolic in a.
ConstraintSystem compat_constraints(std::span<const Poly> basis);
/// a bound to d.a().
ConstraintSystem compat_constraints(std::span<const Poly> basis, const TriangleDomain& d);

/// (2n + 1) pi / a for n = 0..n_max, each confirmed by compat_check.
std::vector<double> cosine_admissible_wavenumbers(const TriangleDomain& d, int n_max);

}  // namespace cavity
