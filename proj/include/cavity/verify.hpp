#pragma once

#include "cavity/geometry.hpp"
#include "cavity/polynomial.hpp"
#include "cavity/solver.hpp"
#include "cavity/stress.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace cavity {

/// A candidate stream function as seen by the verifier. Unlike StreamFunction
/// it carries no boundary guarantee, so deliberately broken fields can be checked.
struct FieldUnderTest {
  std::function<double(PhysicalPoint)> eval;
  /// Exact polynomial form (parameter bound), when known.
  std::optional<Poly> exact;
  /// Set for quadrature-backed fields; the verifier re-integrates this stress
  /// with its own midpoint rule.
  std::optional<StressField> quadrature_stress;
  /// Whether eval may be called outside the closed triangle.
  bool extends_beyond_domain = true;

  static FieldUnderTest from(const StreamFunction& psi);
};

struct VerificationOptions {
  int lattice_n = 101;
  double tol_pde = 1e-9;
  /// Relative to the field's sampled max |psi|.
  double tol_bc = 1e-12;
  /// Relative to the field's sampled max |psi|.
  double tol_quadrature = 1e-6;
  /// Finite-difference step; <= 0 selects 1e-4 * a.
  double h = 0.0;
};

struct VerificationReport {
  double max_interior_residual = 0.0;
  int interior_points = 0;
  /// Residual computed by exact polynomial identities rather than differences.
  bool exact_residual = false;
  double max_boundary_value = 0.0;
  int boundary_points = 0;
  double scale = 0.0;
  std::optional<double> quadrature_vs_riemann;
  VerificationOptions options;

  bool pde_pass() const;
  bool boundary_pass() const;
  bool quadrature_pass() const;
  bool passed() const { return pde_pass() && boundary_pass() && quadrature_pass(); }

  nlohmann::ordered_json to_json() const;
  /// Human-readable pass/fail table.
  std::string table() const;
};

/// Oracle built from direct sampling, polynomial differentiation, and
/// midpoint Riemann sums only; it never calls the solver's integration code.
VerificationReport verify_field(const FieldUnderTest& psi, const StressField& f, const TriangleDomain& d,
                                const VerificationOptions& opts);

VerificationReport verify_solution(const StreamFunction& psi, const StressField& f, const VerificationOptions& opts);

/// psi at p from the solution formula, integrating each rectangle with an
/// n x n midpoint rule and Richardson-combining it with the n/2 x n/2 sum.
double riemann_stream_value(const StressEvaluator& f, const TriangleDomain& d, PhysicalPoint p, int n);

/// Plain n x n midpoint sum over [t0, t1] x [s0, s1].
double midpoint_sum(const std::function<double(double, double)>& g, double t0, double t1, double s0, double s1,
                    int n);

struct UniquenessSummary {
  int trials = 0;
  int recovered = 0;
  std::vector<int> failed_trials;
  bool passed() const { return recovered == trials; }
};

/// 2y (y - x)(x + y - 2a) q(x, y) with integer coefficients of q in [-5, 5],
/// total degree of q at most 4, drawn from a per-trial stream of `seed`.
Poly random_boundary_vanishing(const TriangleDomain& d, std::uint64_t seed, int trial);

/// Recovers each random boundary-vanishing psi0 from its own stress exactly.
UniquenessSummary uniqueness_suite(const TriangleDomain& d, int trials, std::uint64_t seed);

}  // namespace cavity
