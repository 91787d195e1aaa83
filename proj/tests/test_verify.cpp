#include "cavity/verify.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace cavity;
using namespace cavity::testing;

namespace {

const TriangleDomain unit(1.0);
constexpr double pi = std::numbers::pi;

VerificationOptions lattice(int n, double tol_pde = 1e-9) {
  VerificationOptions o;
  o.lattice_n = n;
  o.tol_pde = tol_pde;
  return o;
}

}  // namespace

TEST(VerifySolution, LinearCaseExact) {
  const StreamFunction psi = solve_exact_poly(linear_example_stress(), unit);
  const auto r = verify_solution(psi, StressField::polynomial(linear_example_stress()), lattice(32));
  EXPECT_TRUE(r.exact_residual);
  EXPECT_LE(r.max_interior_residual, 1e-9);
  EXPECT_EQ(r.max_boundary_value, 0.0);
  EXPECT_GT(r.interior_points, 0);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.quadrature_vs_riemann.has_value());
}

TEST(VerifySolution, SinusoidalAgainstDocumentedSource) {
  const StreamFunction psi = sinusoidal_closed_form(5.0, unit);
  const auto r = verify_solution(psi, sinusoidal_source_stress(5.0, unit), lattice(32, 5e-3));
  EXPECT_FALSE(r.exact_residual);
  EXPECT_TRUE(r.pde_pass());
  EXPECT_TRUE(r.boundary_pass());
  EXPECT_TRUE(r.passed());
}

TEST(VerifySolution, SinusoidalAgainstSingleAmplitudeFails) {
  const StreamFunction psi = sinusoidal_closed_form(5.0, unit);
  const auto r = verify_solution(psi, StressField::cosine(5.0, 3.0 * pi), lattice(32, 5e-3));
  EXPECT_FALSE(r.pde_pass());
  EXPECT_GT(r.max_interior_residual, 4.0);
}

TEST(VerifySolution, QuadratureBackingComparedWithRiemannSums) {
  const StreamFunction psi = solve_quadrature(StressField::cosine(1.0, pi), unit, default_quadrature(unit));
  const auto r = verify_solution(psi, StressField::cosine(1.0, pi), lattice(12, 5e-3));
  ASSERT_TRUE(r.quadrature_vs_riemann.has_value());
  EXPECT_LE(*r.quadrature_vs_riemann, 1e-6 * r.scale);
  EXPECT_TRUE(r.passed());
}

TEST(VerifyField, PerturbationBreaksTheBoundaryCheck) {
  const StreamFunction psi = solve_exact_poly(linear_example_stress(), unit);
  FieldUnderTest field = FieldUnderTest::from(psi);
  field.exact = *field.exact + Poly::term(Rational(1, 1000), 1, 0);
  field.eval = [psi](PhysicalPoint p) { return psi(p) + 1e-3 * p.x; };
  const auto r = verify_field(field, StressField::polynomial(linear_example_stress()), unit, lattice(32));
  EXPECT_FALSE(r.boundary_pass());
  EXPECT_NEAR(r.max_boundary_value, 2e-3, 1e-15);
}

TEST(VerifyField, PerturbationScalesWithEpsilon) {
  const StreamFunction psi = solve_exact_poly(linear_example_stress(), unit);
  const Poly bump = Poly::v1() * Poly::v2() * (Poly::v1() + Poly::v2());
  double previous = 0.0;
  for (double eps : {1e-6, 1e-4, 1e-2}) {
    FieldUnderTest field = FieldUnderTest::from(psi);
    field.exact = *field.exact + to_rational(eps) * bump;
    const CompiledPoly c(*field.exact, 1.0);
    field.eval = [c](PhysicalPoint p) { return c(p.x, p.y); };
    const auto r = verify_field(field, StressField::polynomial(linear_example_stress()), unit, lattice(32));
    const double signal = std::max(r.max_interior_residual, r.max_boundary_value);
    // -xx + yy of x y (x + y) is 2x - 2y; on the triangle that peaks at 4 near A
    EXPECT_NEAR(r.max_interior_residual / eps, 4.0, 0.3);
    EXPECT_GT(signal, 10.0 * previous);
    previous = signal;
  }
}

TEST(VerifyField, FiniteDifferencePathWithoutExactForm) {
  const StreamFunction psi = solve_exact_poly(linear_example_stress(), unit);
  FieldUnderTest field;
  field.eval = [psi](PhysicalPoint p) { return psi(p); };
  const auto r = verify_field(field, StressField::polynomial(linear_example_stress()), unit, lattice(20, 1e-6));
  EXPECT_FALSE(r.exact_residual);
  EXPECT_LE(r.max_interior_residual, 1e-6);
  EXPECT_TRUE(r.passed());
}

TEST(VerifyField, MonotoneRefinementForExactBackings) {
  const StreamFunction psi = realistic_example(unit).psi;
  const StressField f = StressField::polynomial(realistic_example(unit).stress);
  double previous = -1.0;
  for (int n : {16, 32, 64}) {
    const auto r = verify_solution(psi, f, lattice(n));
    if (previous >= 0.0) {
      EXPECT_LE(r.max_interior_residual, previous + 1e-12);
    }
    previous = r.max_interior_residual;
  }
}

TEST(VerifyField, RejectsTinyLattice) {
  const StreamFunction psi = solve_exact_poly(linear_example_stress(), unit);
  EXPECT_THROW(verify_solution(psi, StressField::polynomial(linear_example_stress()), lattice(2)), std::invalid_argument);
}

TEST(VerifyReport, JsonAndTable) {
  const StreamFunction psi = solve_exact_poly(linear_example_stress(), unit);
  const auto r = verify_solution(psi, StressField::polynomial(linear_example_stress()), lattice(16));
  const auto j = r.to_json();
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_EQ(j.at("pde_residual").at("method").get<std::string>(), "exact_polynomial");
  EXPECT_TRUE(j.at("quadrature_vs_riemann").is_null());
  const std::string table = r.table();
  EXPECT_NE(table.find("PASS"), std::string::npos);
  EXPECT_EQ(table.find("FAIL"), std::string::npos);
}

TEST(Riemann, MidpointSumOfAPlane) {
  // the midpoint rule integrates affine functions exactly
  const double v = midpoint_sum([](double t, double s) { return 2.0 * t - s + 1.0; }, 0.0, 2.0, -1.0, 0.0, 7);
  EXPECT_NEAR(v, 2.0 * 2.0 + 0.5 * 2.0 + 2.0, 1e-13);
  EXPECT_EQ(midpoint_sum([](double, double) { return 1.0; }, 1.0, 1.0, 0.0, 1.0, 5), 0.0);
}

TEST(Riemann, StreamValueMatchesClosedFormRectangles) {
  const StressEvaluator f = [](double, double y) { return 5.0 * std::cos(pi * y); };
  const PhysicalPoint p{1.0, 0.5};
  const double oracle = -0.25 * (cosine_rect_integral(5.0, pi, 0.5, 1.5, -0.5, 0.0) +
                                 cosine_rect_integral(5.0, pi, 1.5, 2.0, -1.5, 0.0));
  EXPECT_NEAR(riemann_stream_value(f, unit, p, 200), oracle, 1e-9);
}

TEST(Uniqueness, WallsAloneRecoverTheLinearCase) {
  const Poly psi0 = walls().bind_param(1);
  EXPECT_EQ(psi0, linear_psi().bind_param(1));
  EXPECT_EQ(*solve_exact_poly(wave_operator(psi0), unit).exact_poly(), psi0);
}

TEST(Uniqueness, ZeroStressGivesZero) {
  EXPECT_TRUE(solve_exact_poly(wave_operator(Poly()), unit).exact_poly()->is_zero());
}

TEST(Uniqueness, HundredSeededTrials) {
  const UniquenessSummary s = uniqueness_suite(unit, 100, 20240601);
  EXPECT_EQ(s.trials, 100);
  EXPECT_EQ(s.recovered, 100);
  EXPECT_TRUE(s.failed_trials.empty());
  EXPECT_TRUE(s.passed());
}

TEST(Uniqueness, TrialsAreReproducible) {
  EXPECT_EQ(random_boundary_vanishing(unit, 7, 3), random_boundary_vanishing(unit, 7, 3));
  EXPECT_NE(random_boundary_vanishing(unit, 7, 3), random_boundary_vanishing(unit, 7, 4));
  EXPECT_THROW(uniqueness_suite(unit, 0, 1), std::invalid_argument);
}
