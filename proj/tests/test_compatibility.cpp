#include "cavity/compatibility.hpp"
#include "cavity/solver.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace cavity;
using namespace cavity::testing;

namespace {

const TriangleDomain unit(1.0);
constexpr double pi = std::numbers::pi;

StressField linear_stress() { return StressField::polynomial(linear_example_stress()); }

double cosine_oracle(double A, double k, double a, double X) {
  return cosine_rect_integral(A, k, X, 2.0 * a, -X, 0.0);
}

}  // namespace

TEST(CompatResidual, Examples) {
  const QuadratureSpec quad;
  EXPECT_EQ(compat_residual(linear_stress(), unit, 0.0, quad), 0.0);
  EXPECT_EQ(compat_residual(linear_stress(), unit, 2.0, quad), 0.0);
  EXPECT_EQ(compat_residual(StressField::cosine(3.0, 2.0), unit, 2.0, quad), 0.0);
  EXPECT_DOUBLE_EQ(compat_residual(StressField::polynomial(Poly(1)), unit, 1.0, quad), 1.0);
}

TEST(CompatResidual, RejectsOutOfRangeX) {
  EXPECT_THROW(compat_residual(linear_stress(), unit, -0.1, QuadratureSpec{}), std::domain_error);
  EXPECT_THROW(compat_residual(linear_stress(), unit, 2.1, QuadratureSpec{}), std::domain_error);
}

TEST(CompatResidual, EndpointsVanishForEveryStress) {
  const TriangleDomain d(1.3);
  const StressField opaque = StressField::opaque([](double x, double y) { return std::exp(x) * (1.0 + y * y); });
  for (const StressField& f : {linear_stress(), StressField::polynomial(Poly(7)), StressField::cosine(2.0, 4.0), opaque}) {
    EXPECT_EQ(compat_residual(f, d, 0.0, QuadratureSpec{}), 0.0) << f.describe();
    EXPECT_EQ(compat_residual(f, d, 2.6, QuadratureSpec{}), 0.0) << f.describe();
  }
}

TEST(CompatResidual, CosineClosedFormMatchesSeparatedIntegral) {
  for (double a : {0.5, 1.0, 2.0}) {
    for (double k : {1.0, pi / a, 2.0 * pi / a, 7.3}) {
      for (double X : {0.1, 0.5 * a, a, 1.7 * a}) {
        EXPECT_NEAR(cosine_compat_residual(2.5, k, a, X), cosine_oracle(2.5, k, a, X), 1e-13 * a * a);
      }
    }
  }
}

TEST(CompatResidual, QuadratureAgreesWithExactForPolynomials) {
  std::mt19937_64 rng(31);
  const TriangleDomain d(1.2);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly f = random_q(rng, 5);
    const CompiledPoly c(f, d.a());
    const StressField opaque = StressField::opaque([c](double x, double y) { return c(x, y); });
    const StressField exact = StressField::polynomial(f);
    const double scale = 4.0 * d.a() * d.a() * exact.sampled_max_abs(d);
    // degree 5 in (t, s) needs 3 Gauss nodes per axis
    const QuadratureSpec quad{3, 1};
    for (double X : chebyshev_sweep(d, 9)) {
      EXPECT_NEAR(compat_residual(opaque, d, X, quad), compat_residual(exact, d, X, quad), 1e-12 * scale);
    }
  }
}

TEST(CompatResidual, LinearInTheStress) {
  const TriangleDomain d(0.8);
  const Poly f1 = Poly::term(3, 2, 1) - Poly(1);
  const Poly f2 = Poly::term(5, 0, 3);
  const Rational alpha(-2, 3), beta(7, 2);
  const Poly combo = alpha * f1 + beta * f2;
  EXPECT_EQ(compat_polynomial(combo), alpha * compat_polynomial(f1) + beta * compat_polynomial(f2));
  const QuadratureSpec quad;
  const StressField c1 = StressField::cosine(1.0, 2.0);
  const StressField c2 = StressField::cosine(1.0, 5.0);
  const StressField combined = StressField::opaque([](double, double y) { return 3.0 * std::cos(2.0 * y) - std::cos(5.0 * y); });
  for (double X : {0.2, 0.9, 1.4}) {
    const double lhs = compat_residual(combined, d, X, QuadratureSpec{12, 4});
    const double rhs = 3.0 * compat_residual(c1, d, X, quad) - compat_residual(c2, d, X, quad);
    EXPECT_NEAR(lhs, rhs, 1e-13);
  }
}

TEST(CompatPolynomial, LinearFamilyFormula) {
  // c1 (a^2 X - a X^2 / 2) + c2 (2a X - X^2)
  const Poly X = Poly::v1();
  const Poly a = Poly::param();
  const Poly y = Poly::v2();
  const Rational c1(3), c2(-5);
  const Poly expected = c1 * (a * a * X - Rational(1, 2) * a * X * X) + c2 * (Rational(2) * a * X - X * X);
  EXPECT_EQ(compat_polynomial(c1 * y + Poly(c2)), expected);
  EXPECT_TRUE(compat_polynomial(linear_example_stress()).is_zero());
}

TEST(CompatCheck, LinearStressIsCompatibleExactly) {
  for (double a : {1.0, 0.37}) {
    const auto r = compat_check(linear_stress(), TriangleDomain(a));
    ASSERT_TRUE(r.exact_constraint.has_value());
    EXPECT_TRUE(r.exact_constraint->is_zero());
    EXPECT_TRUE(r.compatible);
    EXPECT_EQ(r.max_abs_residual, 0.0);
    EXPECT_EQ(r.sweep.size(), 65u);
  }
  // zero exact constraint wins at any tolerance
  EXPECT_TRUE(compat_check(linear_stress(), unit, 65, 1e-300).compatible);
}

TEST(CompatCheck, OffTheRayIsIncompatible) {
  const Poly f = Poly::term(16, 0, 1) - Poly(7);
  const auto r = compat_check(StressField::polynomial(f), unit);
  EXPECT_FALSE(r.compatible);
  ASSERT_TRUE(r.exact_constraint.has_value());
  EXPECT_FALSE(r.exact_constraint->is_zero());
  EXPECT_GT(r.max_abs_residual, 0.1);
}

TEST(CompatCheck, FirstCosineHarmonicIsCompatible) {
  const auto r = compat_check(StressField::cosine(5.0, pi), unit, 65, 1e-10);
  EXPECT_TRUE(r.compatible);
  EXPECT_FALSE(r.exact_constraint.has_value());
  EXPECT_LE(r.relative_residual(), 1e-10);
}

TEST(CompatCheck, EvenHarmonicsFail) {
  for (int m : {2, 4}) {
    const auto r = compat_check(StressField::cosine(1.0, m * pi), unit);
    EXPECT_FALSE(r.compatible) << "m = " << m;
    EXPECT_GE(r.max_abs_residual, 1e-2 * r.normalization);
  }
}

TEST(CompatCheck, SweepUsesChebyshevLobattoNodes) {
  const auto nodes = chebyshev_sweep(TriangleDomain(2.0), 5);
  ASSERT_EQ(nodes.size(), 5u);
  EXPECT_DOUBLE_EQ(nodes.front(), 0.0);
  EXPECT_DOUBLE_EQ(nodes[2], 2.0);
  EXPECT_DOUBLE_EQ(nodes.back(), 4.0);
  EXPECT_NEAR(nodes[1], 2.0 * (1.0 - std::sqrt(0.5)), 1e-15);
}

TEST(CompatCheck, ReportSerializes) {
  const auto j = compat_check(linear_stress(), unit, 5).to_json();
  EXPECT_EQ(j.at("verdict").get<std::string>(), "compatible");
  EXPECT_EQ(j.at("sweep").size(), 5u);
  EXPECT_EQ(j.at("exact_constraint").get<std::string>(), "0");
}

TEST(CompatConstraints, LinearBasisGivesTheRay) {
  const std::vector<Poly> basis{Poly::v2(), Poly(1)};
  const ConstraintSystem sys = compat_constraints(basis);
  EXPECT_EQ(sys.rank, 1);
  ASSERT_EQ(sys.nullspace.size(), 1u);
  const auto& v = sys.nullspace[0];
  ASSERT_EQ(v.size(), 2u);
  // 2 c2 = -a c1, as polynomials in a
  const UniPoly a_poly(std::vector<Rational>{Rational(0), Rational(1)});
  EXPECT_EQ(v[1] * Rational(2), (a_poly * v[0]) * Rational(-1));
  EXPECT_FALSE(v[0].is_zero());
}

TEST(CompatConstraints, BoundParameter) {
  const std::vector<Poly> basis{Poly::v2(), Poly(1)};
  const ConstraintSystem sys = compat_constraints(basis, TriangleDomain(3.0));
  ASSERT_EQ(sys.nullspace.size(), 1u);
  const auto& v = sys.nullspace[0];
  ASSERT_EQ(v[0].degree(), 0);
  EXPECT_EQ(v[1].eval(0) * 2, -3 * v[0].eval(0));
}

TEST(CompatConstraints, ConstantAloneIsInadmissible) {
  const std::vector<Poly> basis{Poly(1)};
  const ConstraintSystem sys = compat_constraints(basis, TriangleDomain(1.7));
  EXPECT_EQ(sys.rank, 1);
  EXPECT_TRUE(sys.nullspace.empty());
}

TEST(CompatConstraints, SolutionStressesSpanFreely) {
  std::mt19937_64 rng(32);
  std::vector<Poly> basis;
  for (int i = 0; i < 4; ++i) basis.push_back(wave_operator(walls() * random_q(rng, 3)));
  const ConstraintSystem sys = compat_constraints(basis);
  EXPECT_EQ(sys.rank, 0);
  EXPECT_EQ(sys.nullspace.size(), 4u);
}

TEST(CompatConstraints, ExistenceImpliesCompatibility) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Poly psi0 = walls() * random_q(rng, 4);
    EXPECT_TRUE(compat_polynomial(wave_operator(psi0)).is_zero()) << "trial " << trial;
  }
}

TEST(CosineAdmissible, OddHarmonics) {
  const auto ks = cosine_admissible_wavenumbers(unit, 2);
  ASSERT_EQ(ks.size(), 3u);
  EXPECT_DOUBLE_EQ(ks[0], pi);
  EXPECT_DOUBLE_EQ(ks[1], 3.0 * pi);
  EXPECT_DOUBLE_EQ(ks[2], 5.0 * pi);
  const auto half = cosine_admissible_wavenumbers(TriangleDomain(2.0), 0);
  ASSERT_EQ(half.size(), 1u);
  EXPECT_DOUBLE_EQ(half[0], pi / 2.0);
}

TEST(CosineAdmissible, EvenWavenumberLeavesNonzeroResidual) {
  const TriangleDomain d(1.5);
  const double k = 2.0 * pi / d.a();
  EXPECT_FALSE(compat_check(StressField::cosine(1.0, k), d).compatible);
  EXPECT_GT(std::abs(cosine_oracle(1.0, k, d.a(), d.a())), 0.1);
}
