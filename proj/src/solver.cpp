#include "cavity/solver.hpp"

#include "cavity/compatibility.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace cavity {

namespace {

constexpr double kPi = std::numbers::pi;

// Solution formula integrated exactly; no compatibility check.
Poly stream_polynomial_unchecked(const Poly& f) {
  const Poly F = characteristic_stress(f);
  const Poly G = antideriv(F, Var::V2);
  const Poly t = Poly::v1();
  const Poly Y = Poly::v2();
  // rect1: t in [-Y, X], s in [Y, 0]; inner integral as a polynomial in (t, Y)
  const Poly inner = compose(G, t, Poly()) - G;
  const Poly K = antideriv(inner, Var::V1);
  const Poly rect1 = K - compose(K, -Y, Y);
  const Poly rect2 = compat_polynomial(f);
  const Poly phi = (rect1 + rect2) * Rational(-1, 4);
  return affine_subst(phi, AffineMap::to_characteristic());
}

struct Sinusoid {
  double c, mu, kappa, lambda;

  Sinusoid(double amplitude, double a)
      : c(-2.0 * amplitude * a * a / (9.0 * kPi * kPi)),
        mu(3.0 * kPi / a),
        kappa(3.0 * kPi / (2.0 * a)),
        lambda(3.0 * kPi / (4.0 * a)) {}

  double value(double x, double y) const {
    const double cl = std::cos(lambda * (x + y));
    return c * (std::cos(mu * y) + std::cos(kappa * (x - y)) - 2.0 * cl * cl);
  }
  Gradient gradient(double x, double y) const {
    const double diag = kappa * std::sin(kappa * (x - y));
    const double anti = 2.0 * lambda * std::sin(2.0 * lambda * (x + y));
    return {c * (-diag + anti), c * (-mu * std::sin(mu * y) + diag + anti)};
  }
};

}  // namespace

StreamFunction::StreamFunction(TriangleDomain d, Backing backing)
    : domain_(d), backing_(std::make_shared<const Backing>(std::move(backing))) {
  for (const auto& p : triangle_lattice(domain_, 41)) scale_ = std::max(scale_, std::abs((*this)(p)));
}

void StreamFunction::check_boundary(double allowance) const {
  double worst = 0.0;
  for (const auto& b : boundary_sample(domain_, 100)) worst = std::max(worst, std::abs((*this)(b)));
  if (worst > kBoundaryRelTol * scale_ + allowance) {
    throw BoundaryViolation(fmt::format("stream function reaches {:.3e} on the boundary (scale {:.3e})", worst, scale_));
  }
}

StreamFunction StreamFunction::exact(const Poly& psi, const TriangleDomain& d) {
  const Rational a = to_rational(d.a());
  Poly bound = psi.bind_param(a);
  const std::array<std::pair<std::array<Poly, 2>, std::array<Poly, 2>>, 3> edges{{
      {{Poly(), Poly()}, {Poly(2 * a), Poly()}},    // OA
      {{Poly(), Poly()}, {Poly(a), Poly(a)}},       // OB
      {{Poly(2 * a), Poly()}, {Poly(-a), Poly(a)}}  // AB
  }};
  constexpr std::array<const char*, 3> names{"OA", "OB", "AB"};
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Poly r = restrict_to_segment(bound, edges[e].first, edges[e].second);
    if (!r.is_zero()) throw BoundaryViolation(fmt::format("polynomial does not vanish on edge {}: {}", names[e], r.to_string("tau")));
  }
  CompiledPoly compiled(bound, d.a());
  StreamFunction sf(d, ExactPoly{std::move(bound), std::move(compiled)});
  sf.check_boundary();
  return sf;
}

StreamFunction StreamFunction::sinusoidal(double amplitude, const TriangleDomain& d) {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("sinusoidal: non-finite amplitude");
  StreamFunction sf(d, SinusoidalClosedForm{amplitude});
  sf.check_boundary();
  return sf;
}

StreamFunction StreamFunction::quadrature(const StressField& stress, const TriangleDomain& d,
                                          const QuadratureSpec& spec, double boundary_allowance) {
  spec.validate();
  StreamFunction sf(d, Quadrature{stress, spec, stress.bind(d)});
  sf.check_boundary(boundary_allowance);
  return sf;
}

const Poly* StreamFunction::exact_poly() const {
  const auto* e = std::get_if<ExactPoly>(backing_.get());
  return e ? &e->psi : nullptr;
}

double StreamFunction::operator()(PhysicalPoint p) const {
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ExactPoly>) {
          return b.compiled(p.x, p.y);
        } else if constexpr (std::is_same_v<T, SinusoidalClosedForm>) {
          return Sinusoid(b.amplitude, domain_.a()).value(p.x, p.y);
        } else {
          const auto q = to_characteristic(project_to_triangle(domain_, p));
          const auto sigma = sigma_rectangles(domain_, q);
          const auto& f = b.f;
          auto F = [&f](double t, double s) { return f(0.5 * (t - s), 0.5 * (t + s)); };
          return -0.25 * (integrate_rect(F, sigma.rect1, b.spec) + integrate_rect(F, sigma.rect2, b.spec));
        }
      },
      *backing_);
}

Gradient StreamFunction::gradient(PhysicalPoint p) const {
  return std::visit(
      [&](const auto& b) -> Gradient {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ExactPoly>) {
          // cached derivative polynomials would be faster; VelocityField keeps its own
          return {diff(b.psi, Var::V1).eval(p.x, p.y), diff(b.psi, Var::V2).eval(p.x, p.y)};
        } else if constexpr (std::is_same_v<T, SinusoidalClosedForm>) {
          return Sinusoid(b.amplitude, domain_.a()).gradient(p.x, p.y);
        } else {
          const auto q = to_characteristic(project_to_triangle(domain_, p));
          const double two_a = 2.0 * domain_.a();
          const double X = std::clamp(q.X, 0.0, two_a);
          const double Y = std::clamp(q.Y, -X, 0.0);
          const auto& f = b.f;
          auto F = [&f](double t, double s) { return f(0.5 * (t - s), 0.5 * (t + s)); };
          const auto& spec = b.spec;
          const double g1 = integrate_line([&](double s) { return F(X, s); }, Y, 0.0, spec);
          const double g2 = integrate_line([&](double s) { return F(X, s); }, -X, 0.0, spec);
          const double g3 = integrate_line([&](double t) { return F(t, -X); }, X, two_a, spec);
          const double h1 = integrate_line([&](double s) { return F(-Y, s); }, Y, 0.0, spec);
          const double h2 = integrate_line([&](double t) { return F(t, Y); }, -Y, X, spec);
          const double dX = -0.25 * (g1 - g2 + g3);
          const double dY = -0.25 * (h1 - h2);
          return {dX - dY, dX + dY};
        }
      },
      *backing_);
}

std::string StreamFunction::describe() const {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ExactPoly>) {
          return "exact polynomial " + b.psi.to_string();
        } else if constexpr (std::is_same_v<T, SinusoidalClosedForm>) {
          return fmt::format("sinusoidal closed form, A = {:.17g}", b.amplitude);
        } else {
          return fmt::format("quadrature (order {}, {} cells/axis) of {}", b.spec.order, b.spec.subdivision,
                             b.stress.describe());
        }
      },
      *backing_);
}

Poly exact_stream_polynomial(const Poly& f) {
  const Poly c = compat_polynomial(f);
  if (!c.is_zero()) throw IncompatibleStress("stress violates the compatibility condition: C(X) = " + c.to_string("X"));
  return stream_polynomial_unchecked(f);
}

StreamFunction solve_exact_poly(const Poly& f, const TriangleDomain& d) {
  const Rational a = to_rational(d.a());
  const Poly c = compat_polynomial(f).bind_param(a);
  if (!c.is_zero()) throw IncompatibleStress("stress violates the compatibility condition: C(X) = " + c.to_string("X"));
  return StreamFunction::exact(stream_polynomial_unchecked(f), d);
}

StreamFunction solve_quadrature(const StressField& f, const TriangleDomain& d, const QuadratureSpec& spec,
                                double compat_tol) {
  const auto report = compat_check(f, d, 65, compat_tol, spec);
  if (!report.compatible) {
    throw IncompatibleStress(fmt::format("stress violates the compatibility condition (relative residual {:.3e})",
                                         report.relative_residual()));
  }
  // on OA the formula reduces to -C(X)/2, so tolerated residuals show up there
  return StreamFunction::quadrature(f, d, spec, 0.5 * report.max_abs_residual);
}

StreamFunction sinusoidal_closed_form(double amplitude, const TriangleDomain& d) {
  return StreamFunction::sinusoidal(amplitude, d);
}

StressField sinusoidal_source_stress(double amplitude, const TriangleDomain& d) {
  return StressField::cosine(2.0 * amplitude, 3.0 * kPi / d.a());
}

Poly realistic_stream_polynomial() {
  const Poly x = Poly::v1();
  const Poly y = Poly::v2();
  const Poly a = Poly::param();
  const Poly base = Poly::term(2, 0, 3) - Poly::term(2, 2, 1) - Poly::term(4, 0, 2, 1) + Poly::term(4, 1, 1, 1);
  const Poly second = y - Poly::term(100, 2, 0) - a;
  const Poly third = y + Rational(1, 4) * x - Rational(5, 6) * a;
  return base * second * third;
}

RealisticExample realistic_example(const TriangleDomain& d) {
  const Poly psi = realistic_stream_polynomial().bind_param(to_rational(d.a()));
  return {StreamFunction::exact(psi, d), wave_operator(psi)};
}

double residual(const StreamFunction& psi, const StressEvaluator& f, PhysicalPoint p, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("residual: h must be positive");
  const auto& d = psi.domain();
  const std::array<PhysicalPoint, 4> stencil{{{p.x - h, p.y}, {p.x + h, p.y}, {p.x, p.y - h}, {p.x, p.y + h}}};
  if (psi.extends_beyond_domain()) {
    if (classify(d, p, 0.0).region != Region::Interior) throw std::domain_error("residual: point is not interior");
  } else {
    for (const auto& s : stencil) {
      if (!in_closed_triangle(d, s)) throw std::domain_error("residual: stencil leaves the triangle");
    }
  }
  const double c = psi(p);
  const double xx = (psi(stencil[0]) - 2.0 * c + psi(stencil[1])) / (h * h);
  const double yy = (psi(stencil[2]) - 2.0 * c + psi(stencil[3])) / (h * h);
  return std::abs(-xx + yy - f(p.x, p.y));
}

}  // namespace cavity
