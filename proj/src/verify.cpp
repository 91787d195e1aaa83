#include "cavity/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace cavity {

FieldUnderTest FieldUnderTest::from(const StreamFunction& psi) {
  FieldUnderTest field;
  field.eval = [psi](PhysicalPoint p) { return psi(p); };
  if (const Poly* p = psi.exact_poly()) field.exact = *p;
  if (const auto* q = std::get_if<StreamFunction::Quadrature>(&psi.backing())) field.quadrature_stress = q->stress;
  field.extends_beyond_domain = psi.extends_beyond_domain();
  return field;
}

bool VerificationReport::pde_pass() const { return max_interior_residual <= options.tol_pde; }

bool VerificationReport::boundary_pass() const { return max_boundary_value <= options.tol_bc * scale; }

bool VerificationReport::quadrature_pass() const {
  if (!quadrature_vs_riemann) return true;
  return *quadrature_vs_riemann <= options.tol_quadrature * (scale > 0.0 ? scale : 1.0);
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = passed();
  j["scale"] = scale;
  j["pde_residual"] = {{"max", max_interior_residual},
                       {"tolerance", options.tol_pde},
                       {"method", exact_residual ? "exact_polynomial" : "finite_difference"},
                       {"h", options.h},
                       {"points", interior_points},
                       {"pass", pde_pass()}};
  j["boundary"] = {{"max_abs_psi", max_boundary_value},
                   {"tolerance", options.tol_bc * scale},
                   {"points", boundary_points},
                   {"pass", boundary_pass()}};
  if (quadrature_vs_riemann) {
    j["quadrature_vs_riemann"] = {{"max_abs_difference", *quadrature_vs_riemann},
                                  {"tolerance", options.tol_quadrature * (scale > 0.0 ? scale : 1.0)},
                                  {"pass", quadrature_pass()}};
  } else {
    j["quadrature_vs_riemann"] = nullptr;
  }
  return j;
}

std::string VerificationReport::table() const {
  auto row = [](std::string_view name, double value, double tol, bool pass) {
    return fmt::format("  {:<24} {:>12.3e} {:>12.3e}  {}\n", name, value, tol, pass ? "PASS" : "FAIL");
  };
  std::string out = fmt::format("  {:<24} {:>12} {:>12}  {}\n", "check", "value", "tolerance", "verdict");
  out += row(exact_residual ? "pde residual (exact)" : "pde residual (fd)", max_interior_residual, options.tol_pde,
             pde_pass());
  out += row("boundary |psi|", max_boundary_value, options.tol_bc * scale, boundary_pass());
  if (quadrature_vs_riemann) {
    out += row("quadrature vs riemann", *quadrature_vs_riemann, options.tol_quadrature * (scale > 0.0 ? scale : 1.0),
               quadrature_pass());
  }
  return out;
}

double midpoint_sum(const std::function<double(double, double)>& g, double t0, double t1, double s0, double s1,
                    int n) {
  if (t1 == t0 || s1 == s0) return 0.0;
  const double ht = (t1 - t0) / n;
  const double hs = (s1 - s0) / n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = t0 + (i + 0.5) * ht;
    double column = 0.0;
    for (int j = 0; j < n; ++j) column += g(t, s0 + (j + 0.5) * hs);
    total += column;
  }
  return total * ht * hs;
}

double riemann_stream_value(const StressEvaluator& f, const TriangleDomain& d, PhysicalPoint p, int n) {
  const double X = p.x + p.y;
  const double Y = p.y - p.x;
  const double two_a = 2.0 * d.a();
  auto F = [&f](double t, double s) { return f(0.5 * (t - s), 0.5 * (t + s)); };
  auto both = [&](int cells) {
    return midpoint_sum(F, -Y, X, Y, 0.0, cells) + midpoint_sum(F, X, two_a, -X, 0.0, cells);
  };
  // midpoint error is even in the cell width, so one Richardson step removes h^2
  const double fine = both(n);
  const double coarse = both(n / 2);
  return -0.25 * (4.0 * fine - coarse) / 3.0;
}

VerificationReport verify_field(const FieldUnderTest& psi, const StressField& f, const TriangleDomain& d,
                                const VerificationOptions& opts) {
  if (opts.lattice_n < 4) throw std::invalid_argument("verify: lattice_n must be at least 4");
  VerificationReport report;
  report.options = opts;
  const double h = opts.h > 0.0 ? opts.h : 1e-4 * d.a();
  report.options.h = h;

  const auto lattice = triangle_lattice(d, opts.lattice_n);
  for (const auto& p : lattice) report.scale = std::max(report.scale, std::abs(psi.eval(p)));

  const StressEvaluator g = f.bind(d);
  std::optional<CompiledPoly> exact_residual;
  if (psi.exact) {
    Poly r = wave_operator(*psi.exact);
    if (const Poly* fp = f.as_polynomial()) r -= fp->bind_param(to_rational(d.a()));
    exact_residual.emplace(r, d.a());
    report.exact_residual = true;
  }
  const bool has_poly_stress = f.as_polynomial() != nullptr;
  for (const auto& p : lattice) {
    const std::array<PhysicalPoint, 4> stencil{{{p.x - h, p.y}, {p.x + h, p.y}, {p.x, p.y - h}, {p.x, p.y + h}}};
    const bool safe = std::all_of(stencil.begin(), stencil.end(), [&](const PhysicalPoint& s) {
      return classify(d, s, 0.0).region == Region::Interior;
    });
    if (!safe) continue;
    double r = 0.0;
    if (exact_residual) {
      r = (*exact_residual)(p.x, p.y);
      if (!has_poly_stress) r -= g(p.x, p.y);
    } else {
      const double c = psi.eval(p);
      const double xx = (psi.eval(stencil[0]) - 2.0 * c + psi.eval(stencil[1])) / (h * h);
      const double yy = (psi.eval(stencil[2]) - 2.0 * c + psi.eval(stencil[3])) / (h * h);
      r = -xx + yy - g(p.x, p.y);
    }
    report.max_interior_residual = std::max(report.max_interior_residual, std::abs(r));
    ++report.interior_points;
  }

  const int n_boundary = 10 * opts.lattice_n;
  if (psi.exact) {
    const Rational a = to_rational(d.a());
    for (const auto& [x, y] : boundary_sample_exact(d, n_boundary)) {
      report.max_boundary_value = std::max(report.max_boundary_value, std::abs(to_double(psi.exact->eval_exact(x, y, a))));
    }
  } else {
    for (const auto& b : boundary_sample(d, n_boundary)) {
      report.max_boundary_value = std::max(report.max_boundary_value, std::abs(psi.eval(b)));
    }
  }
  report.boundary_points = n_boundary;

  if (psi.quadrature_stress) {
    const StressEvaluator q = psi.quadrature_stress->bind(d);
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> ux(0.0, 2.0 * d.a());
    std::uniform_real_distribution<double> uy(0.0, d.a());
    double worst = 0.0;
    for (int k = 0; k < 20;) {
      const PhysicalPoint p{ux(rng), uy(rng)};
      if (classify(d, p, 0.0).region != Region::Interior) continue;
      worst = std::max(worst, std::abs(psi.eval(p) - riemann_stream_value(q, d, p, 100)));
      ++k;
    }
    report.quadrature_vs_riemann = worst;
  }
  return report;
}

VerificationReport verify_solution(const StreamFunction& psi, const StressField& f, const VerificationOptions& opts) {
  return verify_field(FieldUnderTest::from(psi), f, psi.domain(), opts);
}

Poly random_boundary_vanishing(const TriangleDomain& d, std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> coeff(-5, 5);
  Poly q;
  for (int deg = 0; deg <= 4; ++deg) {
    for (int i = deg; i >= 0; --i) q += Poly::term(coeff(rng), i, deg - i);
  }
  const Rational a = to_rational(d.a());
  const Poly x = Poly::v1();
  const Poly y = Poly::v2();
  const Poly walls = Poly::term(2, 0, 1) * (y - x) * (x + y - Poly(2 * a));
  return walls * q;
}

UniquenessSummary uniqueness_suite(const TriangleDomain& d, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("uniqueness_suite: trials must be positive");
  UniquenessSummary summary;
  summary.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    const Poly psi0 = random_boundary_vanishing(d, seed, trial);
    bool ok = false;
    try {
      const StreamFunction solved = solve_exact_poly(wave_operator(psi0), d);
      ok = *solved.exact_poly() == psi0;
    } catch (const IncompatibleStress&) {
      ok = false;
    }
    if (ok) {
      ++summary.recovered;
    } else {
      summary.failed_trials.push_back(trial);
    }
  }
  return summary;
}

}  // namespace cavity
