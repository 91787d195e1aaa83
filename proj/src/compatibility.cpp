#include "cavity/compatibility.hpp"

#include <boost/math/special_functions/sinc.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavity {

Poly characteristic_stress(const Poly& f) { return affine_subst(f, AffineMap::to_physical()); }

Poly compat_polynomial(const Poly& f) {
  const Poly F = characteristic_stress(f);
  const Poly G = antideriv(F, Var::V2);
  const Poly t = Poly::v1();
  const Poly X = Poly::v2();
  // inner integral over s in [-X, 0], as a polynomial in (t, X)
  const Poly inner = compose(G, t, Poly()) - compose(G, t, -X);
  const Poly K = antideriv(inner, Var::V1);
  const Poly two_a = Poly::term(2, 0, 0, 1);
  const Poly in_x = compose(K, two_a, X) - compose(K, X, X);
  return compose(in_x, Poly(), Poly::v1());
}

double cosine_compat_residual(double amplitude, double wavenumber, double a, double X) {
  using boost::math::sinc_pi;
  const double k = wavenumber;
  const double u = k * X / 4.0;
  const double w = k * (2.0 * a - X) / 4.0;
  // 16 A / k^2 sin(u) sin(w) written with sinc so that k -> 0 is regular
  return amplitude * X * (2.0 * a - X) * sinc_pi(u) * sinc_pi(w) * std::cos(k * a / 2.0);
}

double compat_residual(const StressField& f, const TriangleDomain& d, double X, const QuadratureSpec& quad) {
  const double two_a = 2.0 * d.a();
  if (!(X >= 0.0 && X <= two_a)) throw std::domain_error("compat_residual: X outside [0, 2a]");
  if (const Poly* p = f.as_polynomial()) {
    return compat_polynomial(*p).eval(X, 0.0, d.a());
  }
  if (const auto* c = f.as_cosine()) {
    return cosine_compat_residual(c->amplitude, c->wavenumber, d.a(), X);
  }
  const StressEvaluator g = f.bind(d);
  auto F = [&g](double t, double s) { return g(0.5 * (t - s), 0.5 * (t + s)); };
  return integrate_rect(F, Rect{X, two_a, -X, 0.0}, quad);
}

std::vector<double> chebyshev_sweep(const TriangleDomain& d, int n) {
  if (n < 2) throw std::invalid_argument("chebyshev_sweep: need at least 2 nodes");
  std::vector<double> nodes(n);
  for (int j = 0; j < n; ++j) nodes[j] = d.a() * (1.0 - std::cos(std::numbers::pi * j / (n - 1)));
  nodes.front() = 0.0;
  nodes.back() = 2.0 * d.a();
  return nodes;
}

double CompatibilityReport::relative_residual() const {
  if (normalization > 0.0) return max_abs_residual / normalization;
  return max_abs_residual == 0.0 ? 0.0 : INFINITY;
}

nlohmann::ordered_json CompatibilityReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = compatible ? "compatible" : "incompatible";
  j["max_abs_residual"] = max_abs_residual;
  j["normalization"] = normalization;
  j["relative_residual"] = std::isfinite(relative_residual()) ? nlohmann::ordered_json(relative_residual())
                                                              : nlohmann::ordered_json(nullptr);
  j["tolerance"] = tolerance;
  j["exact_constraint"] = exact_constraint ? nlohmann::ordered_json(exact_constraint->to_string("X"))
                                           : nlohmann::ordered_json(nullptr);
  auto sweep_json = nlohmann::ordered_json::array();
  for (const auto& s : sweep) sweep_json.push_back({{"X", s.X}, {"residual", s.residual}});
  j["sweep"] = std::move(sweep_json);
  return j;
}

CompatibilityReport compat_check(const StressField& f, const TriangleDomain& d, int n_sweep, double tol) {
  return compat_check(f, d, n_sweep, tol, default_quadrature(d));
}

CompatibilityReport compat_check(const StressField& f, const TriangleDomain& d, int n_sweep, double tol,
                                 const QuadratureSpec& quad) {
  if (!(tol > 0.0)) throw std::invalid_argument("compat_check: tolerance must be positive");
  CompatibilityReport report;
  report.tolerance = tol;
  report.normalization = 4.0 * d.a() * d.a() * f.sampled_max_abs(d);

  std::optional<CompiledPoly> exact;
  if (const Poly* p = f.as_polynomial()) {
    report.exact_constraint = compat_polynomial(*p).bind_param(to_rational(d.a()));
    exact.emplace(*report.exact_constraint, d.a());
  }
  for (double X : chebyshev_sweep(d, n_sweep)) {
    const double r = exact ? (*exact)(X, 0.0) : compat_residual(f, d, X, quad);
    report.sweep.push_back({X, r});
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
  }
  report.compatible = report.exact_constraint ? report.exact_constraint->is_zero()
                                              : report.relative_residual() <= tol;
  return report;
}

namespace {

using Matrix = std::vector<std::vector<RatFunc>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pick = row;
    while (pick < m.size() && m[pick][col].is_zero()) ++pick;
    if (pick == m.size()) continue;
    std::swap(m[row], m[pick]);
    const RatFunc inv = RatFunc(UniPoly(Rational(1))) / m[row][col];
    for (auto& e : m[row]) e = e * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const RatFunc factor = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] = m[r][c] - factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

UniPoly lcm(const UniPoly& l, const UniPoly& r) { return divmod(l * r, gcd(l, r)).first; }

std::vector<UniPoly> primitive(const std::vector<RatFunc>& v) {
  UniPoly common(Rational(1));
  for (const auto& e : v) {
    if (!e.is_zero()) common = lcm(common, e.den());
  }
  std::vector<UniPoly> out;
  UniPoly content;
  for (const auto& e : v) {
    out.push_back(divmod(e.num() * common, e.den()).first);
    content = gcd(content, out.back());
  }
  Rational lead = 0;
  for (auto& e : out) {
    e = divmod(e, content).first;
    if (lead == 0 && !e.is_zero()) lead = e.leading();
  }
  for (auto& e : out) e = e * (Rational(1) / lead);
  return out;
}

ConstraintSystem build_constraints(const std::vector<Poly>& constraint_polys) {
  ConstraintSystem sys;
  const std::size_t cols = constraint_polys.size();
  int max_power = -1;
  for (const auto& c : constraint_polys) max_power = std::max(max_power, c.degree_in(Var::V1));
  for (int p = 0; p <= max_power; ++p) {
    std::vector<UniPoly> row;
    bool nonzero = false;
    for (const auto& c : constraint_polys) {
      std::vector<Rational> coeffs;
      for (const auto& [m, coeff] : c.terms()) {
        if (m.x != p) continue;
        if (static_cast<int>(coeffs.size()) <= m.a) coeffs.resize(m.a + 1);
        coeffs[m.a] += coeff;
      }
      row.emplace_back(std::move(coeffs));
      nonzero = nonzero || !row.back().is_zero();
    }
    if (!nonzero) continue;
    sys.x_powers.push_back(p);
    sys.matrix.push_back(std::move(row));
  }

  Matrix m;
  for (const auto& row : sys.matrix) {
    std::vector<RatFunc> r;
    for (const auto& e : row) r.emplace_back(e);
    m.push_back(std::move(r));
  }
  const auto pivots = rref(m, cols);
  sys.rank = static_cast<int>(pivots.size());
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<RatFunc> v(cols);
    v[free] = RatFunc(UniPoly(Rational(1)));
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = RatFunc() - m[r][free];
    sys.nullspace.push_back(primitive(v));
  }
  return sys;
}

}  // namespace

ConstraintSystem compat_constraints(std::span<const Poly> basis) {
  if (basis.empty()) throw std::invalid_argument("compat_constraints: empty basis");
  std::vector<Poly> polys;
  for (const auto& b : basis) polys.push_back(compat_polynomial(b));
  return build_constraints(polys);
}

ConstraintSystem compat_constraints(std::span<const Poly> basis, const TriangleDomain& d) {
  if (basis.empty()) throw std::invalid_argument("compat_constraints: empty basis");
  const Rational a = to_rational(d.a());
  std::vector<Poly> polys;
  for (const auto& b : basis) polys.push_back(compat_polynomial(b).bind_param(a));
  return build_constraints(polys);
}

std::vector<double> cosine_admissible_wavenumbers(const TriangleDomain& d, int n_max) {
  if (n_max < 0) throw std::invalid_argument("cosine_admissible_wavenumbers: negative n_max");
  std::vector<double> out;
  for (int n = 0; n <= n_max; ++n) {
    const double k = (2 * n + 1) * std::numbers::pi / d.a();
    if (!compat_check(StressField::cosine(1.0, k), d, 65, 1e-10).compatible)
      throw std::logic_error("cosine_admissible_wavenumbers: odd harmonic failed the compatibility check");
    out.push_back(k);
  }
  return out;
}

}  // namespace cavity
