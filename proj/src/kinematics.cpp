#include "cavity/kinematics.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavity {

double Velocity::speed() const { return std::hypot(u, v); }

namespace {

// Second-order derivative estimate of g along one axis at x; central when the
// stencil is admissible, one-sided otherwise. At a vertex neither side fits and
// g is differenced through its clamped evaluation.
template <typename G, typename Admissible>
double axis_derivative(const G& g, double x, double h, const Admissible& ok) {
  if (ok(x - h) && ok(x + h)) return (g(x + h) - g(x - h)) / (2.0 * h);
  if (ok(x + h) && ok(x + 2.0 * h)) return (-3.0 * g(x) + 4.0 * g(x + h) - g(x + 2.0 * h)) / (2.0 * h);
  if (ok(x - h) && ok(x - 2.0 * h)) return (3.0 * g(x) - 4.0 * g(x - h) + g(x - 2.0 * h)) / (2.0 * h);
  return (g(x + h) - g(x - h)) / (2.0 * h);
}

double distance_to_segment(PhysicalPoint p, PhysicalPoint s0, PhysicalPoint s1) {
  const double dx = s1.x - s0.x;
  const double dy = s1.y - s0.y;
  const double len2 = dx * dx + dy * dy;
  double tau = len2 > 0.0 ? ((p.x - s0.x) * dx + (p.y - s0.y) * dy) / len2 : 0.0;
  tau = std::clamp(tau, 0.0, 1.0);
  return std::hypot(p.x - (s0.x + tau * dx), p.y - (s0.y + tau * dy));
}

}  // namespace

VelocityField::VelocityField(StreamFunction psi, VelocityMode mode, double h)
    : psi_(std::move(psi)), mode_(mode), h_(h) {
  if (mode_ == VelocityMode::ExactPoly) {
    const Poly* p = psi_.exact_poly();
    if (!p) throw std::invalid_argument("VelocityField::exact: stream function is not an exact polynomial");
    const double a = psi_.domain().a();
    Exact e;
    e.u = diff(*p, Var::V2);
    e.v = -diff(*p, Var::V1);
    e.cu = CompiledPoly(e.u, a);
    e.cv = CompiledPoly(e.v, a);
    e.ux = CompiledPoly(diff(e.u, Var::V1), a);
    e.uy = CompiledPoly(diff(e.u, Var::V2), a);
    e.vx = CompiledPoly(diff(e.v, Var::V1), a);
    e.vy = CompiledPoly(diff(e.v, Var::V2), a);
    exact_ = std::move(e);
  }
  for (const auto& p : triangle_lattice(psi_.domain(), 21)) scale_ = std::max(scale_, evaluate(p).speed());
}

VelocityField VelocityField::exact(const StreamFunction& psi) { return VelocityField(psi, VelocityMode::ExactPoly, 0.0); }

VelocityField VelocityField::analytic(const StreamFunction& psi) { return VelocityField(psi, VelocityMode::Analytic, 0.0); }

VelocityField VelocityField::numeric(const StreamFunction& psi, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("VelocityField::numeric: h must be positive");
  return VelocityField(psi, VelocityMode::NumericDifferences, h);
}

VelocityField VelocityField::best(const StreamFunction& psi) {
  return psi.exact_poly() ? exact(psi) : analytic(psi);
}

Velocity VelocityField::operator()(PhysicalPoint p) const {
  const auto& d = psi_.domain();
  if (!in_closed_triangle(d, p, 1e-10 * d.a())) throw std::domain_error("velocity: point outside the cavity");
  return evaluate(p);
}

Velocity VelocityField::evaluate(PhysicalPoint p) const {
  switch (mode_) {
    case VelocityMode::ExactPoly:
      return {exact_->cu(p.x, p.y), exact_->cv(p.x, p.y)};
    case VelocityMode::Analytic: {
      const Gradient g = psi_.gradient(p);
      return {g.dy, -g.dx};
    }
    case VelocityMode::NumericDifferences: {
      const auto& d = psi_.domain();
      const bool free = psi_.extends_beyond_domain();
      auto okx = [&](double x) { return free || in_closed_triangle(d, {x, p.y}); };
      auto oky = [&](double y) { return free || in_closed_triangle(d, {p.x, y}); };
      const double dx = axis_derivative([&](double x) { return psi_({x, p.y}); }, p.x, h_, okx);
      const double dy = axis_derivative([&](double y) { return psi_({p.x, y}); }, p.y, h_, oky);
      return {dy, -dx};
    }
  }
  return {};
}

VelocityJacobian VelocityField::jacobian(PhysicalPoint p) const {
  if (exact_) {
    return {exact_->ux(p.x, p.y), exact_->uy(p.x, p.y), exact_->vx(p.x, p.y), exact_->vy(p.x, p.y)};
  }
  const auto& d = psi_.domain();
  const double h = 1e-5 * d.a();
  const bool free = psi_.extends_beyond_domain();
  auto okx = [&](double x) { return free || in_closed_triangle(d, {x, p.y}); };
  auto oky = [&](double y) { return free || in_closed_triangle(d, {p.x, y}); };
  auto along_x = [&](double x) { return evaluate({x, p.y}); };
  auto along_y = [&](double y) { return evaluate({p.x, y}); };
  VelocityJacobian j;
  j.ux = axis_derivative([&](double x) { return along_x(x).u; }, p.x, h, okx);
  j.vx = axis_derivative([&](double x) { return along_x(x).v; }, p.x, h, okx);
  j.uy = axis_derivative([&](double y) { return along_y(y).u; }, p.y, h, oky);
  j.vy = axis_derivative([&](double y) { return along_y(y).v; }, p.y, h, oky);
  return j;
}

std::string_view to_string(StagnationKind kind) {
  switch (kind) {
    case StagnationKind::Center:
      return "center";
    case StagnationKind::Saddle:
      return "saddle";
    case StagnationKind::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Closed:
      return "closed";
    case Termination::HitBoundary:
      return "hit_boundary";
    case Termination::StepLimit:
      return "step_limit";
    case Termination::Stagnant:
      return "stagnant";
  }
  return "unknown";
}

StagnationKind classify_jacobian(const VelocityJacobian& j) {
  const double trace = j.ux + j.vy;
  const double det = j.ux * j.vy - j.uy * j.vx;
  const double norm2 = j.ux * j.ux + j.uy * j.uy + j.vx * j.vx + j.vy * j.vy;
  if (norm2 == 0.0 || std::abs(det) <= 1e-10 * norm2) return StagnationKind::Degenerate;
  const double disc = trace * trace - 4.0 * det;
  if (disc < 0.0) {
    // complex pair: |Re| = |trace|/2, |lambda| = sqrt(det)
    return 0.5 * std::abs(trace) <= 1e-8 * std::sqrt(det) ? StagnationKind::Center : StagnationKind::Degenerate;
  }
  return det < 0.0 ? StagnationKind::Saddle : StagnationKind::Degenerate;
}

namespace {

std::optional<PhysicalPoint> newton(const VelocityField& field, const TriangleDomain& d, PhysicalPoint p, double tol) {
  Velocity f = field.evaluate(p);
  double r = f.speed();
  int polish = 0;
  for (int iter = 0; iter < 80; ++iter) {
    if (r <= tol) {
      if (r == 0.0 || polish == 3) return p;
      ++polish;
    }
    const VelocityJacobian j = field.jacobian(p);
    const double det = j.ux * j.vy - j.uy * j.vx;
    if (det == 0.0 || !std::isfinite(det)) return r <= tol ? std::optional(p) : std::nullopt;
    const double dx = -(j.vy * f.u - j.uy * f.v) / det;
    const double dy = -(-j.vx * f.u + j.ux * f.v) / det;
    double lambda = 1.0;
    bool improved = false;
    PhysicalPoint q = p;
    Velocity fq;
    for (int halving = 0; halving <= 30; ++halving, lambda *= 0.5) {
      q = {p.x + lambda * dx, p.y + lambda * dy};
      fq = field.evaluate(q);
      if (fq.speed() < r) {
        improved = true;
        break;
      }
    }
    if (!improved) return r <= tol ? std::optional(p) : std::nullopt;
    p = q;
    f = fq;
    r = fq.speed();
    if (std::abs(p.x - d.a()) > 2.0 * d.a() || std::abs(p.y) > 2.0 * d.a()) return std::nullopt;
  }
  return r <= tol ? std::optional(p) : std::nullopt;
}

}  // namespace

std::vector<StagnationPoint> stagnation_points(const VelocityField& v, const TriangleDomain& d, int seeds_per_axis,
                                               double tol) {
  if (seeds_per_axis < 1) throw std::invalid_argument("stagnation_points: seeds_per_axis must be positive");
  if (tol <= 0.0) tol = v.scale() > 0.0 ? 1e-10 * v.scale() : 1e-10;
  std::vector<StagnationPoint> found;
  const int n = seeds_per_axis;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const PhysicalPoint seed{2.0 * d.a() * (i + 0.5) / n, d.a() * (j + 0.5) / n};
      if (classify(d, seed, 0.0).region != Region::Interior) continue;
      auto root = newton(v, d, seed, tol);
      if (!root || !in_closed_triangle(d, *root, 1e-9 * d.a())) continue;
      root = project_to_triangle(d, *root);
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const StagnationPoint& s) {
        return std::hypot(s.location.x - root->x, s.location.y - root->y) <= 10.0 * tol;
      });
      if (duplicate) continue;
      found.push_back({*root, classify_jacobian(v.jacobian(*root)), v.evaluate(*root).speed()});
    }
  }
  std::sort(found.begin(), found.end(), [](const StagnationPoint& l, const StagnationPoint& r) {
    if (l.location.y != r.location.y) return l.location.y < r.location.y;
    return l.location.x < r.location.x;
  });
  return found;
}

Streamline trace_streamline(const VelocityField& v, PhysicalPoint seed, double step, int max_steps) {
  const auto& d = v.source().domain();
  if (!(step > 0.0)) throw std::invalid_argument("trace_streamline: step must be positive");
  if (max_steps < 1) throw std::invalid_argument("trace_streamline: max_steps must be positive");
  if (classify(d, seed, 0.0).region != Region::Interior) throw std::domain_error("trace_streamline: seed is not interior");

  const double stagnant = v.scale() > 0.0 ? 1e-10 * v.scale() : 0.0;
  auto tangent = [&](PhysicalPoint p) -> std::optional<std::array<double, 2>> {
    const Velocity w = v.evaluate(p);
    const double s = w.speed();
    if (s <= stagnant) return std::nullopt;
    return std::array<double, 2>{w.u / s, w.v / s};
  };

  Streamline line;
  line.vertices.push_back(seed);
  auto k1 = tangent(seed);
  if (!k1) {
    line.termination = Termination::Stagnant;
    return line;
  }

  double winding = 0.0;
  PhysicalPoint p = seed;
  line.termination = Termination::StepLimit;
  for (int n = 0; n < max_steps; ++n) {
    const auto k2 = tangent({p.x + 0.5 * step * (*k1)[0], p.y + 0.5 * step * (*k1)[1]});
    if (!k2) break;
    const auto k3 = tangent({p.x + 0.5 * step * (*k2)[0], p.y + 0.5 * step * (*k2)[1]});
    if (!k3) break;
    const auto k4 = tangent({p.x + step * (*k3)[0], p.y + step * (*k3)[1]});
    if (!k4) break;
    PhysicalPoint next{p.x + step / 6.0 * ((*k1)[0] + 2.0 * (*k2)[0] + 2.0 * (*k3)[0] + (*k4)[0]),
                       p.y + step / 6.0 * ((*k1)[1] + 2.0 * (*k2)[1] + 2.0 * (*k3)[1] + (*k4)[1])};
    if (!in_closed_triangle(d, next)) {
      line.vertices.push_back(project_to_boundary(d, next));
      line.termination = Termination::HitBoundary;
      break;
    }
    line.vertices.push_back(next);
    const auto k_next = tangent(next);
    if (!k_next) break;
    winding += std::atan2((*k1)[0] * (*k_next)[1] - (*k1)[1] * (*k_next)[0],
                          (*k1)[0] * (*k_next)[0] + (*k1)[1] * (*k_next)[1]);
    if (n + 1 >= 10 && std::abs(winding) >= 1.5 * std::numbers::pi &&
        distance_to_segment(seed, p, next) <= 0.5 * step) {
      line.termination = Termination::Closed;
      break;
    }
    p = next;
    k1 = k_next;
  }

  const auto& psi = v.source();
  const double psi0 = psi(seed);
  for (const auto& q : line.vertices) line.psi_drift = std::max(line.psi_drift, std::abs(psi(q) - psi0));
  return line;
}

namespace {

std::pair<PhysicalPoint, PhysicalPoint> profile_segment(const TriangleDomain& d, const ProfileLine& line) {
  const double a = d.a();
  if (const auto* vl = std::get_if<VerticalLine>(&line)) {
    if (!(vl->x0 >= 0.0 && vl->x0 <= 2.0 * a)) throw std::domain_error("u_profile: line misses the cavity");
    return {{vl->x0, 0.0}, {vl->x0, std::min(vl->x0, 2.0 * a - vl->x0)}};
  }
  const double y0 = std::get<HorizontalLine>(line).y0;
  if (!(y0 >= 0.0 && y0 <= a)) throw std::domain_error("u_profile: line misses the cavity");
  return {{y0, y0}, {2.0 * a - y0, y0}};
}

}  // namespace

std::vector<ProfileSample> u_profile(const VelocityField& v, const ProfileLine& line, int n) {
  if (n < 2) throw std::invalid_argument("u_profile: need at least 2 samples");
  const auto [p0, p1] = profile_segment(v.source().domain(), line);
  const bool vertical = std::holds_alternative<VerticalLine>(line);
  std::vector<ProfileSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double tau = static_cast<double>(i) / (n - 1);
    const PhysicalPoint p{p0.x + tau * (p1.x - p0.x), p0.y + tau * (p1.y - p0.y)};
    out.push_back({vertical ? p.y : p.x, v(p).u});
  }
  return out;
}

std::vector<double> u_profile_zeros(const VelocityField& v, const ProfileLine& line, int n) {
  const auto samples = u_profile(v, line, n);
  const bool vertical = std::holds_alternative<VerticalLine>(line);
  const double fixed = vertical ? std::get<VerticalLine>(line).x0 : std::get<HorizontalLine>(line).y0;
  auto u_at = [&](double c) { return v.evaluate(vertical ? PhysicalPoint{fixed, c} : PhysicalPoint{c, fixed}).u; };

  std::vector<double> zeros;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    if (samples[i].u == 0.0) zeros.push_back(samples[i].coordinate);
  }
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& l = samples[i];
    const auto& r = samples[i + 1];
    if (l.u == 0.0 || r.u == 0.0 || (l.u > 0.0) == (r.u > 0.0)) continue;
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(u_at, l.coordinate, r.coordinate, l.u, r.u,
                                                            boost::math::tools::eps_tolerance<double>(52), max_iter);
    zeros.push_back(0.5 * (lo + hi));
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

}  // namespace cavity
