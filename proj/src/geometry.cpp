#include "cavity/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cavity {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Signed distances to the supporting lines of OA, OB, AB; positive inside.
std::array<double, 3> edge_distances(const TriangleDomain& d, PhysicalPoint p) {
  return {p.y, (p.x - p.y) / kSqrt2, (2.0 * d.a() - p.x - p.y) / kSqrt2};
}

PhysicalPoint closest_on_segment(PhysicalPoint p, PhysicalPoint s0, PhysicalPoint s1) {
  const double dx = s1.x - s0.x;
  const double dy = s1.y - s0.y;
  const double len2 = dx * dx + dy * dy;
  double tau = ((p.x - s0.x) * dx + (p.y - s0.y) * dy) / len2;
  tau = std::clamp(tau, 0.0, 1.0);
  return {s0.x + tau * dx, s0.y + tau * dy};
}

std::array<int, 3> segment_counts(const TriangleDomain& d, int n) {
  const std::array<double, 3> lengths{2.0 * d.a(), kSqrt2 * d.a(), kSqrt2 * d.a()};
  const double total = lengths[0] + lengths[1] + lengths[2];
  std::array<int, 3> counts{};
  std::array<double, 3> remainders{};
  int assigned = 0;
  for (int e = 0; e < 3; ++e) {
    const double share = n * lengths[e] / total;
    counts[e] = static_cast<int>(std::floor(share));
    remainders[e] = share - counts[e];
    assigned += counts[e];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int l, int r) { return remainders[l] > remainders[r]; });
  for (int k = 0; assigned < n; ++k, ++assigned) ++counts[order[k % 3]];
  // every edge needs at least one segment so its end vertex is emitted
  for (int e = 0; e < 3; ++e) {
    if (counts[e] == 0) {
      ++counts[e];
      --counts[std::max_element(counts.begin(), counts.end()) - counts.begin()];
    }
  }
  return counts;
}

}  // namespace

TriangleDomain::TriangleDomain(double a) : a_(a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("TriangleDomain: a must be positive and finite");
}

double TriangleDomain::perimeter() const { return (2.0 + 2.0 * kSqrt2) * a_; }

CharPoint to_characteristic(PhysicalPoint p) { return {p.x + p.y, -p.x + p.y}; }

PhysicalPoint to_physical(CharPoint q) { return {0.5 * (q.X - q.Y), 0.5 * (q.X + q.Y)}; }

Classification classify(const TriangleDomain& d, PhysicalPoint p, double tol) {
  if (tol < 0.0) throw std::invalid_argument("classify: negative tolerance");
  const auto dist = edge_distances(d, p);
  for (double v : dist) {
    if (v < -tol) return {Region::Exterior, Edge::OA};
  }
  for (int e = 0; e < 3; ++e) {
    if (dist[e] <= tol) return {Region::Boundary, static_cast<Edge>(e)};
  }
  return {Region::Interior, Edge::OA};
}

bool in_closed_triangle(const TriangleDomain& d, PhysicalPoint p, double tol) {
  return classify(d, p, tol).region != Region::Exterior;
}

PhysicalPoint project_to_boundary(const TriangleDomain& d, PhysicalPoint p) {
  const auto [o, a, b] = d.vertices();
  const std::array<PhysicalPoint, 3> candidates{closest_on_segment(p, o, a), closest_on_segment(p, o, b),
                                                closest_on_segment(p, a, b)};
  PhysicalPoint best = candidates[0];
  double best_d2 = INFINITY;
  for (const auto& c : candidates) {
    const double d2 = (c.x - p.x) * (c.x - p.x) + (c.y - p.y) * (c.y - p.y);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

PhysicalPoint project_to_triangle(const TriangleDomain& d, PhysicalPoint p) {
  if (in_closed_triangle(d, p)) return p;
  return project_to_boundary(d, p);
}

SigmaDecomposition sigma_rectangles(const TriangleDomain& d, CharPoint q) {
  const double two_a = 2.0 * d.a();
  const double slack = 1e-12 * d.a();
  if (q.X < -slack || q.X > two_a + slack || q.Y > slack || q.Y < -q.X - slack) {
    throw std::domain_error("sigma_rectangles: point outside the closed characteristic triangle");
  }
  const double X = std::clamp(q.X, 0.0, two_a);
  const double Y = std::clamp(q.Y, -X, 0.0);
  return {Rect{-Y, X, Y, 0.0}, Rect{X, two_a, -X, 0.0}};
}

std::vector<std::pair<Rational, Rational>> boundary_sample_exact(const TriangleDomain& d, int n) {
  if (n < 3) throw std::invalid_argument("boundary_sample: n must be at least 3");
  const Rational a = to_rational(d.a());
  const std::array<std::pair<Rational, Rational>, 4> corners{
      std::pair{Rational(0), Rational(0)}, std::pair{2 * a, Rational(0)}, std::pair{a, a},
      std::pair{Rational(0), Rational(0)}};
  // walk order O->A, A->B, B->O uses edges OA, AB, OB
  const auto counts = segment_counts(d, n);
  const std::array<int, 3> walk_counts{counts[0], counts[2], counts[1]};
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(n);
  for (int leg = 0; leg < 3; ++leg) {
    const auto& [x0, y0] = corners[leg];
    const auto& [x1, y1] = corners[leg + 1];
    const int k = walk_counts[leg];
    for (int i = 0; i < k; ++i) {
      const Rational tau(i, k);
      out.emplace_back(x0 + tau * (x1 - x0), y0 + tau * (y1 - y0));
    }
  }
  return out;
}

std::vector<PhysicalPoint> boundary_sample(const TriangleDomain& d, int n) {
  std::vector<PhysicalPoint> out;
  for (const auto& [x, y] : boundary_sample_exact(d, n)) out.push_back({to_double(x), to_double(y)});
  return out;
}

std::vector<PhysicalPoint> triangle_lattice(const TriangleDomain& d, int n) {
  if (n < 2) throw std::invalid_argument("triangle_lattice: n must be at least 2");
  std::vector<PhysicalPoint> out;
  const double tol = 1e-12 * d.a();
  for (int j = 0; j < n; ++j) {
    const double y = d.a() * j / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double x = 2.0 * d.a() * i / (n - 1);
      if (in_closed_triangle(d, {x, y}, tol)) out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace cavity
