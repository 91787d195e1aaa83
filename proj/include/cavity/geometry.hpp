#pragma once

#include "cavity/polynomial.hpp"

#include <array>
#include <utility>
#include <vector>

namespace cavity {

struct PhysicalPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const PhysicalPoint&, const PhysicalPoint&) = default;
};

/// Point in the characteristic plane, X = x + y, Y = -x + y.
struct CharPoint {
  double X = 0.0;
  double Y = 0.0;
  friend bool operator==(const CharPoint&, const CharPoint&) = default;
};

enum class Edge { OA = 0, OB = 1, AB = 2 };
enum class Region { Interior, Boundary, Exterior };

struct Classification {
  Region region = Region::Exterior;
  Edge edge = Edge::OA;  // meaningful only for Region::Boundary
};

/// Right isosceles triangle with vertices O=(0,0), A=(2a,0), B=(a,a).
class TriangleDomain {
 public:
  explicit TriangleDomain(double a);

  double a() const { return a_; }
  PhysicalPoint vertex_o() const { return {0.0, 0.0}; }
  PhysicalPoint vertex_a() const { return {2.0 * a_, 0.0}; }
  PhysicalPoint vertex_b() const { return {a_, a_}; }
  std::array<PhysicalPoint, 3> vertices() const { return {vertex_o(), vertex_a(), vertex_b()}; }
  double area() const { return a_ * a_; }
  double perimeter() const;

 private:
  double a_;
};

/// Axis-aligned rectangle [t0, t1] x [s0, s1] in the (t, s) integration plane.
struct Rect {
  double t0 = 0.0, t1 = 0.0;
  double s0 = 0.0, s1 = 0.0;

  double area() const { return (t1 - t0) * (s1 - s0); }
  bool degenerate() const { return t1 <= t0 || s1 <= s0; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// The two rectangles making up the integration region of the solution
/// formula for one evaluation point: [-Y, X] x [Y, 0] and [X, 2a] x [-X, 0].
struct SigmaDecomposition {
  Rect rect1;
  Rect rect2;
};

CharPoint to_characteristic(PhysicalPoint p);
PhysicalPoint to_physical(CharPoint q);

/// Vertices classify as Boundary with the lowest-index incident edge.
Classification classify(const TriangleDomain& d, PhysicalPoint p, double tol);

bool in_closed_triangle(const TriangleDomain& d, PhysicalPoint p, double tol = 0.0);

/// Nearest point of the closed triangle.
PhysicalPoint project_to_triangle(const TriangleDomain& d, PhysicalPoint p);

/// Nearest point on the boundary.
PhysicalPoint project_to_boundary(const TriangleDomain& d, PhysicalPoint p);

/// Throws std::domain_error when q lies outside the closed characteristic
/// triangle 0 <= X <= 2a, -X <= Y <= 0 (with a relative slack of 1e-12).
SigmaDecomposition sigma_rectangles(const TriangleDomain& d, CharPoint q);

/// n >= 3 points on the boundary walking O -> A -> B -> O. Each edge receives a
/// share of the n segments proportional to its length (largest remainder).
std::vector<PhysicalPoint> boundary_sample(const TriangleDomain& d, int n);

/// Same points as boundary_sample in exact arithmetic; every point lies exactly
/// on its edge.
std::vector<std::pair<Rational, Rational>> boundary_sample_exact(const TriangleDomain& d, int n);

/// Points of the regular n x n lattice over [0, 2a] x [0, a] that lie in the
/// closed triangle, row-major (y outer, x inner).
std::vector<PhysicalPoint> triangle_lattice(const TriangleDomain& d, int n);

}  // namespace cavity
