#pragma once

#include "cavity/geometry.hpp"
#include "cavity/polynomial.hpp"
#include "cavity/solver.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cavity {

struct Velocity {
  double u = 0.0;
  double v = 0.0;
  double speed() const;
};

/// Velocity Jacobian [[du/dx, du/dy], [dv/dx, dv/dy]].
struct VelocityJacobian {
  double ux = 0.0, uy = 0.0, vx = 0.0, vy = 0.0;
};

enum class VelocityMode {
  ExactPoly,           // u = d_y psi, v = -d_x psi as exact polynomials
  Analytic,            // the backing's own gradient (closed form or differentiated integral)
  NumericDifferences,  // central differences of psi with step h
};

/// u = d psi / dy, v = -d psi / dx.
class VelocityField {
 public:
  /// Requires an exact polynomial backing.
  static VelocityField exact(const StreamFunction& psi);
  static VelocityField analytic(const StreamFunction& psi);
  static VelocityField numeric(const StreamFunction& psi, double h);
  /// ExactPoly when available, Analytic otherwise.
  static VelocityField best(const StreamFunction& psi);

  VelocityMode mode() const { return mode_; }
  const StreamFunction& source() const { return psi_; }
  /// Exact polynomial components in ExactPoly mode.
  const Poly* u_poly() const { return exact_ ? &exact_->u : nullptr; }
  const Poly* v_poly() const { return exact_ ? &exact_->v : nullptr; }

  /// Rejects points outside the closed triangle.
  Velocity operator()(PhysicalPoint p) const;
  /// No domain check; quadrature backings clamp to the closed triangle.
  Velocity evaluate(PhysicalPoint p) const;
  VelocityJacobian jacobian(PhysicalPoint p) const;

  /// max speed over an interior lattice.
  double scale() const { return scale_; }

 private:
  struct Exact {
    Poly u, v;
    CompiledPoly cu, cv, ux, uy, vx, vy;
  };

  VelocityField(StreamFunction psi, VelocityMode mode, double h);

  StreamFunction psi_;
  VelocityMode mode_;
  double h_ = 0.0;
  std::optional<Exact> exact_;
  double scale_ = 0.0;
};

enum class StagnationKind { Center, Saddle, Degenerate };
std::string_view to_string(StagnationKind kind);

struct StagnationPoint {
  PhysicalPoint location;
  StagnationKind kind = StagnationKind::Degenerate;
  double residual_speed = 0.0;
};

/// Eigenvalue classification of the velocity Jacobian.
StagnationKind classify_jacobian(const VelocityJacobian& j);

/// Damped Newton from a seeds_per_axis^2 lattice restricted to the interior.
/// Converged roots in the closed triangle are deduplicated within 10 tol and
/// returned sorted by (y, x). tol <= 0 selects 1e-10 * scale().
std::vector<StagnationPoint> stagnation_points(const VelocityField& v, const TriangleDomain& d, int seeds_per_axis,
                                               double tol = 0.0);

enum class Termination { Closed, HitBoundary, StepLimit, Stagnant };
std::string_view to_string(Termination t);

struct Streamline {
  std::vector<PhysicalPoint> vertices;
  Termination termination = Termination::StepLimit;
  /// max |psi(vertex) - psi(seed)|
  double psi_drift = 0.0;
};

/// Fixed-step classical RK4 along the unit tangent u / |u|, so `step` is an arc
/// length. Closed requires passing within step/2 of the seed after at least
/// 10 steps with the tangent having turned through at least 3 pi / 2.
Streamline trace_streamline(const VelocityField& v, PhysicalPoint seed, double step, int max_steps);

struct VerticalLine {
  double x0 = 0.0;
};
struct HorizontalLine {
  double y0 = 0.0;
};
using ProfileLine = std::variant<VerticalLine, HorizontalLine>;

struct ProfileSample {
  double coordinate = 0.0;  // y for a vertical line, x for a horizontal one
  double u = 0.0;
};

/// n >= 2 equally spaced samples of u along the line's intersection with the
/// closed triangle, endpoints included.
std::vector<ProfileSample> u_profile(const VelocityField& v, const ProfileLine& line, int n);

/// Zeros of u strictly inside the intersection segment, bracketed on an n-point
/// sampling and refined by TOMS 748.
std::vector<double> u_profile_zeros(const VelocityField& v, const ProfileLine& line, int n);

}  // namespace cavity
