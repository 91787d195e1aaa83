#include "cavity/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace cavity {

void QuadratureSpec::validate() const {
  if (order < 1) throw std::invalid_argument("QuadratureSpec: order must be >= 1");
  if (subdivision < 1) throw std::invalid_argument("QuadratureSpec: subdivision must be >= 1");
}

QuadratureSpec default_quadrature(const TriangleDomain& d) {
  const int cells = std::max(1, static_cast<int>(std::ceil(2.0 * d.a() / 0.25)));
  return QuadratureSpec{12, cells};
}

namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // one more derivative evaluation at the converged node
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double integrate_line(const Integrand1& g, double lo, double hi, const QuadratureSpec& spec) {
  spec.validate();
  if (hi == lo) return 0.0;
  const GaussRule& rule = gauss_legendre(spec.order);
  const double cell = (hi - lo) / spec.subdivision;
  double total = 0.0;
  for (int c = 0; c < spec.subdivision; ++c) {
    const double mid = lo + (c + 0.5) * cell;
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) sum += rule.weights[k] * g(mid + 0.5 * cell * rule.nodes[k]);
    total += 0.5 * cell * sum;
  }
  return total;
}

double integrate_rect(const Integrand2& g, const Rect& r, const QuadratureSpec& spec) {
  spec.validate();
  if (r.degenerate()) return 0.0;
  const GaussRule& rule = gauss_legendre(spec.order);
  const int n = spec.subdivision;
  const double ht = (r.t1 - r.t0) / n;
  const double hs = (r.s1 - r.s0) / n;
  double total = 0.0;
  for (int ct = 0; ct < n; ++ct) {
    const double tm = r.t0 + (ct + 0.5) * ht;
    for (int cs = 0; cs < n; ++cs) {
      const double sm = r.s0 + (cs + 0.5) * hs;
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = tm + 0.5 * ht * rule.nodes[i];
        double inner = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) inner += rule.weights[j] * g(t, sm + 0.5 * hs * rule.nodes[j]);
        sum += rule.weights[i] * inner;
      }
      total += 0.25 * ht * hs * sum;
    }
  }
  return total;
}

}  // namespace cavity
