#include "cavity/stress.hpp"

#include <cmath>
#include <fmt/format.h>
#include <memory>
#include <stdexcept>

namespace cavity {

StressField StressField::polynomial(Poly f) { return StressField(Polynomial{std::move(f)}); }

StressField StressField::cosine(double amplitude, double wavenumber) {
  if (!std::isfinite(amplitude) || !std::isfinite(wavenumber))
    throw std::invalid_argument("StressField::cosine: non-finite parameter");
  return StressField(Cosine{amplitude, wavenumber});
}

StressField StressField::opaque(StressEvaluator eval, std::string label) {
  if (!eval) throw std::invalid_argument("StressField::opaque: empty evaluator");
  return StressField(Opaque{std::move(eval), std::move(label)});
}

const Poly* StressField::as_polynomial() const {
  const auto* p = std::get_if<Polynomial>(&kind_);
  return p ? &p->f : nullptr;
}

const StressField::Cosine* StressField::as_cosine() const { return std::get_if<Cosine>(&kind_); }

StressEvaluator StressField::bind(const TriangleDomain& d) const {
  return std::visit(
      [&d](const auto& k) -> StressEvaluator {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          auto compiled = std::make_shared<const CompiledPoly>(k.f, d.a());
          return [compiled](double x, double y) { return (*compiled)(x, y); };
        } else if constexpr (std::is_same_v<T, Cosine>) {
          return [amp = k.amplitude, wn = k.wavenumber](double, double y) { return amp * std::cos(wn * y); };
        } else {
          return k.eval;
        }
      },
      kind_);
}

double StressField::sampled_max_abs(const TriangleDomain& d) const {
  const auto f = bind(d);
  double m = 0.0;
  for (const auto& p : triangle_lattice(d, 33)) m = std::max(m, std::abs(f(p.x, p.y)));
  return m;
}

std::string StressField::describe() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return "polynomial " + k.f.to_string();
        } else if constexpr (std::is_same_v<T, Cosine>) {
          return fmt::format("cosine {:.17g} * cos({:.17g} * y)", k.amplitude, k.wavenumber);
        } else {
          return "opaque " + k.label;
        }
      },
      kind_);
}

Poly linear_example_stress() { return Poly::term(16, 0, 1) - Poly::term(8, 0, 0, 1); }

}  // namespace cavity
