#include "einstein_barrier/manifold_points.h"

#include <stdexcept>

namespace einstein_barrier {

Rational RationalSampler::next(std::int64_t max_num, std::int64_t max_den) {
  const auto num = static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(2 * max_num + 1)) - max_num;
  const auto den = static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(max_den)) + 1;
  return make_rational(num, den);
}

Rational RationalSampler::in_range(const Rational& lo, const Rational& hi, std::int64_t steps) {
  const auto i = static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(steps + 1));
  return lo + (hi - lo) * make_rational(i, steps);
}

std::optional<PhasePoint<Rational>> on_manifold_point(const StructuralTriple& t, const PhasePoint<Rational>& v) {
  // The residual is quadratic along the line and vanishes at t = 0:
  // r(t) = L t + Q t^2, so r(1) = L + Q and r(-1) = Q - L.
  const ModelConstants<Rational> c(t);
  const auto p0 = critical_point<Rational>(t, +1);
  auto at = [&](const Rational& s) {
    return PhasePoint<Rational>{p0.X1 + s * v.X1, p0.X2 + s * v.X2, p0.Y + s * v.Y, p0.Z + s * v.Z};
  };
  const Rational rp = conservation_residual(at(1), c);
  const Rational rm = conservation_residual(at(-1), c);
  const Rational quad = (rp + rm) / 2;
  const Rational lin = (rp - rm) / 2;
  if (quad == 0 || lin == 0) return std::nullopt;
  return at(-lin / quad);
}

PhasePoint<Rational> random_manifold_point(const StructuralTriple& t, RationalSampler& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const PhasePoint<Rational> v{rng.next(9, 7), rng.next(9, 7), rng.next(9, 7), rng.next(9, 7)};
    auto p = on_manifold_point(t, v);
    if (p && p->X1 != 0 && p->Y != 0) return *p;
  }
  throw std::runtime_error("random_manifold_point: no admissible direction found");
}

std::optional<GammaPoint> gamma_point(const StructuralTriple& t, const Rational& l) {
  const Rational d1 = t.d1, d2 = t.d2, n = t.n();
  // (d1 R1 + d2 R2) / Y^2 at X1 = X2 = 0.
  const Rational per_y2 = d1 * (d1 - 1) + d2 * (d2 - 1) * l - d1 * t.A * l * l;
  if (per_y2 <= 0) return std::nullopt;
  return GammaPoint{l, (n - 1) / (n * per_y2)};
}

}  // namespace einstein_barrier
