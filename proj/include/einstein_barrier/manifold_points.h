#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "einstein_barrier/model.h"

namespace einstein_barrier {

/// Deterministic source of small random rationals.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  /// p/q with |p| <= max_num and 1 <= q <= max_den.
  Rational next(std::int64_t max_num, std::int64_t max_den);
  /// Uniform rational in [lo, hi] on a grid of `steps` cells.
  Rational in_range(const Rational& lo, const Rational& hi, std::int64_t steps);
  std::uint64_t next_u64() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

/// Exact rational point on the invariant set: the second intersection of the
/// line p0+ + t v with the conservation quadric, for a random rational v.
/// Returns nullopt when the line is tangent or lies in the quadric.
std::optional<PhasePoint<Rational>> on_manifold_point(const StructuralTriple& t, const PhasePoint<Rational>& v);

/// Draws directions until on_manifold_point succeeds with X1 != 0 and Y != 0.
PhasePoint<Rational> random_manifold_point(const StructuralTriple& t, RationalSampler& rng);

/// A point of Gamma = {X1 = X2 = 0} on the invariant set, described by
/// l = Z/Y and Y^2 solved from the constraint (d1 R1 + d2 R2)/(n-1) = 1/n.
struct GammaPoint {
  Rational l;
  Rational y_squared;
};

/// nullopt when the constraint has no positive Y^2 at this l.
std::optional<GammaPoint> gamma_point(const StructuralTriple& t, const Rational& l);

}  // namespace einstein_barrier
