#pragma once

#include <optional>

#include "einstein_barrier/interval.h"
#include "einstein_barrier/model.h"
#include "einstein_barrier/resultant.h"
#include "einstein_barrier/sturm.h"
#include "einstein_barrier/uni_poly.h"

namespace einstein_barrier {

/// d2 (d2-1)^2 / (4 (d1-1) (n+d1)). Throws std::invalid_argument for d1 < 2.
Rational bohm_bound(int d1, int d2);

/// The printed closed form of Psi; equals rho0(1)/rho1(1).
Rational psi(int d1, int d2);

/// Omega(0) = d2 (d2-1)^2 / (d1^2 (d1 d2 - d2 + 4)), the local barrier value at
/// the origin of the slice plane.
Rational local_barrier(int d1, int d2);

struct RhoPolys {
  UniPoly rho1, rho0, rho3;
};

RhoPolys rho_polys(int d1, int d2);

/// Numerator and denominator of d/dk (rho0/rho1) = 2 d2 (d2-1)^2 (d1 + d2 k)
/// rho3 / ((d1-1) S^3) with S = 2 d2^2 k^2 + d2 k^2 + 4 d1 d2 k + 2 d1 k + 2 d1^2.
RationalFunction rho_ratio_derivative_closed_form(int d1, int d2);

/// Omega(k) = -d2 (d2-1)^2 w1^2 / (4 (d1-1) (2d1 + d2 k) w0 w2).
RationalFunction omega_cap_function(int d1, int d2);
/// Xi(k) = d2 (d2-1)^2 (d1 + d2 k - 1)^2 /
///         (4 (d1-1) (d1 + d2 k - k) (d1 (n+d1-2) + d2 (n+d1-1) k)).
RationalFunction xi_cap_function(int d1, int d2);

/// Exact values; throw PoleError naming the vanishing denominator factor.
Rational omega_cap(int d1, int d2, const Rational& k);
Rational xi_cap(int d1, int d2, const Rational& k);

struct AlphaPolys {
  UniPoly a1, a2, a3, a4;
};

AlphaPolys alpha_polys(int d1, int d2);

/// d2^2 (d2-1)^2 / ((2d1 + d2 k)^2 (d1-1) w0^2 w2^2), so that
/// dOmega/dk = prefactor * a1 a2 a3 a4.
RationalFunction omega_derivative_prefactor(int d1, int d2);

/// Printed closed forms of the slopes at k = 1:
///   dXi/dk(1) = d2 n (d2-1)^2 / (2 (d1-1) (n-1) (2d1+d2)^2),
///   dOmega/dk(1) = n (d2-1)^2 (d1^2 + d1 d2 - 3 d1 - d2) / ((d1-1) (n-1) (2d1+d2)^2).
Rational xi_slope_at_one(int d1, int d2);
Rational omega_slope_at_one(int d1, int d2);

/// Q_Y(bound, 1, 2(d1-1)/(d2-1)) in closed form:
///   -2 (d1-1) (2 d1 n - 3n - 3 d1) n / ((n+d1) (n-1) d1).
Rational qy_at_bound_closed_form(int d1, int d2);

/// All scalar thresholds of a dimension pair.
struct Thresholds {
  int d1 = 0;
  int d2 = 0;
  Rational bohm_bound;
  Rational psi;
  Rational local_barrier;
  RationalFunction omega_cap;
  RationalFunction xi_cap;

  Rational omega_cap_at(const Rational& k) const;
  Rational xi_cap_at(const Rational& k) const;
};

Thresholds thresholds(int d1, int d2);

/// a + b sqrt(d) with d >= 0, compared exactly.
struct QuadraticSurd {
  Rational a;
  Rational b;
  Rational d;

  int sign() const;
  double approx() const;
};

/// Value of a quadratic at a surd, again a surd over the same radicand.
QuadraticSurd evaluate(const QuadInL& f, const QuadraticSurd& x);

/// A real algebraic root: an exact rational when one exists, otherwise an
/// isolating interval, plus the surd form for exact sign work.
struct AlgebraicRoot {
  RatInterval enclosure;
  std::optional<Rational> exact;
  QuadraticSurd surd;

  /// Exact value or the enclosure midpoint, rounded to double.
  double approx() const;
};

/// ((n+d1)/d2) A l^2 - (d2-1) l + (d1-1).
QuadInL homogeneous_quadratic(const StructuralTriple& t);

/// mu2 <= mu1, the real roots of the homogeneous quadratic.
struct MuRoots {
  AlgebraicRoot mu2;
  AlgebraicRoot mu1;
};

/// Throws DegenerateEquationError for A = 0 (the linear root is
/// (d1-1)/(d2-1)) and NoRealRootsError for A above the Böhm bound.
MuRoots mu_roots(const StructuralTriple& t, const Rational& width = default_isolation_width());

/// Isolating interval of the unique root of px_tilde in (-d1/d2, 0), after
/// checking the bracketing
///   -d1 (n+d1-2) / (d2 (n+d1-1)) < k_star < -(d1-1)/d2.
/// Requires d2 >= d1 >= 2; throws InconsistencyError when the root count or
/// the bracketing fails.
RatInterval k_star(int d1, int d2, const Rational& width = default_isolation_width());

/// The two bracketing endpoints above.
Rational k_star_lower_bracket(int d1, int d2);
Rational k_star_upper_bracket(int d1, int d2);

}  // namespace einstein_barrier
