#pragma once

#include <vector>

#include "einstein_barrier/uni_poly.h"

namespace einstein_barrier {

/// Quadratic c2*l^2 + c1*l + c0 with rational coefficients. c2 may vanish.
struct QuadInL {
  Rational c2;
  Rational c1;
  Rational c0;

  Rational operator()(const Rational& l) const { return (c2 * l + c1) * l + c0; }
  double eval(double l) const { return (to_double(c2) * l + to_double(c1)) * l + to_double(c0); }
  UniPoly as_poly() const { return UniPoly({c0, c1, c2}); }
  Rational discriminant() const { return c1 * c1 - 4 * c2 * c0; }
  friend bool operator==(const QuadInL&, const QuadInL&) = default;
};

/// Determinant by exact Gaussian elimination over Q.
Rational determinant(std::vector<std::vector<Rational>> m);

/// Sylvester matrix of f and g at their actual degrees (rows of f's
/// coefficients shifted deg g times, then g's shifted deg f times, highest
/// degree first).
std::vector<std::vector<Rational>> sylvester_matrix(const UniPoly& f, const UniPoly& g);

/// Res(f, g) = det of the Sylvester matrix. Conventions at the edges:
/// Res(c, g) = c^deg g for a nonzero constant c; Res(0, g) = 0 when g is
/// nonzero. Throws std::invalid_argument when both are zero.
Rational sylvester_resultant(const UniPoly& f, const UniPoly& g);

/// Res_l(f, g) for two quadratics in l given by coefficient triples.
Rational resultant_in_l(const QuadInL& f, const QuadInL& g);

}  // namespace einstein_barrier
