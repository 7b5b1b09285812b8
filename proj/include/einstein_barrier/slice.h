#pragma once

#include "einstein_barrier/model.h"
#include "einstein_barrier/resultant.h"
#include "einstein_barrier/uni_poly.h"

namespace einstein_barrier {

/// Coefficient polynomials in k of the slice decomposition. On the invariant
/// set, with k = X2/X1 and l = Z/Y,
///   P = (py2 A l^2 + py1 l + py0) Y^2 X1 + px X1^3,
///   Q = (qy2 A l^2 + qy1 l + qy0) Y^2 X1 + qx X1^3.
struct SlicePolys {
  UniPoly py2, py1, py0;
  UniPoly qy2, qy1, qy0;
  UniPoly px, qx;
};

SlicePolys slice_polys(int d1, int d2);

/// P_X = px_tilde (1 - k) / (d1 (n - 1)).
UniPoly px_tilde(int d1, int d2);

/// Slice coefficients at a fixed (A, k).
struct SliceCoeffs {
  QuadInL p_y;
  QuadInL q_y;
  Rational p_x;
  Rational q_x;
};

SliceCoeffs slice_coefficients(const StructuralTriple& t, const Rational& k);

/// omega = Q_Y P_X - Q_X P_Y as a quadratic in l, from the definition.
QuadInL omega_quad(const StructuralTriple& t, const Rational& k);
Rational omega_value(const StructuralTriple& t, const Rational& k, const Rational& l);

/// omega_2, omega_1, omega_0 of the factor form
///   omega = ((2d1 + d2 k)/d2 w2 A l^2 + (d2-1) k w1 l - (d1-1) k^2 w0) / (d1^2 (n-1)).
struct OmegaFactors {
  UniPoly w2, w1, w0;
};

OmegaFactors omega_factors(int d1, int d2);
Rational omega_factor_form(const StructuralTriple& t, const Rational& k, const Rational& l);

/// Closed forms of the two resultants in l:
///   Res(Q_Y, P_Y) = (d1-1) A / (d1^2 d2^2 (n-1)^2) (rho1 A - rho0),
///   Res(omega, P_Y) = P_X^2 Res(Q_Y, P_Y).
Rational resultant_qy_py_closed_form(const StructuralTriple& t, const Rational& k);
Rational resultant_omega_py_closed_form(const StructuralTriple& t, const Rational& k);

}  // namespace einstein_barrier
