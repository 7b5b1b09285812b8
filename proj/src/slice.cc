#include "einstein_barrier/slice.h"

#include "einstein_barrier/thresholds.h"

namespace einstein_barrier {

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

/// a + b k.
UniPoly lin(const Rational& a, const Rational& b) { return UniPoly({a, b}); }

}  // namespace

UniPoly px_tilde(int d1, int d2) {
  const long a = d1, b = d2;
  return UniPoly({q(a * a * (a - 1)), q(2 * (b - 1) * (a - 1) * a), q(b * (a * b - 2 * a - b + 1))});
}

SlicePolys slice_polys(int d1, int d2) {
  require_dimensions(d1, d2);
  const long a = d1, b = d2, n = a + b;
  SlicePolys s;
  s.py2 = lin(q(-a * (n + a - 2), b * (n - 1)), q(-(n + a - 1), n - 1));
  s.py1 = lin(q((b - 1) * (a - 1), n - 1), q((b - 1) * b, n - 1));
  s.py0 = lin(q(-(a - 1) * a, n - 1), q(-(a - 1) * (b - 1), n - 1));
  s.qy2 = lin(q(-2 * a, n - 1), q(-(2 * n + b), n - 1));
  s.qy1 = lin(q(-2 * a * (a - 1) * (b - 1), a * (n - 1)), q(-(a * b - 3 * b) * (b - 1), a * (n - 1)));
  s.qy0 = lin(q(2 * a * (a - 1), n - 1), q((b + 2) * (a - 1), n - 1));
  s.px = px_tilde(d1, d2) * lin(1, -1) * q(1, a * (n - 1));
  const UniPoly k = UniPoly::x();
  const UniPoly lead = q(4) * k * lin(1, q(b, 2 * a)) * lin(q(a), q(b) + q(b, 2 * a));
  const UniPoly tail = lin(2, q(2) + q(3 * b, a)) * (UniPoly({q(a), 0, q(b)}) - lin(q(a), q(b)).pow(2)) * q(1, n - 1);
  s.qx = lead + tail;
  return s;
}

SliceCoeffs slice_coefficients(const StructuralTriple& t, const Rational& k) {
  const SlicePolys s = slice_polys(t.d1, t.d2);
  SliceCoeffs c;
  c.p_y = QuadInL{t.A * s.py2(k), s.py1(k), s.py0(k)};
  c.q_y = QuadInL{t.A * s.qy2(k), s.qy1(k), s.qy0(k)};
  c.p_x = s.px(k);
  c.q_x = s.qx(k);
  return c;
}

QuadInL omega_quad(const StructuralTriple& t, const Rational& k) {
  const SliceCoeffs c = slice_coefficients(t, k);
  return QuadInL{c.q_y.c2 * c.p_x - c.q_x * c.p_y.c2, c.q_y.c1 * c.p_x - c.q_x * c.p_y.c1,
                 c.q_y.c0 * c.p_x - c.q_x * c.p_y.c0};
}

Rational omega_value(const StructuralTriple& t, const Rational& k, const Rational& l) {
  const SliceCoeffs c = slice_coefficients(t, k);
  return c.q_y(l) * c.p_x - c.q_x * c.p_y(l);
}

OmegaFactors omega_factors(int d1, int d2) {
  require_dimensions(d1, d2);
  const Rational a = d1, b = d2;
  const Rational a2 = a * a, a3 = a2 * a, a4 = a3 * a, b2 = b * b, b3 = b2 * b;
  OmegaFactors f;
  f.w2 = UniPoly({-2 * a4 + 2 * a3, 2 * a4 - 5 * a3 * b - 2 * a3 + 5 * a2 * b,
                  4 * a3 * b - 4 * a2 * b2 - 2 * a2 * b + 4 * a * b2 - 2 * a * b, 2 * a2 * b2 - a * b3 + b3 - b2});
  f.w1 = UniPoly({4 * a3 - 4 * a2, a3 * b - 4 * a3 + 5 * a2 * b + 4 * a2 - 6 * a * b,
                  2 * a2 * b2 - 8 * a2 * b + 8 * a * b - 2 * b2, a * b3 - 4 * a * b2 - b3 + 3 * b2});
  f.w0 = UniPoly({a3 * b - a2 * b + 4 * a2, 2 * a2 * b2 - 2 * a2 * b - 2 * a * b2 - 4 * a2 + 4 * a * b,
                  a * b3 - 2 * a * b2 - b3 - 2 * a * b + b2});
  return f;
}

Rational omega_factor_form(const StructuralTriple& t, const Rational& k, const Rational& l) {
  const OmegaFactors f = omega_factors(t.d1, t.d2);
  const long a = t.d1, b = t.d2, n = a + b;
  const Rational lead = (q(2 * a) + b * k) / b * f.w2(k) * t.A * l * l;
  const Rational mid = q(b - 1) * k * f.w1(k) * l;
  const Rational low = q(a - 1) * k * k * f.w0(k);
  return (lead + mid - low) / q(a * a * (n - 1));
}

Rational resultant_qy_py_closed_form(const StructuralTriple& t, const Rational& k) {
  const RhoPolys r = rho_polys(t.d1, t.d2);
  const long a = t.d1, b = t.d2, n = a + b;
  return q(a - 1) * t.A / q(a * a * b * b * (n - 1) * (n - 1)) * (r.rho1(k) * t.A - r.rho0(k));
}

Rational resultant_omega_py_closed_form(const StructuralTriple& t, const Rational& k) {
  const Rational px = slice_polys(t.d1, t.d2).px(k);
  return px * px * resultant_qy_py_closed_form(t, k);
}

}  // namespace einstein_barrier
