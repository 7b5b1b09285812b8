#include "einstein_barrier/thresholds.h"

#include <cmath>

#include "einstein_barrier/errors.h"
#include "einstein_barrier/slice.h"

namespace einstein_barrier {

namespace {

struct Dims {
  Rational a, b, n;
  Dims(int d1, int d2) : a(d1), b(d2), n(d1 + d2) { require_dimensions(d1, d2); }
};

UniPoly lin(const Rational& c0, const Rational& c1) { return UniPoly({c0, c1}); }

/// 2 d2^2 k^2 + d2 k^2 + 4 d1 d2 k + 2 d1 k + 2 d1^2.
UniPoly s_poly(const Dims& d) {
  return UniPoly({2 * d.a * d.a, 4 * d.a * d.b + 2 * d.a, 2 * d.b * d.b + d.b});
}

std::string at_k(const Rational& k) { return "k = " + to_string(k); }

bool is_perfect_square(const Rational& q) {
  return q >= 0 && mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Rational exact_sqrt(const Rational& q) {
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  return make_rational(num, den);
}

}  // namespace

Rational bohm_bound(int d1, int d2) {
  const Dims d(d1, d2);
  return d.b * (d.b - 1) * (d.b - 1) / (4 * (d.a - 1) * (d.n + d.a));
}

Rational psi(int d1, int d2) {
  const Dims d(d1, d2);
  const Rational n2 = d.n * d.n;
  const Rational s = 2 * n2 + d.n + d.a;
  return (4 * (d.a - 1) * n2 + d.b * d.b) * (3 * d.n + d.a) / (s * s * d.a * d.a) * d.b * (d.b - 1) * (d.b - 1) /
         (4 * (d.a - 1));
}

Rational local_barrier(int d1, int d2) {
  const Dims d(d1, d2);
  return d.b * (d.b - 1) * (d.b - 1) / (d.a * d.a * (d.a * d.b - d.b + 4));
}

RhoPolys rho_polys(int d1, int d2) {
  const Dims d(d1, d2);
  const UniPoly k = UniPoly::x();
  RhoPolys r;
  r.rho1 = 4 * d.a * d.a * (d.a - 1) * s_poly(d).pow(2);
  r.rho0 = (d.b - 1) * (d.b - 1) * d.b * k * lin(4 * d.a, 3 * d.b) *
           (4 * (d.a - 1) * lin(d.a, d.b).pow(2) + UniPoly::monomial(d.b * d.b, 2));
  r.rho3 = UniPoly({4 * d.a * d.a * d.a - 4 * d.a * d.a, 10 * d.a * d.a * d.b - 4 * d.a * d.a - 10 * d.a * d.b + 4 * d.a,
                    8 * d.a * d.b * d.b - 2 * d.a * d.b - 5 * d.b * d.b + 2 * d.b, 2 * d.b * d.b * d.b + d.b * d.b});
  return r;
}

RationalFunction rho_ratio_derivative_closed_form(int d1, int d2) {
  const Dims d(d1, d2);
  const RhoPolys r = rho_polys(d1, d2);
  return RationalFunction{2 * d.b * (d.b - 1) * (d.b - 1) * lin(d.a, d.b) * r.rho3, (d.a - 1) * s_poly(d).pow(3)};
}

RationalFunction omega_cap_function(int d1, int d2) {
  const Dims d(d1, d2);
  const OmegaFactors f = omega_factors(d1, d2);
  return RationalFunction{-d.b * (d.b - 1) * (d.b - 1) * f.w1.pow(2),
                          4 * (d.a - 1) * lin(2 * d.a, d.b) * f.w0 * f.w2};
}

RationalFunction xi_cap_function(int d1, int d2) {
  const Dims d(d1, d2);
  return RationalFunction{d.b * (d.b - 1) * (d.b - 1) * lin(d.a - 1, d.b).pow(2),
                          4 * (d.a - 1) * lin(d.a, d.b - 1) *
                              lin(d.a * (d.n + d.a - 2), d.b * (d.n + d.a - 1))};
}

Rational omega_cap(int d1, int d2, const Rational& k) {
  const Dims d(d1, d2);
  const OmegaFactors f = omega_factors(d1, d2);
  if (2 * d.a + d.b * k == 0) throw PoleError("2*d1 + d2*k", at_k(k));
  if (f.w0(k) == 0) throw PoleError("omega_0", at_k(k));
  if (f.w2(k) == 0) throw PoleError("omega_2", at_k(k));
  return omega_cap_function(d1, d2)(k);
}

Rational xi_cap(int d1, int d2, const Rational& k) {
  const Dims d(d1, d2);
  if (d.a + (d.b - 1) * k == 0) throw PoleError("d1 + (d2-1)*k", at_k(k));
  if (d.a * (d.n + d.a - 2) + d.b * (d.n + d.a - 1) * k == 0) {
    throw PoleError("d1*(n+d1-2) + d2*(n+d1-1)*k", at_k(k));
  }
  return xi_cap_function(d1, d2)(k);
}

AlphaPolys alpha_polys(int d1, int d2) {
  const Dims d(d1, d2);
  const Rational& a = d.a;
  const Rational& b = d.b;
  const Rational a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
  const Rational b2 = b * b, b3 = b2 * b, b4 = b3 * b;
  AlphaPolys p;
  p.a1 = omega_factors(d1, d2).w1;
  p.a2 = UniPoly({a3 - a2, a * (2 * a * b - 2 * a - 2 * b + 2), b * (a - 1) * (b - 1) - a * b});
  p.a3 = UniPoly({a3 - 4 * a2, 2 * a2 * b + 2 * a2 - 4 * a * b, a * b2 + a * b - b2});
  p.a4 = UniPoly({2 * a5 * b - 4 * a5 - 4 * a4 * b + 8 * a4 + 2 * a3 * b - 4 * a3,
                  -a5 * b + 5 * a4 * b2 + 4 * a5 - 10 * a4 * b - 10 * a3 * b2 - 8 * a4 + 17 * a3 * b + 5 * a2 * b2 +
                      4 * a3 - 6 * a2 * b,
                  -2 * a4 * b2 + 4 * a3 * b3 + 8 * a4 * b - 8 * a3 * b2 - 8 * a2 * b3 - 8 * a3 * b + 14 * a2 * b2 +
                      4 * a * b3 - 4 * a * b2,
                  -a3 * b3 + a2 * b4 + 4 * a3 * b2 - 2 * a2 * b3 - 2 * a * b4 - a2 * b2 + 4 * a * b3 + b4 - a * b2 - b3});
  return p;
}

RationalFunction omega_derivative_prefactor(int d1, int d2) {
  const Dims d(d1, d2);
  const OmegaFactors f = omega_factors(d1, d2);
  return RationalFunction{UniPoly::constant(d.b * d.b * (d.b - 1) * (d.b - 1)),
                          (d.a - 1) * lin(2 * d.a, d.b).pow(2) * f.w0.pow(2) * f.w2.pow(2)};
}

Rational xi_slope_at_one(int d1, int d2) {
  const Dims d(d1, d2);
  const Rational s = 2 * d.a + d.b;
  return d.b * d.n * (d.b - 1) * (d.b - 1) / (2 * (d.a - 1) * (d.n - 1) * s * s);
}

Rational omega_slope_at_one(int d1, int d2) {
  const Dims d(d1, d2);
  const Rational s = 2 * d.a + d.b;
  return d.n * (d.b - 1) * (d.b - 1) * (d.a * d.a + d.a * d.b - 3 * d.a - d.b) / ((d.a - 1) * (d.n - 1) * s * s);
}

Rational qy_at_bound_closed_form(int d1, int d2) {
  const Dims d(d1, d2);
  return -2 * (d.a - 1) * (2 * d.a * d.n - 3 * d.n - 3 * d.a) * d.n / ((d.n + d.a) * (d.n - 1) * d.a);
}

Rational Thresholds::omega_cap_at(const Rational& k) const { return einstein_barrier::omega_cap(d1, d2, k); }
Rational Thresholds::xi_cap_at(const Rational& k) const { return einstein_barrier::xi_cap(d1, d2, k); }

Thresholds thresholds(int d1, int d2) {
  return Thresholds{d1,
                    d2,
                    bohm_bound(d1, d2),
                    psi(d1, d2),
                    local_barrier(d1, d2),
                    omega_cap_function(d1, d2),
                    xi_cap_function(d1, d2)};
}

int QuadraticSurd::sign() const {
  const int sa = sgn(a);
  const int sb = (d == 0) ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational lhs = a * a;
  const Rational rhs = b * b * d;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

double QuadraticSurd::approx() const { return to_double(a) + to_double(b) * std::sqrt(to_double(d)); }

QuadraticSurd evaluate(const QuadInL& f, const QuadraticSurd& x) {
  const Rational sq_rat = x.a * x.a + x.b * x.b * x.d;
  const Rational sq_irr = 2 * x.a * x.b;
  return QuadraticSurd{f.c2 * sq_rat + f.c1 * x.a + f.c0, f.c2 * sq_irr + f.c1 * x.b, x.d};
}

double AlgebraicRoot::approx() const {
  if (exact) return to_double(*exact);
  return to_double(enclosure.midpoint());
}

QuadInL homogeneous_quadratic(const StructuralTriple& t) {
  const Dims d(t.d1, t.d2);
  return QuadInL{(d.n + d.a) / d.b * t.A, -(d.b - 1), d.a - 1};
}

MuRoots mu_roots(const StructuralTriple& t, const Rational& width) {
  if (t.A == 0) {
    throw DegenerateEquationError("A = 0: the homogeneous quadratic is linear with root (d1-1)/(d2-1)");
  }
  const QuadInL f = homogeneous_quadratic(t);
  const Rational disc = f.discriminant();
  if (disc < 0) {
    throw NoRealRootsError("A = " + to_string(t.A) + " exceeds the Böhm bound " + to_string(bohm_bound(t.d1, t.d2)) +
                           "; the homogeneous quadratic has no real root");
  }
  const Rational center = -f.c1 / (2 * f.c2);
  const Rational half = 1 / (2 * f.c2);
  const QuadraticSurd s2{center, -half, disc};
  const QuadraticSurd s1{center, half, disc};
  if (is_perfect_square(disc)) {
    const Rational r = exact_sqrt(disc);
    const Rational m2 = center - half * r;
    const Rational m1 = center + half * r;
    return MuRoots{AlgebraicRoot{RatInterval::point(m2), m2, s2}, AlgebraicRoot{RatInterval::point(m1), m1, s1}};
  }
  // Both roots are positive with sum -c1/c2.
  const auto roots = isolate_roots(f.as_poly(), RatInterval::open(0, -f.c1 / f.c2), width);
  if (roots.size() != 2) throw InconsistencyError("mu_roots: expected two isolated roots");
  return MuRoots{AlgebraicRoot{roots[0], std::nullopt, s2}, AlgebraicRoot{roots[1], std::nullopt, s1}};
}

Rational k_star_lower_bracket(int d1, int d2) {
  const Dims d(d1, d2);
  return -d.a * (d.n + d.a - 2) / (d.b * (d.n + d.a - 1));
}

Rational k_star_upper_bracket(int d1, int d2) {
  const Dims d(d1, d2);
  return -(d.a - 1) / d.b;
}

RatInterval k_star(int d1, int d2, const Rational& width) {
  require_dimensions(d1, d2);
  if (d2 < d1) throw std::invalid_argument("k_star requires d2 >= d1");
  const UniPoly p = px_tilde(d1, d2);
  const Rational left = make_rational(-d1, d2);
  const int count = sturm_root_count(p, RatInterval::open(left, 0));
  if (count != 1) {
    throw InconsistencyError("px_tilde has " + std::to_string(count) + " roots in (-d1/d2, 0), expected exactly one");
  }
  const Rational lo = k_star_lower_bracket(d1, d2);
  const Rational hi = k_star_upper_bracket(d1, d2);
  if (!(p(lo) < 0 && p(hi) > 0)) {
    throw InconsistencyError("px_tilde does not change sign across the bracket (" + to_string(lo) + ", " +
                             to_string(hi) + ")");
  }
  const auto roots = isolate_roots(p, RatInterval::open(lo, hi), width);
  if (roots.size() != 1) throw InconsistencyError("k_star: bracket does not isolate a single root");
  return roots.front();
}

}  // namespace einstein_barrier
