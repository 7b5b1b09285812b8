#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "einstein_barrier/rational.h"

namespace einstein_barrier {

/// (d1, d2, A): sphere-fiber dimension, base dimension, and the nonnegative
/// fibration constant. Everything in the model is parametrized by it.
struct StructuralTriple {
  int d1 = 2;
  int d2 = 2;
  Rational A;

  /// Throws std::invalid_argument unless d1, d2 >= 2 and A >= 0.
  static StructuralTriple make(int d1, int d2, Rational A);

  int n() const { return d1 + d2; }
  /// d2 >= d1 >= 2, the range of the non-existence theorem.
  bool ordered() const { return d2 >= d1 && d1 >= 2; }
  std::string to_string() const;
};

/// Throws std::invalid_argument unless d1, d2 >= 2.
void require_dimensions(int d1, int d2);

/// num/den in the scalar type T: exact unless T is floating point.
template <class T>
T ratio(long num, long den) {
  if constexpr (std::is_floating_point_v<T>) {
    return static_cast<T>(num) / static_cast<T>(den);
  } else {
    return T(make_rational(num, den));
  }
}

template <class T>
T scalar_from(const Rational& q) {
  if constexpr (std::is_floating_point_v<T>) {
    return static_cast<T>(to_double(q));
  } else {
    return T(q);
  }
}

/// State (X1, X2, Y, Z) of the polynomial flow. Also used for tangent vectors.
template <class T>
struct PhasePoint {
  T X1{};
  T X2{};
  T Y{};
  T Z{};

  std::array<T, 4> as_array() const { return {X1, X2, Y, Z}; }
  static PhasePoint from_array(const std::array<T, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

template <class T>
struct CurvatureTerms {
  T G{};
  T H{};
  T R1{};
  T R2{};
};

/// The model constants of a triple in the scalar type T.
template <class T>
struct ModelConstants {
  explicit ModelConstants(const StructuralTriple& t)
      : d1(static_cast<long>(t.d1)), d2(static_cast<long>(t.d2)), n(static_cast<long>(t.n())), A(scalar_from<T>(t.A)),
        two_d1_over_d2(ratio<T>(2L * t.d1, t.d2)), d2_over_2d1(ratio<T>(t.d2, 2L * t.d1)) {}
  T d1, d2, n, A;
  T two_d1_over_d2;
  T d2_over_2d1;
};

/// p0+ (sign = +1) or p0- (sign = -1): (±1/d1, 0, 1/d1, 0).
template <class T>
PhasePoint<T> critical_point(const StructuralTriple& t, int sign) {
  return {ratio<T>(sign, t.d1), T(0), ratio<T>(1, t.d1), T(0)};
}

/// Z2 action (X1, X2, Y, Z) -> (-X1, -X2, Y, Z).
template <class T>
PhasePoint<T> z2_reflect(const PhasePoint<T>& p) {
  return {T(-p.X1), T(-p.X2), p.Y, p.Z};
}

template <class T>
CurvatureTerms<T> curvature_terms(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  CurvatureTerms<T> k;
  k.G = c.d1 * p.X1 * p.X1 + c.d2 * p.X2 * p.X2;
  k.H = c.d1 * p.X1 + c.d2 * p.X2;
  k.R1 = (c.d1 - 1) * p.Y * p.Y + c.A * p.Z * p.Z;
  k.R2 = (c.d2 - 1) * p.Y * p.Z - c.two_d1_over_d2 * c.A * p.Z * p.Z;
  return k;
}

template <class T>
CurvatureTerms<T> curvature_terms(const PhasePoint<T>& p, const StructuralTriple& t) {
  return curvature_terms(p, ModelConstants<T>(t));
}

template <class T>
PhasePoint<T> vector_field(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  const auto k = curvature_terms(p, c);
  const T cc = (1 - k.H * k.H) / c.n;
  const T growth = k.H * (k.G + cc);
  PhasePoint<T> v;
  v.X1 = p.X1 * (growth - k.H) + k.R1 - cc;
  v.X2 = p.X2 * (growth - k.H) + k.R2 - cc;
  v.Y = p.Y * (growth - p.X1);
  v.Z = p.Z * (growth + p.X1 - 2 * p.X2);
  return v;
}

template <class T>
PhasePoint<T> vector_field(const PhasePoint<T>& p, const StructuralTriple& t) {
  return vector_field(p, ModelConstants<T>(t));
}

/// (G - H^2 + d1 R1 + d2 R2)/(n-1) - (1 - H^2)/n; zero exactly on the
/// invariant set.
template <class T>
T conservation_residual(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  const auto k = curvature_terms(p, c);
  return (k.G - k.H * k.H + c.d1 * k.R1 + c.d2 * k.R2) / (c.n - 1) - (1 - k.H * k.H) / c.n;
}

template <class T>
T conservation_residual(const PhasePoint<T>& p, const StructuralTriple& t) {
  return conservation_residual(p, ModelConstants<T>(t));
}

/// Barrier polynomial P.
template <class T>
T eval_P(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  const auto k = curvature_terms(p, c);
  const T cc = (1 - k.H * k.H) / c.n;
  return p.X1 * (k.R2 - cc) - p.X2 * (k.R1 - cc) - 2 * p.X2 * (p.X1 - p.X2) * (p.X1 + c.d2_over_2d1 * p.X2);
}

template <class T>
T eval_P(const PhasePoint<T>& p, const StructuralTriple& t) {
  return eval_P(p, ModelConstants<T>(t));
}

/// Companion polynomial Q of the P' identity.
template <class T>
T eval_Q(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  const auto k = curvature_terms(p, c);
  const T cc = (1 - k.H * k.H) / c.n;
  const T three_d2_over_d1 = 6 * c.d2_over_2d1;
  return 4 * p.X2 * (p.X1 + c.d2_over_2d1 * p.X2) * (k.H + c.d2_over_2d1 * p.X2) +
         (2 * p.X1 + 2 * p.X2 + three_d2_over_d1 * p.X2) * cc - 2 * (c.d2 - 1) * p.X1 * p.Y * p.Z -
         p.X2 * (2 * (c.d1 - 1) * p.Y * p.Y + three_d2_over_d1 * (c.d2 - 1) * p.Y * p.Z);
}

template <class T>
T eval_Q(const PhasePoint<T>& p, const StructuralTriple& t) {
  return eval_Q(p, ModelConstants<T>(t));
}

/// Right-hand side of the P' identity,
///   P (H(3G + 3(1-H^2)/n - 1) + (n/d1) X2 - X1) + (X1 - X2)(P + Q),
/// which equals dP/deta along the flow on the invariant set.
template <class T>
T p_prime_rhs(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  const auto k = curvature_terms(p, c);
  const T P = eval_P(p, c);
  const T Q = eval_Q(p, c);
  const T cc = (1 - k.H * k.H) / c.n;
  return P * (k.H * (3 * k.G + 3 * cc - 1) + c.n / c.d1 * p.X2 - p.X1) + (p.X1 - p.X2) * (P + Q);
}

template <class T>
T p_prime_rhs(const PhasePoint<T>& p, const StructuralTriple& t) {
  return p_prime_rhs(p, ModelConstants<T>(t));
}

/// Exact derivative of conservation_residual along vector_field.
template <class T>
T residual_derivative(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  // d/deta of the residual using dG, dH, dR1, dR2 from the chain rule.
  const auto k = curvature_terms(p, c);
  const auto v = vector_field(p, c);
  const T dG = 2 * c.d1 * p.X1 * v.X1 + 2 * c.d2 * p.X2 * v.X2;
  const T dH = c.d1 * v.X1 + c.d2 * v.X2;
  const T dR1 = 2 * (c.d1 - 1) * p.Y * v.Y + 2 * c.A * p.Z * v.Z;
  const T dR2 = (c.d2 - 1) * (v.Y * p.Z + p.Y * v.Z) - 2 * c.two_d1_over_d2 * c.A * p.Z * v.Z;
  return (dG - 2 * k.H * dH + c.d1 * dR1 + c.d2 * dR2) / (c.n - 1) + 2 * k.H * dH / c.n;
}

}  // namespace einstein_barrier
