#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "einstein_barrier/rational.h"

namespace einstein_barrier {

/// Univariate polynomial with exact rational coefficients, stored by ascending
/// degree. The leading coefficient is nonzero; the zero polynomial has no
/// coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);
  UniPoly(std::initializer_list<Rational> coefficients);

  static UniPoly constant(const Rational& c);
  /// The monomial c*x^degree.
  static UniPoly monomial(const Rational& c, int degree);
  /// x.
  static UniPoly x();

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^i, zero beyond the degree.
  Rational coeff(int i) const;
  Rational leading() const;

  /// Exact Horner evaluation.
  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  UniPoly derivative() const;
  /// p(a*x + b).
  UniPoly compose_affine(const Rational& a, const Rational& b) const;

  /// Monic rescaling; the zero polynomial stays zero.
  UniPoly monic() const;
  /// Clears denominators and divides out the content, keeping the sign of
  /// the leading coefficient. Same roots, smaller coefficients.
  UniPoly primitive() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const Rational& c);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
  friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }
  friend UniPoly operator-(UniPoly a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  UniPoly pow(unsigned e) const;

  /// Human-readable form in the given variable, e.g. "20*k^3 + 8*k^2 - 24*k - 16".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b. Throws std::domain_error
/// when b == 0.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'), primitive. Same distinct roots, all simple.
UniPoly square_free_part(const UniPoly& p);

/// Exact rational function num/den with a nonzero denominator.
struct RationalFunction {
  UniPoly num;
  UniPoly den;

  Rational operator()(const Rational& x) const;
  /// Quotient rule: (num' den - num den') / den^2.
  RationalFunction derivative() const;
};

}  // namespace einstein_barrier
