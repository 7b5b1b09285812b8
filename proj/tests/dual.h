#pragma once

#include "einstein_barrier/rational.h"

namespace testing_support {

/// a + b eps with eps^2 = 0 over exact rationals: evaluating a polynomial at
/// p + eps v yields its directional derivative along v in the eps part.
struct Dual {
  einstein_barrier::Rational a;
  einstein_barrier::Rational b;

  Dual() = default;
  Dual(einstein_barrier::Rational x) : a(std::move(x)), b(0) {}
  Dual(long x) : a(x), b(0) {}
  Dual(int x) : a(x), b(0) {}
  Dual(einstein_barrier::Rational x, einstein_barrier::Rational dx) : a(std::move(x)), b(std::move(dx)) {}

  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
  friend Dual operator/(const Dual& x, const Dual& y) {
    return {x.a / y.a, (x.b * y.a - x.a * y.b) / (y.a * y.a)};
  }
  friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
};

}  // namespace testing_support
