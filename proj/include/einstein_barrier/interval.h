#pragma once

#include <string>

#include "einstein_barrier/rational.h"

namespace einstein_barrier {

/// Bounded interval with rational endpoints, each endpoint open or closed.
/// lo <= hi, and a degenerate interval (lo == hi) is closed at both ends.
class RatInterval {
 public:
  /// Throws std::invalid_argument when the invariants above are violated.
  RatInterval(Rational lo, Rational hi, bool lo_closed, bool hi_closed);

  static RatInterval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
  static RatInterval open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
  static RatInterval point(const Rational& x) { return {x, x, true, true}; }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }

  bool is_point() const { return lo_ == hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool contains(const Rational& x) const;
  /// True when the two intervals share at least one point.
  bool overlaps(const RatInterval& other) const;

  /// "[lo, hi)" style rendering with exact endpoints.
  std::string to_string() const;

  friend bool operator==(const RatInterval& a, const RatInterval& b) = default;

 private:
  Rational lo_;
  Rational hi_;
  bool lo_closed_;
  bool hi_closed_;
};

}  // namespace einstein_barrier
