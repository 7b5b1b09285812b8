#include "einstein_barrier/interval.h"

#include <stdexcept>

namespace einstein_barrier {

RatInterval::RatInterval(Rational lo, Rational hi, bool lo_closed, bool hi_closed)
    : lo_(std::move(lo)), hi_(std::move(hi)), lo_closed_(lo_closed), hi_closed_(hi_closed) {
  if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
  if (lo_ == hi_ && !(lo_closed_ && hi_closed_)) throw std::invalid_argument("empty degenerate interval");
}

bool RatInterval::contains(const Rational& x) const {
  bool above = lo_closed_ ? x >= lo_ : x > lo_;
  bool below = hi_closed_ ? x <= hi_ : x < hi_;
  return above && below;
}

bool RatInterval::overlaps(const RatInterval& other) const {
  if (hi_ < other.lo_ || other.hi_ < lo_) return false;
  if (hi_ == other.lo_) return hi_closed_ && other.lo_closed_;
  if (other.hi_ == lo_) return other.hi_closed_ && lo_closed_;
  return true;
}

std::string RatInterval::to_string() const {
  return std::string(lo_closed_ ? "[" : "(") + einstein_barrier::to_string(lo_) + ", " +
         einstein_barrier::to_string(hi_) + (hi_closed_ ? "]" : ")");
}

}  // namespace einstein_barrier
