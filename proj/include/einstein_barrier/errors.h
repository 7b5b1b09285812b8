#pragma once

#include <stdexcept>
#include <string>

namespace einstein_barrier {

/// The homogeneous-metric quadratic has no real root (A above the Böhm bound).
class NoRealRootsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A = 0 turns the quadratic into a linear equation.
class DegenerateEquationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exact computation contradicts a structural claim that must hold.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A denominator factor vanishes at the requested point.
class PoleError : public std::domain_error {
 public:
  PoleError(std::string factor, const std::string& where)
      : std::domain_error("denominator factor " + factor + " vanishes at " + where), factor_(std::move(factor)) {}
  const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

}  // namespace einstein_barrier
