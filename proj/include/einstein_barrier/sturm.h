#pragma once

#include <optional>
#include <string>
#include <vector>

#include "einstein_barrier/interval.h"
#include "einstein_barrier/uni_poly.h"

namespace einstein_barrier {

/// Default width for isolating intervals: 2^-40.
Rational default_isolation_width();

/// Signed remainder chain of the square-free part of `p`.
class SturmSequence {
 public:
  /// Throws std::invalid_argument for the zero polynomial.
  explicit SturmSequence(const UniPoly& p);

  const UniPoly& square_free() const { return chain_.front(); }
  const std::vector<UniPoly>& chain() const { return chain_; }

  /// Sign variations at x (zeros skipped).
  int variations(const Rational& x) const;
  int variations_at_plus_infinity() const;
  int variations_at_minus_infinity() const;

  /// Distinct real roots in the interval. A root exactly at an open endpoint
  /// is excluded; a root at a closed endpoint is counted.
  int count(const RatInterval& iv) const;
  /// Distinct real roots on the whole line.
  int count_real() const;

 private:
  std::vector<UniPoly> chain_;
};

/// Number of distinct real roots of p in iv (multiplicities collapse to one).
int sturm_root_count(const UniPoly& p, const RatInterval& iv);

/// Disjoint, ordered intervals, one per distinct root of p in iv, each of
/// length <= width. A root hit exactly by bisection is returned as a point
/// interval; every other interval is open with nonzero values at both ends.
std::vector<RatInterval> isolate_roots(const UniPoly& p, const RatInterval& iv,
                                       const Rational& width = default_isolation_width());

enum class SignClaim { kPositive, kNegative, kNonnegative, kNonpositive };

std::string to_string(SignClaim claim);

struct SignCertificate {
  UniPoly poly;
  RatInterval interval;
  SignClaim claimed_sign;
  int root_count = 0;
  std::string method;
  /// Interior rational point and the exact value there.
  Rational sample_point;
  Rational sample_value;
};

/// Outcome of certify_sign. Exactly one of `certificate` or `witness`
/// describes the result:
///  - kCertified: certificate holds.
///  - kRefuted: witness is a rational point of iv where the claim fails, or,
///    when no rational violation exists (a touching irrational root under a
///    strict claim), witness is empty and `root_interval` brackets the root.
///  - kIndeterminate: a strict claim fails only at a closed endpoint zero;
///    witness is that endpoint.
struct SignCheck {
  enum class Outcome { kCertified, kRefuted, kIndeterminate };
  Outcome outcome;
  std::optional<SignCertificate> certificate;
  std::optional<Rational> witness;
  std::optional<Rational> witness_value;
  std::optional<RatInterval> root_interval;
  std::string note;

  bool certified() const { return outcome == Outcome::kCertified; }
};

/// Certifies the sign of p on iv exactly, or finds where it fails.
/// Throws std::invalid_argument for the zero polynomial.
SignCheck certify_sign(const UniPoly& p, const RatInterval& iv, SignClaim claim);

}  // namespace einstein_barrier
