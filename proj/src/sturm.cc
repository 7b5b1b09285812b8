#include "einstein_barrier/sturm.h"

#include <algorithm>
#include <stdexcept>

namespace einstein_barrier {

Rational default_isolation_width() {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, 40);
  return make_rational(Integer(1), den);
}

namespace {

int count_variations(const std::vector<int>& signs) {
  int v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

SturmSequence::SturmSequence(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
  UniPoly s0 = square_free_part(p);
  chain_.push_back(s0);
  if (s0.degree() < 1) return;
  chain_.push_back(s0.derivative().primitive());
  while (true) {
    const UniPoly& a = chain_[chain_.size() - 2];
    const UniPoly& b = chain_.back();
    UniPoly r = divmod(a, b).second;
    if (r.is_zero()) break;
    // primitive() rescales by a positive factor, which keeps the chain valid.
    chain_.push_back(-r.primitive());
  }
}

int SturmSequence::variations(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(sgn(q(x)));
  return count_variations(signs);
}

int SturmSequence::variations_at_plus_infinity() const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(sgn(q.leading()));
  return count_variations(signs);
}

int SturmSequence::variations_at_minus_infinity() const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(q.degree() % 2 == 0 ? sgn(q.leading()) : -sgn(q.leading()));
  return count_variations(signs);
}

int SturmSequence::count(const RatInterval& iv) const {
  const UniPoly& s = square_free();
  if (iv.is_point()) return s(iv.lo()) == 0 ? 1 : 0;
  // Sturm: V(a) - V(b) counts roots in (a, b] for square-free s.
  int n = variations(iv.lo()) - variations(iv.hi());
  if (iv.lo_closed() && s(iv.lo()) == 0) ++n;
  if (!iv.hi_closed() && s(iv.hi()) == 0) --n;
  return n;
}

int SturmSequence::count_real() const { return variations_at_minus_infinity() - variations_at_plus_infinity(); }

int sturm_root_count(const UniPoly& p, const RatInterval& iv) { return SturmSequence(p).count(iv); }

namespace {

void refine_simple_root(const UniPoly& s, Rational lo, Rational hi, const Rational& width,
                        std::vector<RatInterval>& out) {
  int slo = sgn(s(lo));
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int sm = sgn(s(mid));
    if (sm == 0) {
      out.push_back(RatInterval::point(mid));
      return;
    }
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.push_back(RatInterval::open(lo, hi));
}

void isolate_open(const SturmSequence& seq, const Rational& lo, const Rational& hi, const Rational& width,
                  std::vector<RatInterval>& out) {
  int n = seq.count(RatInterval::open(lo, hi));
  if (n == 0) return;
  const UniPoly& s = seq.square_free();
  if (n == 1 && s(lo) != 0 && s(hi) != 0) {
    refine_simple_root(s, lo, hi, width, out);
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate_open(seq, lo, mid, width, out);
  if (s(mid) == 0) out.push_back(RatInterval::point(mid));
  isolate_open(seq, mid, hi, width, out);
}

}  // namespace

std::vector<RatInterval> isolate_roots(const UniPoly& p, const RatInterval& iv, const Rational& width) {
  if (width <= 0) throw std::invalid_argument("isolation width must be positive");
  SturmSequence seq(p);
  const UniPoly& s = seq.square_free();
  std::vector<RatInterval> out;
  if (iv.is_point()) {
    if (s(iv.lo()) == 0) out.push_back(iv);
    return out;
  }
  if (iv.lo_closed() && s(iv.lo()) == 0) out.push_back(RatInterval::point(iv.lo()));
  isolate_open(seq, iv.lo(), iv.hi(), width, out);
  if (iv.hi_closed() && s(iv.hi()) == 0) out.push_back(RatInterval::point(iv.hi()));
  return out;
}

std::string to_string(SignClaim claim) {
  switch (claim) {
    case SignClaim::kPositive:
      return "positive";
    case SignClaim::kNegative:
      return "negative";
    case SignClaim::kNonnegative:
      return "nonnegative";
    case SignClaim::kNonpositive:
      return "nonpositive";
  }
  return "?";
}

namespace {

bool strict(SignClaim c) { return c == SignClaim::kPositive || c == SignClaim::kNegative; }
int target_sign(SignClaim c) { return (c == SignClaim::kPositive || c == SignClaim::kNonnegative) ? 1 : -1; }

/// True when a value of sign `s` violates the claim.
bool violates(SignClaim c, int s) { return strict(c) ? s != target_sign(c) : s == -target_sign(c); }

/// x in (a, root) for the single simple root of s in (a, b), s(b) != 0.
Rational left_of_root(const UniPoly& s, const Rational& a, const Rational& b) {
  const int sb = sgn(s(b));
  Rational step = (b - a) / 2;
  while (true) {
    Rational x = a + step;
    int sx = sgn(s(x));
    if (sx != 0 && sx != sb) return x;
    step /= 2;
  }
}

/// x in (root, b) for the single simple root of s in (a, b), s(a) != 0.
Rational right_of_root(const UniPoly& s, const Rational& a, const Rational& b) {
  const int sa = sgn(s(a));
  Rational step = (b - a) / 2;
  while (true) {
    Rational x = b - step;
    int sx = sgn(s(x));
    if (sx != 0 && sx != sa) return x;
    step /= 2;
  }
}

/// Rational points of iv that sample every sign region of p: the closed
/// endpoints, one point strictly inside each gap between consecutive distinct
/// roots, and the roots located exactly by bisection.
std::vector<Rational> region_samples(const SturmSequence& seq, const RatInterval& iv) {
  if (iv.is_point()) return {iv.lo()};
  const UniPoly& s = seq.square_free();
  std::vector<RatInterval> roots = isolate_roots(s, RatInterval::open(iv.lo(), iv.hi()), iv.width() / 64);
  std::vector<Rational> pts;
  if (iv.lo_closed()) pts.push_back(iv.lo());
  const size_t m = roots.size();
  for (size_t i = 0; i <= m; ++i) {
    const RatInterval* left = i > 0 ? &roots[i - 1] : nullptr;
    const RatInterval* right = i < m ? &roots[i] : nullptr;
    Rational u = left ? left->hi() : iv.lo();
    Rational v = right ? right->lo() : iv.hi();
    if (u < v) {
      pts.push_back((u + v) / 2);
    } else if (left && right && !left->is_point() && !right->is_point()) {
      pts.push_back(u);
    } else if (right && !right->is_point()) {
      pts.push_back(left_of_root(s, right->lo(), right->hi()));
    } else if (left && !left->is_point()) {
      pts.push_back(right_of_root(s, left->lo(), left->hi()));
    } else {
      throw std::logic_error("region_samples: adjacent exact roots");
    }
    if (right && right->is_point()) pts.push_back(right->lo());
  }
  if (iv.hi_closed()) pts.push_back(iv.hi());
  return pts;
}

}  // namespace

SignCheck certify_sign(const UniPoly& p, const RatInterval& iv, SignClaim claim) {
  SturmSequence seq(p);
  const int want = target_sign(claim);

  // Interior sample: midpoint, or the single point of a degenerate interval.
  Rational sample = iv.midpoint();
  Rational sample_value = p(sample);

  RatInterval interior = iv.is_point() ? iv : RatInterval::open(iv.lo(), iv.hi());
  int interior_roots = seq.count(interior);
  int total_roots = seq.count(iv);

  if (strict(claim)) {
    if (interior_roots == 0 && sgn(sample_value) == want) {
      // No sign change inside, so only closed endpoints can fail.
      const std::pair<const Rational&, bool> ends[] = {{iv.lo(), iv.lo_closed()}, {iv.hi(), iv.hi_closed()}};
      for (const auto& [end, closed] : ends) {
        if (closed && p(end) == 0) {
          return SignCheck{SignCheck::Outcome::kIndeterminate, std::nullopt, end, Rational(0), std::nullopt,
                           "strict claim fails only at the closed endpoint " + to_string(end)};
        }
      }
      SignCertificate cert{p, iv, claim, total_roots, "sturm", sample, sample_value};
      return SignCheck{SignCheck::Outcome::kCertified, cert, std::nullopt, std::nullopt, std::nullopt, ""};
    }
  } else {
    bool ok = true;
    for (const auto& x : region_samples(seq, iv)) {
      if (violates(claim, sgn(p(x)))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      SignCertificate cert{p, iv, claim, total_roots, "sturm+region-samples", sample, sample_value};
      return SignCheck{SignCheck::Outcome::kCertified, cert, std::nullopt, std::nullopt, std::nullopt, ""};
    }
  }

  // Refutation: prefer a point where p has the opposite strict sign.
  for (const auto& x : region_samples(seq, iv)) {
    Rational v = p(x);
    if (sgn(v) == -want) {
      return SignCheck{SignCheck::Outcome::kRefuted, std::nullopt, x, v, std::nullopt,
                       "value of sign " + std::to_string(sgn(v)) + " contradicts claim " + to_string(claim)};
    }
  }
  // Only zeros violate a strict claim.
  for (const auto& r : isolate_roots(p, iv)) {
    if (r.is_point()) {
      return SignCheck{SignCheck::Outcome::kRefuted, std::nullopt, r.lo(), Rational(0), std::nullopt,
                       "zero contradicts strict claim " + to_string(claim)};
    }
    return SignCheck{SignCheck::Outcome::kRefuted, std::nullopt, std::nullopt, std::nullopt, r,
                     "irrational touching root contradicts strict claim " + to_string(claim)};
  }
  throw std::logic_error("certify_sign: claim failed but no violation located");
}

}  // namespace einstein_barrier
