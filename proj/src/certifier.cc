#include "einstein_barrier/certifier.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <stdexcept>

#include "einstein_barrier/errors.h"
#include "einstein_barrier/manifold_points.h"
#include "einstein_barrier/model.h"
#include "einstein_barrier/resultant.h"
#include "einstein_barrier/slice.h"
#include "einstein_barrier/sturm.h"
#include "einstein_barrier/thresholds.h"

namespace einstein_barrier {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Verdict start(const std::string& id, int d1, int d2, std::optional<Rational> A = std::nullopt,
              std::uint64_t seed = 0) {
  Verdict v;
  v.check_id = id;
  v.d1 = d1;
  v.d2 = d2;
  v.A = std::move(A);
  v.seed = seed;
  return v;
}

bool excluded_pair(int d1, int d2) { return d1 == 2 && d2 >= 2 && d2 <= 4; }

/// Returns true when the verdict may continue; otherwise the status is set.
bool require_ordered(Verdict& v) {
  require_dimensions(v.d1, v.d2);
  if (v.d2 >= v.d1) return true;
  v.status = Status::kOutOfHypothesis;
  v.note("requires d2 >= d1");
  return false;
}

Rational lower_end(int d1, int d2) { return make_rational(-d1, d2); }

std::string surd_text(const QuadraticSurd& s) {
  return to_string(s.a) + " + (" + to_string(s.b) + ")*sqrt(" + to_string(s.d) + ")";
}

/// Records a sign check. Returns true when certified, or when a strict claim
/// fails only at an endpoint the caller allows.
bool record_sign(Verdict& v, const std::string& name, const SignCheck& c, const std::optional<Rational>& allowed_zero = {}) {
  if (c.certified()) {
    const auto& cert = *c.certificate;
    v.add(name + ": certified " + to_string(cert.claimed_sign) + " on", cert.interval);
    v.add(name + ": roots in interval", std::to_string(cert.root_count));
    v.add(name + ": value at " + to_string(cert.sample_point), cert.sample_value);
    return true;
  }
  if (c.outcome == SignCheck::Outcome::kIndeterminate && allowed_zero && c.witness && *c.witness == *allowed_zero) {
    v.add(name + ": zero at excluded endpoint", *c.witness);
    v.note(name + " vanishes at " + to_string(*c.witness) + ", an endpoint outside the claimed open interval");
    return true;
  }
  if (c.witness) {
    v.add(name + ": counterexample k", *c.witness);
    if (c.witness_value) v.add(name + ": value at counterexample", *c.witness_value);
  }
  if (c.root_interval) v.add(name + ": root interval", *c.root_interval);
  if (!c.note.empty()) v.note(name + ": " + c.note);
  return false;
}

/// Integer coefficients of N^2 * f(i/N) as a polynomial in i, scaled by a
/// positive constant so that signs are preserved.
struct ScaledQuad {
  mpz_class a2, a1, a0;
  int sign_at(long i) const {
    mpz_class x = a2 * i;
    x += a1;
    x *= i;
    x += a0;
    return sgn(x);
  }
};

ScaledQuad scale_quad(const QuadInL& f, long N) {
  const Rational c1 = f.c1 * N;
  const Rational c0 = f.c0 * N * N;
  mpz_class lcm_den = 1;
  for (const Rational* c : {&f.c2, &c1, &c0}) lcm_den = lcm(lcm_den, c->get_den());
  auto as_int = [&](const Rational& c) {
    Rational s = c * lcm_den;
    return mpz_class(s.get_num() / s.get_den());
  };
  return {as_int(f.c2), as_int(c1), as_int(c0)};
}

/// Largest real root of a quadratic (or linear) in l, as a double; -inf if none.
double largest_root(const QuadInL& f) {
  const double a = to_double(f.c2), b = to_double(f.c1), c = to_double(f.c0);
  if (f.c2 == 0) return f.c1 == 0 ? -INFINITY : -c / b;
  const Rational disc = f.discriminant();
  if (disc < 0) return -INFINITY;
  const double r = std::sqrt(to_double(disc));
  return std::max((-b + r) / (2 * a), (-b - r) / (2 * a));
}

/// Signs of p between consecutive distinct roots in the open interval (lo, hi).
std::vector<std::pair<Rational, int>> sign_pattern(const UniPoly& p, const Rational& lo, const Rational& hi) {
  const auto roots = isolate_roots(p, RatInterval::open(lo, hi));
  std::vector<Rational> cuts{lo};
  for (const auto& r : roots) {
    cuts.push_back(r.lo());
    cuts.push_back(r.hi());
  }
  cuts.push_back(hi);
  std::vector<std::pair<Rational, int>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    const int s = sign(p(mid));
    if (out.empty() || out.back().second != s) out.push_back({mid, s});
  }
  return out;
}

std::string shape_name(const std::vector<std::pair<Rational, int>>& pattern) {
  std::string out;
  for (const auto& [k, s] : pattern) {
    if (!out.empty()) out += " then ";
    out += s > 0 ? "increasing" : (s < 0 ? "decreasing" : "constant");
  }
  return out;
}

}  // namespace

Verdict check_theorem_gate(int d1, int d2, const Rational& A) {
  Stopwatch sw;
  Verdict v = start("theorem-gate", d1, d2, A);
  std::vector<std::string> failed;
  const bool dims_ok = d1 >= 2 && d2 >= 2;
  if (!(d2 >= d1 && d1 >= 2)) failed.push_back("dimension ordering d2 >= d1 >= 2");
  if (excluded_pair(d1, d2)) failed.push_back("excluded dimensions (d1,d2) in {(2,2),(2,3),(2,4)}");
  v.add("clause d2 >= d1 >= 2", (d2 >= d1 && d1 >= 2) ? "PASS" : "FAIL");
  v.add("clause (d1,d2) not excluded", excluded_pair(d1, d2) ? "FAIL" : "PASS");
  if (dims_ok) {
    const Rational p = psi(d1, d2);
    const Rational b = bohm_bound(d1, d2);
    v.add("Psi", p);
    v.add("bohm_bound", b);
    v.add("clause Psi <= A", p <= A ? "PASS" : "FAIL");
    v.add("clause A < bohm_bound", A < b ? "PASS" : "FAIL");
    if (!(p <= A)) failed.push_back("A below Psi");
    if (!(A < b)) failed.push_back("A not strictly below the Bohm bound");
  } else {
    failed.push_back("dimensions below 2");
  }
  for (const auto& f : failed) v.note("failed clause: " + f);
  v.gate = failed.empty() ? "PASS" : "FAIL";
  v.status = failed.empty() ? Status::kVerified : Status::kOutOfHypothesis;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_bohm_gate(int d1, int d2, const Rational& A) {
  Stopwatch sw;
  Verdict v = start("bohm-gate", d1, d2, A);
  require_dimensions(d1, d2);
  const Rational b = bohm_bound(d1, d2);
  v.add("bohm_bound", b);
  v.add("A - bohm_bound", A - b);
  const bool pass = A >= b;
  v.gate = pass ? "PASS" : "FAIL";
  v.status = pass ? Status::kVerified : Status::kOutOfHypothesis;
  v.note(pass ? "A is in the range covered by the Bohm non-existence theorem"
              : "A is below the Bohm bound; the theorem gate decides coverage");
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_thresholds(int d1, int d2) {
  Stopwatch sw;
  Verdict v = start("thresholds", d1, d2);
  if (!require_ordered(v)) return v;
  const auto th = thresholds(d1, d2);
  const auto rho = rho_polys(d1, d2);
  bool ok = true;
  const Rational ratio_at_one = rho.rho0(1) / rho.rho1(1);
  v.add("Psi", th.psi);
  v.add("rho0(1)/rho1(1)", ratio_at_one);
  ok &= ratio_at_one == th.psi;
  const Rational om1 = th.omega_cap_at(1), xi1 = th.xi_cap_at(1), om0 = th.omega_cap_at(0);
  v.add("Omega(1)", om1);
  v.add("Xi(1)", xi1);
  v.add("bohm_bound", th.bohm_bound);
  ok &= om1 == th.bohm_bound && xi1 == th.bohm_bound;
  v.add("Omega(0)", om0);
  v.add("printed Omega(0)", th.local_barrier);
  ok &= om0 == th.local_barrier;
  v.add("Psi < bohm_bound", th.psi < th.bohm_bound ? "true" : "false");
  ok &= th.psi < th.bohm_bound;
  const bool chain = om0 <= th.psi;
  v.add("Omega(0) <= Psi", chain ? "true" : "false");
  const UniPoly crossing = th.omega_cap.num - th.omega_cap.den * th.psi;
  v.add("Omega = Psi crossings in (0,1)", std::to_string(sturm_root_count(crossing, RatInterval::open(0, 1))));
  if (d1 == 2 && d2 == 2) {
    v.note("Omega(0) <= Psi is not claimed for (2,2)");
  } else {
    ok &= chain;
  }
  if (!ok) v.add("Psi - Omega(0)", th.psi - om0);
  v.status = ok ? Status::kVerified : Status::kRefuted;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_omega2_negative(int d1, int d2) {
  Stopwatch sw;
  Verdict v = start("omega2", d1, d2);
  if (!require_ordered(v)) return v;
  const auto f = omega_factors(d1, d2);
  v.add("omega_2", f.w2);
  v.add("omega_2(0)", f.w2(0));
  const bool ok = record_sign(v, "omega_2", certify_sign(f.w2, RatInterval::closed(lower_end(d1, d2), 1), SignClaim::kNegative));
  v.status = ok ? Status::kVerified : Status::kRefuted;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_omega0_positive(int d1, int d2) {
  Stopwatch sw;
  Verdict v = start("omega0", d1, d2);
  if (!require_ordered(v)) return v;
  const auto f = omega_factors(d1, d2);
  const int n = d1 + d2;
  v.add("omega_0", f.w0);
  bool ok = record_sign(v, "omega_0", certify_sign(f.w0, RatInterval::closed(lower_end(d1, d2), 1), SignClaim::kPositive));
  const Rational left = f.w0(lower_end(d1, d2));
  const Rational left_printed = make_rational(d1 * d1 * (n + d1), d2);
  const Rational right = f.w0(1);
  const Rational right_printed = make_rational(static_cast<long>(d2) * (n - 1) * (d1 * n - n - d1));
  v.add("omega_0(-d1/d2)", left);
  v.add("d1^2 (n+d1)/d2", left_printed);
  v.add("omega_0(1)", right);
  v.add("d2 (n-1) (d1 n - n - d1)", right_printed);
  if (left != left_printed || right != right_printed) {
    ok = false;
    v.note("endpoint identity mismatch");
  }
  v.status = ok ? Status::kVerified : Status::kRefuted;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_pxqx_negative(int d1, int d2) {
  Stopwatch sw;
  Verdict v = start("pxqx", d1, d2);
  if (!require_ordered(v)) return v;
  const auto s = slice_polys(d1, d2);
  const UniPoly sum = (s.px + s.qx) * make_rational(static_cast<long>(d1) * (d1 + d2 - 1));
  v.add("d1 (n-1) (P_X + Q_X)", sum);
  bool ok = record_sign(v, "P_X + Q_X", certify_sign(sum, RatInterval::closed(lower_end(d1, d2), 1), SignClaim::kNegative));
  v.add("P_X(1)", s.px(1));
  v.add("Q_X(1)", s.qx(1));
  if (s.px(1) != 0 || !(s.qx(1) < 0)) {
    ok = false;
    v.note("sanity at k=1 failed: expected P_X(1) = 0 and Q_X(1) < 0");
  }
  v.status = ok ? Status::kVerified : Status::kRefuted;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_px_root_structure(int d1, int d2) {
  Stopwatch sw;
  Verdict v = start("px-roots", d1, d2);
  if (!require_ordered(v)) return v;
  const UniPoly pt = px_tilde(d1, d2);
  const Rational lo = lower_end(d1, d2);
  v.add("px_tilde", pt);
  v.add("px_tilde(-d1/d2)", pt(lo));
  v.add("px_tilde(0)", pt(0));
  bool ok = true;
  const int count = sturm_root_count(pt, RatInterval::open(lo, 0));
  v.add("roots in (-d1/d2, 0)", std::to_string(count));
  if (count != 1) {
    v.note("expected exactly one root of px_tilde in (-d1/d2, 0)");
    v.add("px_tilde(-d1/d2)", pt(lo));
    v.status = Status::kRefuted;
    v.elapsed_ms = sw.ms();
    return v;
  }
  const RatInterval kiv = isolate_roots(pt, RatInterval::open(lo, 0)).front();
  v.add("k_star", kiv);
  v.add("k_star approx", to_decimal_string(kiv.midpoint(), 12));
  ok &= record_sign(v, "px_tilde left of k_star",
                    certify_sign(pt, RatInterval(lo, kiv.lo(), true, !kiv.is_point()), SignClaim::kNegative));
  ok &= record_sign(v, "px_tilde right of k_star",
                    certify_sign(pt, RatInterval(kiv.hi(), 1, !kiv.is_point(), true), SignClaim::kPositive));
  const Rational lb = k_star_lower_bracket(d1, d2), ub = k_star_upper_bracket(d1, d2);
  v.add("lower bracket", lb);
  v.add("px_tilde(lower bracket)", pt(lb));
  v.add("upper bracket", ub);
  v.add("px_tilde(upper bracket)", pt(ub));
  // One root with the sign change above: the bracket signs place it.
  if (!(lo < lb && pt(lb) < 0)) {
    ok = false;
    v.note("lower bracketing inequality fails");
  }
  if (!(ub < 0 && pt(ub) > 0)) {
    ok = false;
    v.note("upper bracketing inequality fails");
  }
  v.add("bracketed k_star", RatInterval::open(lb, ub));
  if (d2 > 2) {
    const Rational lead = pt.coeff(2);
    v.add("concavity coefficient", lead);
    if (lead < 0) {
      ok = false;
      v.note("px_tilde is not concave up");
    } else if (lead == 0) {
      v.note("px_tilde is linear for this pair; concavity holds only weakly");
    }
  }
  v.status = ok ? Status::kVerified : Status::kRefuted;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_resultant_identity(int d1, int d2, const CheckOptions& opts) {
  Stopwatch sw;
  Verdict v = start("resultant-identity", d1, d2, std::nullopt, opts.seed);
  require_dimensions(d1, d2);
  RationalSampler rng(opts.seed);
  const Rational bound = bohm_bound(d1, d2);
  const Rational lo = lower_end(d1, d2);
  const auto polys = slice_polys(d1, d2);
  int accepted = 0, skipped = 0;
  bool refuted = false;
  auto one = [&](const Rational& A, const Rational& k) {
    if (polys.px(k) == 0) {
      ++skipped;
      v.note("skipped k = " + to_string(k) + ": P_X vanishes");
      return;
    }
    const auto t = StructuralTriple::make(d1, d2, A);
    const auto sc = slice_coefficients(t, k);
    const QuadInL om = omega_quad(t, k);
    if (sc.p_y.c2 == 0 || sc.q_y.c2 == 0 || om.c2 == 0) {
      ++skipped;
      v.note("skipped (A,k) = (" + to_string(A) + ", " + to_string(k) + "): a leading coefficient in l vanishes");
      return;
    }
    const Rational lhs = resultant_in_l(om, sc.p_y);
    const Rational rhs = resultant_omega_py_closed_form(t, k);
    const Rational inner = resultant_in_l(sc.q_y, sc.p_y);
    const Rational inner_rhs = resultant_qy_py_closed_form(t, k);
    if (accepted == 0) {
      v.add("first sample (A,k)", "(" + to_string(A) + ", " + to_string(k) + ")");
      v.add("Res_l(omega,P_Y) at first sample", lhs);
      v.add("Res_l(Q_Y,P_Y) at first sample", inner);
    }
    ++accepted;
    if (lhs != rhs || inner != inner_rhs) {
      refuted = true;
      v.add("counterexample (A,k)", "(" + to_string(A) + ", " + to_string(k) + ")");
      v.add("Res_l(omega,P_Y)", lhs);
      v.add("closed form", rhs);
      v.add("Res_l(Q_Y,P_Y)", inner);
      v.add("inner closed form", inner_rhs);
    }
  };
  // k = 1 is a root of P_X and exercises the skip path.
  one(make_rational(1), make_rational(1));
  while (accepted < opts.identity_samples && !refuted) {
    Rational A = rng.in_range(0, 2 * bound, 4096);
    const Rational k = rng.in_range(lo, 1, 4096);
    if (A == 0) A = bound / 4096;
    one(A, k);
  }
  v.add("samples", std::to_string(accepted));
  v.add("skipped", std::to_string(skipped));
  v.status = refuted ? Status::kRefuted : Status::kSampledConsistent;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_resultant_positivity(int d1, int d2, const Rational& A) {
  Stopwatch sw;
  Verdict v = start("resultant-pos", d1, d2, A);
  if (!require_ordered(v)) return v;
  if (!(A > 0)) {
    v.status = Status::kOutOfHypothesis;
    v.note("requires A > 0");
    v.elapsed_ms = sw.ms();
    return v;
  }
  const auto rho = rho_polys(d1, d2);
  const Rational p = psi(d1, d2);
  const RatInterval kiv = k_star(d1, d2);
  v.add("k_star", kiv);
  v.add("Psi", p);
  v.add("A >= Psi", A >= p ? "true" : "false");
  const UniPoly r = rho.rho1 * A - rho.rho0;
  v.add("rho1 A - rho0", r);
  bool ok = true;

  // (k_star, 1): Sturm on [k_star upper end, 1], zero at k = 1 only when A = Psi.
  const std::optional<Rational> allowed = A == p ? std::optional<Rational>(make_rational(1)) : std::nullopt;
  ok &= record_sign(v, "rho1 A - rho0", certify_sign(r, RatInterval::closed(kiv.hi(), 1), SignClaim::kPositive), allowed);
  v.add("rho1(1) A - rho0(1)", r(1));

  // [k_star lower end, 0], for every A > 0: rho0 <= 0, rho1 >= 0, no common root.
  const RatInterval left = RatInterval::closed(kiv.lo(), 0);
  ok &= record_sign(v, "rho0", certify_sign(rho.rho0, left, SignClaim::kNonpositive));
  ok &= record_sign(v, "rho1", certify_sign(rho.rho1, left, SignClaim::kNonnegative));
  const UniPoly g = gcd(rho.rho0, rho.rho1);
  v.add("gcd(rho0, rho1)", g);
  const int common = g.degree() <= 0 ? 0 : sturm_root_count(g, left);
  v.add("common roots on [k_star, 0]", std::to_string(common));
  if (common != 0) {
    ok = false;
    v.note("rho0 and rho1 share a root near k_star..0");
    const auto roots = isolate_roots(g, left);
    v.add("common root interval", roots.front());
    v.add("rho1 A - rho0 at common root midpoint", r(roots.front().midpoint()));
  }

  // rho3 drives the monotonicity of rho0/rho1 on (0,1).
  v.add("rho3", rho.rho3);
  for (int i = 0; i <= rho.rho3.degree(); ++i) {
    if (!(rho.rho3.coeff(i) > 0)) {
      ok = false;
      v.add("nonpositive rho3 coefficient of k^" + std::to_string(i), rho.rho3.coeff(i));
    }
  }
  const RationalFunction closed = rho_ratio_derivative_closed_form(d1, d2);
  const UniPoly quotient_num = rho.rho0.derivative() * rho.rho1 - rho.rho0 * rho.rho1.derivative();
  const bool deriv_ok = quotient_num * closed.den == closed.num * rho.rho1 * rho.rho1;
  v.add("d/dk(rho0/rho1) closed form", deriv_ok ? "exact polynomial identity" : "mismatch");
  ok &= deriv_ok;
  v.status = ok ? Status::kVerified : Status::kRefuted;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_omega_monotonicity(int d1, int d2, const CheckOptions& opts) {
  Stopwatch sw;
  Verdict v = start("omega-monotonicity", d1, d2, std::nullopt, opts.seed);
  if (!require_ordered(v)) return v;
  const RationalFunction om = omega_cap_function(d1, d2);
  const RationalFunction dom = om.derivative();
  const RationalFunction pref = omega_derivative_prefactor(d1, d2);
  const AlphaPolys al = alpha_polys(d1, d2);
  const UniPoly prod = al.a1 * al.a2 * al.a3 * al.a4;
  bool ok = true;

  const bool identity = dom.num * pref.den == pref.num * prod * dom.den;
  v.add("dOmega/dk = prefactor * a1 a2 a3 a4", identity ? "exact polynomial identity" : "mismatch");
  ok &= identity;
  RationalSampler rng(opts.seed);
  int checked = 0;
  while (checked < opts.factorization_samples) {
    const Rational k = rng.in_range(0, 1, 1 << 16);
    if (dom.den(k) == 0 || pref.den(k) == 0) continue;
    ++checked;
    const Rational lhs = dom(k), rhs = pref(k) * prod(k);
    if (lhs != rhs) {
      ok = false;
      v.add("factorization counterexample k", k);
      v.add("dOmega/dk", lhs);
      v.add("prefactor * a1 a2 a3 a4", rhs);
      break;
    }
  }
  v.add("factorization samples", std::to_string(checked));

  const RatInterval unit = RatInterval::closed(0, 1);
  v.add("alpha_1", al.a1);
  v.add("alpha_2", al.a2);
  v.add("alpha_3", al.a3);
  v.add("alpha_4", al.a4);
  ok &= record_sign(v, "alpha_1", certify_sign(al.a1, unit, SignClaim::kPositive));
  ok &= record_sign(v, "alpha_2", certify_sign(al.a2, unit, SignClaim::kPositive));
  if (d1 <= 3) {
    const int c = sturm_root_count(al.a3, RatInterval::open(0, 1));
    v.add("alpha_3 roots in (0,1)", std::to_string(c));
    if (c != 1) {
      ok = false;
      v.note("expected alpha_3 to have exactly one root in (0,1)");
    } else {
      v.add("alpha_3 root", isolate_roots(al.a3, RatInterval::open(0, 1)).front());
    }
  } else {
    ok &= record_sign(v, "alpha_3", certify_sign(al.a3, unit, SignClaim::kNonnegative));
  }
  if (d1 == 2 && d2 == 2) {
    ok &= record_sign(v, "alpha_4", certify_sign(al.a4, unit, SignClaim::kNonpositive));
  } else {
    ok &= record_sign(v, "alpha_4", certify_sign(al.a4, unit, SignClaim::kPositive));
  }

  // The prefactor is a positive square ratio on (0,1), so the product decides.
  const auto pattern = sign_pattern(prod, 0, 1);
  const std::string shape = shape_name(pattern);
  std::string expected;
  if (d1 == 2 && d2 == 2) {
    expected = "increasing then decreasing";
  } else if (d1 <= 3) {
    expected = "decreasing then increasing";
  } else {
    expected = "increasing";
  }
  v.add("Omega on (0,1)", shape);
  v.add("expected shape", expected);
  for (const auto& [k, s] : pattern) v.add("sign of dOmega/dk at " + to_string(k), std::to_string(s));
  if (shape != expected) {
    ok = false;
    v.note("Omega shape on (0,1) differs from the case table");
  }
  v.status = ok ? Status::kVerified : Status::kRefuted;
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_initial_inclusion(int d1, int d2) {
  Stopwatch sw;
  Verdict v = start("initial-inclusion", d1, d2);
  if (!require_ordered(v)) return v;
  const Rational dxi = xi_cap_function(d1, d2).derivative()(1);
  const Rational dom = omega_cap_function(d1, d2).derivative()(1);
  v.add("dXi/dk(1)", dxi);
  v.add("dOmega/dk(1)", dom);
  v.add("printed dXi/dk(1)", xi_slope_at_one(d1, d2));
  v.add("printed dOmega/dk(1)", omega_slope_at_one(d1, d2));
  bool ok = dxi == xi_slope_at_one(d1, d2) && dom == omega_slope_at_one(d1, d2);
  if (!ok) v.note("slope closed forms disagree with the quotient rule");
  const bool steeper = dom > dxi;
  v.add("dOmega/dk(1) - dXi/dk(1)", dom - dxi);
  v.add("dOmega/dk(1) > dXi/dk(1)", steeper ? "true" : "false");
  if (excluded_pair(d1, d2)) {
    v.note(steeper ? "inequality holds although the pair is excluded" : "inequality fails; the pair is excluded");
    v.status = ok ? Status::kOutOfHypothesis : Status::kRefuted;
  } else {
    if (!steeper) v.note("inequality fails at k = 1");
    v.status = ok && steeper ? Status::kVerified : Status::kRefuted;
  }
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_omega_grid(int d1, int d2, const Rational& A, const CheckOptions& opts) {
  Stopwatch sw;
  Verdict v = start("omega-grid", d1, d2, A, opts.seed);
  if (!require_ordered(v)) return v;
  if (!(A > 0)) {
    v.status = Status::kOutOfHypothesis;
    v.note("requires A > 0");
    v.elapsed_ms = sw.ms();
    return v;
  }
  const long N = opts.grid_denominator;
  const bool hyp = !excluded_pair(d1, d2) && psi(d1, d2) <= A && A < bohm_bound(d1, d2);
  const RatInterval kiv = k_star(d1, d2);
  mpz_class floor_hi;
  const Rational scaled = kiv.hi() * N;
  mpz_fdiv_q(floor_hi.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const long j_first = floor_hi.get_si() + 1;
  const long j_last = hyp ? N - 1 : 0;
  if (!hyp) v.note("theorem hypothesis fails; only k in (k_star, 0] is searched");
  v.note("the continuation-in-A step of the region argument is not mechanized; coverage is sampled");
  v.add("k grid", RatInterval::closed(make_rational(j_first, N), make_rational(j_last, N)));
  v.add("grid step", make_rational(1, N));
  long points = 0, in_region = 0;
  const double l_cap = 64;
  std::optional<std::pair<Rational, Rational>> bad;
  const auto base = StructuralTriple::make(d1, d2, A);
  for (long j = j_first; j <= j_last && !bad; ++j) {
    const Rational k = make_rational(j, N);
    const auto sc = slice_coefficients(base, k);
    const QuadInL om = omega_quad(base, k);
    const double r = std::max({1.0, largest_root(sc.p_y), largest_root(om)});
    const long i_max = static_cast<long>(std::ceil(std::min(l_cap, 1.5 * r) * N));
    const ScaledQuad py = scale_quad(sc.p_y, N), w = scale_quad(om, N);
    for (long i = 1; i <= i_max; ++i) {
      ++points;
      if (py.sign_at(i) >= 0) continue;
      ++in_region;
      if (w.sign_at(i) >= 0) {
        bad = {k, make_rational(i, N)};
        break;
      }
    }
  }
  v.add("grid points", std::to_string(points));
  v.add("points with P_Y < 0", std::to_string(in_region));
  if (bad) {
    const auto& [k, l] = *bad;
    v.add("counterexample k", k);
    v.add("counterexample l", l);
    v.add("omega at counterexample", omega_value(base, k, l));
    v.add("P_Y at counterexample", slice_coefficients(base, k).p_y(l));
    v.status = Status::kRefuted;
  } else {
    v.status = Status::kSampledConsistent;
  }
  v.elapsed_ms = sw.ms();
  return v;
}

Verdict check_qy_on_gamma(int d1, int d2, const Rational& A, const CheckOptions& opts) {
  Stopwatch sw;
  Verdict v = start("qy-gamma", d1, d2, A, opts.seed);
  if (!require_ordered(v)) return v;
  const Rational p = psi(d1, d2), bound = bohm_bound(d1, d2);
  if (!(p <= A && A < bound)) {
    v.status = Status::kOutOfHypothesis;
    v.add("Psi", p);
    v.add("bohm_bound", bound);
    v.note("requires Psi <= A < bohm_bound");
    v.elapsed_ms = sw.ms();
    return v;
  }
  const int n = d1 + d2;
  const auto t = StructuralTriple::make(d1, d2, A);
  bool ok = true;

  // (a) Q_Y(A,1,.) is concave with Q_Y(A,1,0) > 0, so it is negative on
  // (mu2, mu1) iff Q_Y(A,1,mu2) <= 0.
  const QuadInL q = slice_coefficients(t, 1).q_y;
  const MuRoots mu = mu_roots(t);
  v.add("Q_Y(A,1,l) coefficients", to_string(q.c2) + ", " + to_string(q.c1) + ", " + to_string(q.c0));
  v.add("mu2", mu.mu2.enclosure);
  v.add("mu1", mu.mu1.enclosure);
  const QuadraticSurd at_mu2 = evaluate(q, mu.mu2.surd);
  v.add("Q_Y(A,1,mu2)", surd_text(at_mu2));
  if (!(q.c2 < 0 && q.c0 > 0)) {
    ok = false;
    v.note("Q_Y(A,1,l) is not concave with positive constant term");
  }
  if (at_mu2.sign() > 0) {
    ok = false;
    v.note("Q_Y(A,1,mu2) > 0, so Q_Y is positive near mu2 inside (mu2, mu1)");
    const Rational l_in = (mu.mu2.enclosure.hi() + mu.mu1.enclosure.lo()) / 2;
    v.add("counterexample l", l_in);
    v.add("Q_Y(A,1,l)", q(l_in));
  }

  // (b) value at the Bohm bound.
  const auto tb = StructuralTriple::make(d1, d2, bound);
  const Rational at_bound = slice_coefficients(tb, 1).q_y(make_rational(2 * (d1 - 1), d2 - 1));
  v.add("Q_Y(bound,1,2(d1-1)/(d2-1))", at_bound);
  v.add("printed closed form", qy_at_bound_closed_form(d1, d2));
  if (at_bound != qy_at_bound_closed_form(d1, d2)) {
    ok = false;
    v.note("boundary value differs from the closed form");
  }

  // (c) Gamma identity.
  const Rational km = lower_end(d1, d2);
  const QuadInL qg = slice_coefficients(t, km).q_y;
  const Rational constant = make_rational(-(n + d1), static_cast<long>(n) * n * d2);
  RationalSampler rng(opts.seed);
  int hits = 0, attempts = 0, negative = 0, with_r1_below_r2 = 0;
  while (hits < opts.gamma_points && attempts < 100000) {
    ++attempts;
    const Rational l = rng.in_range(0, 8, 4096);
    const auto g = gamma_point(t, l);
    if (!g) continue;
    ++hits;
    const Rational& y2 = g->y_squared;
    const Rational R1 = y2 * ((d1 - 1) + A * l * l);
    const Rational R2 = y2 * ((d2 - 1) * l - make_rational(2 * d1, d2) * A * l * l);
    const Rational lhs = qg(l) * y2;
    const Rational rhs = constant + make_rational(d1, n) * (R1 - R2);
    if (R1 < R2) {
      ++with_r1_below_r2;
      if (qg(l) < 0) ++negative;
    }
    if (lhs != rhs) {
      ok = false;
      v.add("Gamma counterexample l", l);
      v.add("Q_Y Y^2", lhs);
      v.add("identity right side", rhs);
      break;
    }
  }
  v.add("Gamma points", std::to_string(hits));
  v.add("Gamma points with R1 < R2", std::to_string(with_r1_below_r2));
  v.add("of which Q_Y < 0", std::to_string(negative));
  if (hits < opts.gamma_points) {
    ok = false;
    v.note("too few constraint-satisfying Gamma points");
  }
  v.status = ok ? Status::kVerified : Status::kRefuted;
  v.elapsed_ms = sw.ms();
  return v;
}

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = {
      {"theorem-gate", true, false, {}, "hypothesis of the non-existence theorem"},
      {"bohm-gate", true, true, {}, "A at or above the Bohm bound"},
      {"thresholds", false, false, {}, "Psi, Omega and Xi identities at k = 0, 1"},
      {"omega2", false, false, {}, "omega_2 < 0 on [-d1/d2, 1]"},
      {"omega0", false, false, {}, "omega_0 > 0 on [-d1/d2, 1]"},
      {"pxqx", false, false, {}, "P_X + Q_X < 0 on [-d1/d2, 1]"},
      {"px-roots", false, false, {}, "one root k_star of px_tilde in (-d1/d2, 0) with brackets"},
      {"resultant-identity", false, false, {"px-roots"}, "Res_l(omega, P_Y) closed form at random (A, k)"},
      {"resultant-pos", true, false, {"px-roots"}, "rho1 A - rho0 > 0 on (k_star, 1)"},
      {"omega-monotonicity", false, false, {"omega2", "omega0"}, "dOmega/dk factorization and sign table"},
      {"initial-inclusion", false, false, {"thresholds"}, "dOmega/dk(1) > dXi/dk(1)"},
      {"omega-grid", true, false, {"resultant-pos", "omega-monotonicity"}, "omega < 0 where P_Y < 0, grid search"},
      {"qy-gamma", true, false, {"resultant-pos", "pxqx"}, "Q_Y on (mu2, mu1), bound value, Gamma identity"},
  };
  return catalog;
}

std::vector<std::string> check_ids() {
  std::vector<std::string> out;
  for (const auto& c : check_catalog()) out.push_back(c.id);
  return out;
}

Verdict run_check(const std::string& id, int d1, int d2, const std::optional<Rational>& A, const CheckOptions& opts) {
  const auto& cat = check_catalog();
  const auto it = std::find_if(cat.begin(), cat.end(), [&](const CheckInfo& c) { return c.id == id; });
  if (it == cat.end()) throw std::invalid_argument("unknown check id: " + id);
  if (it->needs_A && !A) throw std::invalid_argument("check " + id + " requires A");
  static const std::map<std::string, std::function<Verdict(int, int, const Rational&, const CheckOptions&)>> table = {
      {"theorem-gate", [](int a, int b, const Rational& A, const CheckOptions&) { return check_theorem_gate(a, b, A); }},
      {"bohm-gate", [](int a, int b, const Rational& A, const CheckOptions&) { return check_bohm_gate(a, b, A); }},
      {"thresholds", [](int a, int b, const Rational&, const CheckOptions&) { return check_thresholds(a, b); }},
      {"omega2", [](int a, int b, const Rational&, const CheckOptions&) { return check_omega2_negative(a, b); }},
      {"omega0", [](int a, int b, const Rational&, const CheckOptions&) { return check_omega0_positive(a, b); }},
      {"pxqx", [](int a, int b, const Rational&, const CheckOptions&) { return check_pxqx_negative(a, b); }},
      {"px-roots", [](int a, int b, const Rational&, const CheckOptions&) { return check_px_root_structure(a, b); }},
      {"resultant-identity",
       [](int a, int b, const Rational&, const CheckOptions& o) { return check_resultant_identity(a, b, o); }},
      {"resultant-pos",
       [](int a, int b, const Rational& A, const CheckOptions&) { return check_resultant_positivity(a, b, A); }},
      {"omega-monotonicity",
       [](int a, int b, const Rational&, const CheckOptions& o) { return check_omega_monotonicity(a, b, o); }},
      {"initial-inclusion", [](int a, int b, const Rational&, const CheckOptions&) { return check_initial_inclusion(a, b); }},
      {"omega-grid", [](int a, int b, const Rational& A, const CheckOptions& o) { return check_omega_grid(a, b, A, o); }},
      {"qy-gamma", [](int a, int b, const Rational& A, const CheckOptions& o) { return check_qy_on_gamma(a, b, A, o); }},
  };
  Verdict v = table.at(id)(d1, d2, A.value_or(Rational(0)), opts);
  if (A && !v.A) v.A = A;
  v.seed = opts.seed;
  return v;
}

CheckSuite::CheckSuite(std::vector<CheckInfo> checks) : checks_(std::move(checks)) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < checks_.size(); ++i) {
    if (!index.emplace(checks_[i].id, i).second) throw std::invalid_argument("duplicate check id: " + checks_[i].id);
  }
  std::vector<int> level(checks_.size(), -1);
  std::size_t placed = 0;
  for (int wave = 0; placed < checks_.size(); ++wave) {
    std::vector<std::size_t> now;
    for (std::size_t i = 0; i < checks_.size(); ++i) {
      if (level[i] >= 0) continue;
      bool ready = true;
      for (const auto& dep : checks_[i].depends_on) {
        const auto it = index.find(dep);
        if (it == index.end()) throw std::invalid_argument("unknown dependency " + dep + " of " + checks_[i].id);
        if (level[it->second] < 0 || level[it->second] >= wave) ready = false;
      }
      if (ready) now.push_back(i);
    }
    if (now.empty()) throw std::invalid_argument("dependency cycle among checks");
    for (auto i : now) level[i] = wave;
    placed += now.size();
    waves_.push_back(std::move(now));
  }
}

Status aggregate(const std::vector<Verdict>& verdicts, std::string* reason) {
  auto say = [&](const std::string& s) {
    if (reason) *reason = s;
  };
  const std::set<std::string> informational = [] {
    std::set<std::string> s;
    for (const auto& c : check_catalog()) {
      if (c.informational) s.insert(c.id);
    }
    return s;
  }();
  for (const auto& v : verdicts) {
    if (v.check_id != "theorem-gate" || v.status == Status::kVerified) continue;
    for (const auto& note : v.notes) {
      if (note.find("dimension") != std::string::npos) {
        say("theorem-gate: " + note);
        return Status::kOutOfHypothesis;
      }
    }
  }
  for (const auto& v : verdicts) {
    if (informational.count(v.check_id)) continue;
    if (v.status == Status::kRefuted) {
      say("refuted at " + v.check_id);
      return Status::kRefuted;
    }
  }
  for (const auto& v : verdicts) {
    if (informational.count(v.check_id)) continue;
    if (v.status == Status::kOutOfHypothesis) {
      std::string why = v.check_id;
      if (!v.notes.empty()) why += ": " + v.notes.front();
      say(why);
      return Status::kOutOfHypothesis;
    }
  }
  for (const auto& v : verdicts) {
    if (informational.count(v.check_id)) continue;
    if (v.status == Status::kSampledConsistent) {
      say("all checks pass; some are sampled");
      return Status::kSampledConsistent;
    }
  }
  say("all checks verified");
  return Status::kVerified;
}

BatteryResult run_full_battery(int d1, int d2, const Rational& A, const CheckOptions& opts) {
  require_dimensions(d1, d2);
  static const CheckSuite suite(check_catalog());
  const auto& checks = suite.checks();
  std::vector<std::optional<Verdict>> slots(checks.size());
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, opts.jobs));
  for (const auto& wave : suite.waves()) {
    for (std::size_t at = 0; at < wave.size(); at += jobs) {
      std::vector<std::pair<std::size_t, std::future<Verdict>>> running;
      for (std::size_t j = at; j < std::min(wave.size(), at + jobs); ++j) {
        const std::size_t i = wave[j];
        auto policy = jobs == 1 ? std::launch::deferred : std::launch::async;
        running.emplace_back(i, std::async(policy, [&, i] { return run_check(checks[i].id, d1, d2, A, opts); }));
      }
      for (auto& [i, f] : running) slots[i] = f.get();
    }
  }
  BatteryResult out;
  for (auto& s : slots) out.verdicts.push_back(std::move(*s));
  out.headline = aggregate(out.verdicts, &out.headline_reason);
  return out;
}

}  // namespace einstein_barrier
