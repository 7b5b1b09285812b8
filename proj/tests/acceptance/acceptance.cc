// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cli.h"
#include "dual.h"
#include "einstein_barrier/certifier.h"
#include "einstein_barrier/flow.h"
#include "einstein_barrier/manifold_points.h"
#include "einstein_barrier/model.h"
#include "einstein_barrier/resultant.h"
#include "einstein_barrier/slice.h"
#include "einstein_barrier/thresholds.h"

namespace eb = einstein_barrier;
using eb::Rational;
using testing_support::Dual;

namespace {

using Pair = std::pair<int, int>;

const std::vector<Pair> kTablePairs{{5, 8}, {7, 8}, {7, 14}, {11, 64}, {15, 128}};
const std::vector<Pair> kAppendixPairs{{2, 2}, {2, 5}, {3, 3}, {5, 8}, {7, 8}, {7, 14}, {11, 64}, {15, 128}};

Rational q(long num, long den = 1) { return eb::make_rational(num, den); }

// Closed forms written out independently of the library.
namespace oracle {

Rational psi(long d1, long d2) {
  const long n = d1 + d2;
  return Rational(4 * (d1 - 1) * n * n + d2 * d2) * (3 * n + d1) / (Rational((2 * n * n + n + d1) * (2 * n * n + n + d1)) * d1 * d1) *
         Rational(d2 * (d2 - 1) * (d2 - 1)) / (4 * (d1 - 1));
}

Rational bohm(long d1, long d2) {
  return Rational(d2 * (d2 - 1) * (d2 - 1)) / (4 * (d1 - 1) * (d1 + d2 + d1));
}

Rational local_barrier(long d1, long d2) {
  return Rational(d2 * (d2 - 1) * (d2 - 1)) / (d1 * d1 * (d1 * d2 - d2 + 4));
}

template <class T>
T rho1(long d1, long d2, const T& k) {
  const T s = 2 * d2 * d2 * k * k + d2 * k * k + 4 * d1 * d2 * k + 2 * d1 * k + 2 * d1 * d1;
  return T(4 * d1 * d1 * (d1 - 1)) * s * s;
}

template <class T>
T rho0(long d1, long d2, const T& k) {
  const T a = d1 + d2 * k;
  return T((d2 - 1) * (d2 - 1) * d2) * k * (4 * d1 + 3 * d2 * k) * (4 * (d1 - 1) * a * a + d2 * d2 * k * k);
}

template <class T>
T w2(long d1, long d2, const T& k) {
  return T(2 * d1 * d1 * d2 * d2 - d1 * d2 * d2 * d2 + d2 * d2 * d2 - d2 * d2) * k * k * k +
         T(4 * d1 * d1 * d1 * d2 - 4 * d1 * d1 * d2 * d2 - 2 * d1 * d1 * d2 + 4 * d1 * d2 * d2 - 2 * d1 * d2) * k * k +
         T(2 * d1 * d1 * d1 * d1 - 5 * d1 * d1 * d1 * d2 - 2 * d1 * d1 * d1 + 5 * d1 * d1 * d2) * k +
         T(-2 * d1 * d1 * d1 * d1 + 2 * d1 * d1 * d1);
}

template <class T>
T w1(long d1, long d2, const T& k) {
  return T(d1 * d2 * d2 * d2 - 4 * d1 * d2 * d2 - d2 * d2 * d2 + 3 * d2 * d2) * k * k * k +
         T(2 * d1 * d1 * d2 * d2 - 8 * d1 * d1 * d2 + 8 * d1 * d2 - 2 * d2 * d2) * k * k +
         T(d1 * d1 * d1 * d2 - 4 * d1 * d1 * d1 + 5 * d1 * d1 * d2 + 4 * d1 * d1 - 6 * d1 * d2) * k +
         T(4 * d1 * d1 * d1 - 4 * d1 * d1);
}

template <class T>
T w0(long d1, long d2, const T& k) {
  return T(d1 * d2 * d2 * d2 - 2 * d1 * d2 * d2 - d2 * d2 * d2 - 2 * d1 * d2 + d2 * d2) * k * k +
         T(2 * d1 * d1 * d2 * d2 - 2 * d1 * d1 * d2 - 2 * d1 * d2 * d2 - 4 * d1 * d1 + 4 * d1 * d2) * k +
         T(d1 * d1 * d1 * d2 - d1 * d1 * d2 + 4 * d1 * d1);
}

template <class T>
T omega_cap(long d1, long d2, const T& k) {
  const T a = w1(d1, d2, k);
  return -(a * a) / ((2 * d1 + d2 * k) * w0(d1, d2, k) * w2(d1, d2, k)) * T(Rational(d2 * (d2 - 1) * (d2 - 1)) / (4 * (d1 - 1)));
}

template <class T>
T xi_cap(long d1, long d2, const T& k) {
  const long n = d1 + d2;
  const T a = d1 + d2 * k - 1;
  return T(d2 * (d2 - 1) * (d2 - 1)) * a * a /
         (T(4 * (d1 - 1)) * (d1 + k * d2 - k) * (d1 * (n + d1 - 2) + d2 * (n + d1 - 1) * k));
}

Rational px_tilde(long d1, long d2, const Rational& k) {
  return Rational(d2 * (d1 * d2 - 2 * d1 - d2 + 1)) * k * k + Rational(2 * (d2 - 1) * (d1 - 1) * d1) * k +
         d1 * d1 * (d1 - 1);
}

Rational px(long d1, long d2, const Rational& k) {
  return (1 - k) / (d1 * (d1 + d2 - 1)) * px_tilde(d1, d2, k);
}

Rational omega_factor_form(long d1, long d2, const Rational& A, const Rational& k, const Rational& l) {
  const long n = d1 + d2;
  return (Rational(2 * d1 + d2 * k) / d2 * w2(d1, d2, k) * A * l * l + (d2 - 1) * k * w1(d1, d2, k) * l -
          (d1 - 1) * k * k * w0(d1, d2, k)) /
         (d1 * d1 * (n - 1));
}

Rational res_omega_py(long d1, long d2, const Rational& A, const Rational& k) {
  const long n = d1 + d2;
  const Rational p = px(d1, d2, k);
  return p * p * (d1 - 1) * A / (d1 * d1 * d2 * d2 * (n - 1) * (n - 1)) * (rho1(d1, d2, k) * A - rho0(d1, d2, k));
}

// Res of a2 l^2 + a1 l + a0 and b2 l^2 + b1 l + b0.
Rational quadratic_resultant(const eb::QuadInL& a, const eb::QuadInL& b) {
  const Rational x = a.c2 * b.c0 - a.c0 * b.c2;
  return x * x - (a.c2 * b.c1 - a.c1 * b.c2) * (a.c1 * b.c0 - a.c0 * b.c1);
}

}  // namespace oracle

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (cond) return;
  if (o.pass) {
    o.detail = what;
  } else if (o.detail.size() < 400) {
    o.detail += "; " + what;
  }
  o.pass = false;
}

Outcome criterion1() {
  Outcome o;
  const std::vector<Rational> printed{Rational("186494/198025"), Rational("8879/20886"), Rational("11/6"),
                                      Rational("26823819708/1214772845"), Rational("28882022881/576131150")};
  const auto& table = eb::cli::table_entries();
  require(o, table.size() == kTablePairs.size(), "table size");
  for (std::size_t i = 0; i < kTablePairs.size() && i < table.size(); ++i) {
    const auto [d1, d2] = kTablePairs[i];
    const std::string tag = "(" + std::to_string(d1) + "," + std::to_string(d2) + ")";
    require(o, eb::psi(d1, d2) == printed[i], "psi " + tag);
    require(o, oracle::psi(d1, d2) == printed[i], "psi closed form " + tag);
    require(o, table[i].d1 == d1 && table[i].d2 == d2, "table order " + tag);
    const Rational& A = table[i].A;
    require(o, printed[i] <= A && A < oracle::bohm(d1, d2), "A in [psi, bound) " + tag);
    require(o, eb::bohm_bound(d1, d2) == oracle::bohm(d1, d2), "bound " + tag);
  }
  if (o.pass) o.detail = "five printed Psi values and A in [Psi, bound)";
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (const auto& [d1, d2] : kTablePairs) {
    const std::string tag = "(" + std::to_string(d1) + "," + std::to_string(d2) + ")";
    const Rational one(1);
    const Rational psi = eb::psi(d1, d2);
    require(o, psi == oracle::rho0<Rational>(d1, d2, one) / oracle::rho1<Rational>(d1, d2, one), "psi = rho0/rho1 " + tag);
    const auto rho = eb::rho_polys(d1, d2);
    require(o, psi == rho.rho0(one) / rho.rho1(one), "library rho ratio " + tag);
    const Rational bound = oracle::bohm(d1, d2);
    require(o, eb::omega_cap(d1, d2, one) == bound && oracle::omega_cap<Rational>(d1, d2, one) == bound,
            "Omega(1) " + tag);
    require(o, eb::xi_cap(d1, d2, one) == bound && oracle::xi_cap<Rational>(d1, d2, one) == bound, "Xi(1) " + tag);
    const Rational zero(0);
    require(o, oracle::omega_cap<Rational>(d1, d2, zero) == oracle::local_barrier(d1, d2), "Omega(0) " + tag);
    require(o, eb::local_barrier(d1, d2) == oracle::local_barrier(d1, d2), "local barrier " + tag);
    require(o, oracle::local_barrier(d1, d2) <= psi, "Omega(0) <= Psi " + tag);
    require(o, eb::check_thresholds(d1, d2).status == eb::Status::kVerified, "thresholds check " + tag);
  }
  if (o.pass) o.detail = "Psi = rho0(1)/rho1(1), Omega(1) = Xi(1) = bound, Omega(0) <= Psi";
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& [d1, d2] : kAppendixPairs) {
    const std::string tag = "(" + std::to_string(d1) + "," + std::to_string(d2) + ")";
    require(o, eb::check_omega2_negative(d1, d2).status == eb::Status::kVerified, "omega2 < 0 " + tag);
    require(o, eb::check_omega0_positive(d1, d2).status == eb::Status::kVerified, "omega0 > 0 " + tag);
    require(o, eb::check_pxqx_negative(d1, d2).status == eb::Status::kVerified, "P_X + Q_X < 0 " + tag);
    require(o, eb::check_px_root_structure(d1, d2).status == eb::Status::kVerified, "px-roots " + tag);

    // P~_X has degree <= 2, so opposite signs at the ends of (-d1/d2, 0) mean exactly one root.
    const Rational left = q(-d1, d2);
    const Rational lower = Rational(-d1 * (2 * d1 + d2 - 2)) / (d2 * (2 * d1 + d2 - 1));
    const Rational upper = q(-(d1 - 1), d2);
    require(o, oracle::px_tilde(d1, d2, left) < 0 && oracle::px_tilde(d1, d2, 0) > 0, "one root " + tag);
    require(o, left < lower && lower < upper && upper < 0, "bracket order " + tag);
    require(o, oracle::px(d1, d2, lower) < 0 && oracle::px(d1, d2, upper) > 0, "bracket signs " + tag);
    const auto ks = eb::k_star(d1, d2);
    require(o, lower <= ks.lo() && ks.hi() <= upper, "k_star inside brackets " + tag);
    require(o, oracle::px_tilde(d1, d2, ks.lo()) <= 0 && oracle::px_tilde(d1, d2, ks.hi()) >= 0, "k_star isolates " + tag);
  }
  if (o.pass) o.detail = "Sturm certificates and the P~_X root bracketing for 8 pairs";
  return o;
}

Outcome criterion4() {
  Outcome o;
  long total = 0;
  for (const auto& [d1, d2] : kAppendixPairs) {
    const std::string tag = "(" + std::to_string(d1) + "," + std::to_string(d2) + ")";
    eb::RationalSampler rng(4000 + 100 * d1 + d2);
    const Rational top = 2 * oracle::bohm(d1, d2);
    int accepted = 0;
    for (int tries = 0; accepted < 120 && tries < 2000; ++tries) {
      const Rational A = rng.in_range(q(1, 1000), top, 4099);
      const Rational k = rng.in_range(-1, 1, 4093);
      const auto t = eb::StructuralTriple::make(d1, d2, A);
      const auto omega = eb::omega_quad(t, k);
      const auto py = eb::slice_coefficients(t, k).p_y;
      if (omega.c2 == 0 || py.c2 == 0) continue;
      ++accepted;
      const Rational sylvester = eb::sylvester_resultant(omega.as_poly(), py.as_poly());
      require(o, sylvester == oracle::quadratic_resultant(omega, py), "Sylvester vs quadratic resultant " + tag);
      require(o, sylvester == oracle::res_omega_py(d1, d2, A, k), "closed form " + tag);
    }
    require(o, accepted >= 100, "fewer than 100 samples " + tag);
    total += accepted;
  }
  if (o.pass) o.detail = std::to_string(total) + " (A, k) samples agree";
  return o;
}

Outcome criterion5() {
  Outcome o;
  long total = 0;
  for (const auto& [d1, d2] : kAppendixPairs) {
    const std::string tag = "(" + std::to_string(d1) + "," + std::to_string(d2) + ")";
    eb::RationalSampler rng(5000 + 100 * d1 + d2);
    const Rational top = 2 * oracle::bohm(d1, d2);
    for (int i = 0; i < 100; ++i) {
      const auto t = eb::StructuralTriple::make(d1, d2, rng.in_range(0, top, 997));
      const Rational k = rng.in_range(-2, 2, 991);
      const Rational l = rng.in_range(-3, 3, 983);
      const Rational def = eb::omega_value(t, k, l);
      require(o, def == oracle::omega_factor_form(d1, d2, t.A, k, l), "omega factor form " + tag);
      require(o, def == eb::omega_factor_form(t, k, l), "library factor form " + tag);

      const auto p = eb::random_manifold_point(t, rng);
      require(o, eb::conservation_residual(p, t) == 0, "point off the invariant set " + tag);
      const Rational kk = p.X2 / p.X1;
      const Rational ll = p.Z / p.Y;
      const auto s = eb::slice_coefficients(t, kk);
      const Rational y2x1 = p.Y * p.Y * p.X1;
      const Rational x13 = p.X1 * p.X1 * p.X1;
      require(o, eb::eval_P(p, t) == s.p_y(ll) * y2x1 + s.p_x * x13, "P reconstruction " + tag);
      require(o, eb::eval_Q(p, t) == s.q_y(ll) * y2x1 + s.q_x * x13, "Q reconstruction " + tag);
      require(o, s.p_x == oracle::px(d1, d2, kk), "P_X closed form " + tag);
      ++total;
    }
  }
  if (o.pass) o.detail = std::to_string(total) + " omega samples and " + std::to_string(total) + " manifold points";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::vector<Pair> pairs = kAppendixPairs;
  pairs.push_back({2, 3});
  pairs.push_back({2, 4});
  std::string failing;
  for (const auto& [d1, d2] : pairs) {
    const std::string tag = "(" + std::to_string(d1) + "," + std::to_string(d2) + ")";
    const Dual k(Rational(1), Rational(1));
    const Rational omega_slope = oracle::omega_cap<Dual>(d1, d2, k).b;
    const Rational xi_slope = oracle::xi_cap<Dual>(d1, d2, k).b;
    require(o, omega_slope == eb::omega_slope_at_one(d1, d2), "Omega slope " + tag);
    require(o, xi_slope == eb::xi_slope_at_one(d1, d2), "Xi slope " + tag);
    const bool holds = omega_slope > xi_slope;
    const bool expected = d1 != 2 || d2 > 4;
    require(o, holds == expected, "dichotomy " + tag);
    const auto v = eb::check_initial_inclusion(d1, d2);
    require(o, (v.status == eb::Status::kVerified) == expected, "initial-inclusion verdict " + tag);
    if (!holds) failing += tag;
  }
  if (o.pass) o.detail = "inequality fails exactly for " + failing;
  return o;
}

std::vector<double> criterion7_s() { return eb::s_grid(1e-7, 1e-3, 20, true); }

Outcome criterion7() {
  Outcome o;
  const auto t = eb::StructuralTriple::make(7, 8, q(1, 2));
  double worst = 0;
  for (double s : criterion7_s()) {
    std::ostringstream tag;
    tag << "s=" << s;
    eb::IntegratorConfig cfg;
    cfg.s = s;
    const auto r = eb::shoot(t, cfg);
    worst = std::max(worst, r.max_abs_residual());
    require(o, r.max_abs_residual() < 1e-8, "residual " + tag.str());
    require(o, r.terminal == eb::EventKind::kHZero, "terminal " + eb::to_string(r.terminal) + " " + tag.str());
    const double first = r.events.front().eta;
    for (const auto& x : r.samples) {
      if (x.eta >= first) break;
      if (!(x.m.P < 0)) {
        require(o, false, "P >= 0 before first event " + tag.str());
        break;
      }
    }
    for (const auto& e : r.events) {
      const double H = 7 * e.p.X1 + 8 * e.p.X2;
      require(o, !(e.kind == eb::EventKind::kX1EqX2 && H > 0), "X1_EQ_X2 with H > 0 " + tag.str());
    }
  }
  if (o.pass) {
    std::ostringstream d;
    d << "20 trajectories end at H_ZERO, max residual " << worst;
    o.detail = d.str();
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto t = eb::StructuralTriple::make(7, 8, q(1, 2));
  const auto grid = criterion7_s();
  std::ostringstream d;
  for (double s : {grid.front(), grid[grid.size() / 2], grid.back()}) {
    eb::IntegratorConfig cfg;
    cfg.s = s;
    cfg.record_p_prime = true;
    const auto r = eb::shoot(t, cfg);
    long ok = 0;
    for (const auto& x : r.p_prime) {
      if (std::abs(x.finite_difference - x.rhs) < 1e-6 * std::abs(x.rhs)) ++ok;
    }
    const double frac = r.p_prime.empty() ? 0 : static_cast<double>(ok) / static_cast<double>(r.p_prime.size());
    std::ostringstream tag;
    tag << "s=" << s;
    require(o, !r.p_prime.empty() && frac >= 0.95, "fraction " + std::to_string(frac) + " " + tag.str());
    d << tag.str() << ": " << ok << "/" << r.p_prime.size() << " ";
  }
  if (o.pass) o.detail = d.str() + "within 1e-6";
  return o;
}

Outcome criterion9() {
  Outcome o;
  using Pt = eb::PhasePoint<Rational>;
  for (const auto& [d1, d2] : kAppendixPairs) {
    const auto t = eb::StructuralTriple::make(d1, d2, oracle::psi(d1, d2));
    for (int sgn : {1, -1}) require(o, eb::vector_field(eb::critical_point<Rational>(t, sgn), t) == Pt{}, "rest point");
  }
  eb::RationalSampler rng(909);
  for (int i = 0; i < 100; ++i) {
    const auto& [d1, d2] = kAppendixPairs[static_cast<std::size_t>(i) % kAppendixPairs.size()];
    const auto t = eb::StructuralTriple::make(d1, d2, rng.in_range(0, 3, 97));
    const Pt p{rng.next(30, 11), rng.next(30, 11), rng.next(30, 11), rng.next(30, 11)};
    const auto v = eb::vector_field(p, t);
    const auto w = eb::vector_field(eb::z2_reflect(p), t);
    require(o, w.X1 == v.X1 && w.X2 == v.X2 && w.Y == -v.Y && w.Z == -v.Z, "Z2 symmetry");
  }

  const auto t = eb::StructuralTriple::make(7, 8, q(1, 2));
  eb::IntegratorConfig cfg;
  cfg.family = 0;
  for (const auto& x : eb::shoot(t, cfg).samples) {
    if (std::abs(x.p.Z) >= 1e-14) {
      require(o, false, "Z = 0 not preserved");
      break;
    }
  }
  std::vector<double> etas;
  for (int i = 1; i <= 40; ++i) etas.push_back(0.1 * i);
  for (const auto& p : eb::integrate_to(t, {0.1, 0.05, 0, 0.3}, etas, eb::IntegratorConfig{})) {
    require(o, std::abs(p.Y) < 1e-14, "Y = 0 not preserved");
  }
  for (const auto& [d1, d2, A] : std::vector<std::tuple<int, int, Rational>>{{7, 8, q(1, 2)}, {5, 8, q(3, 10)}}) {
    const auto tt = eb::StructuralTriple::make(d1, d2, A);
    const double mu1 = eb::mu1_double(tt);
    const eb::ModelConstants<double> c(tt);
    const double X1 = 0.2, X2 = 0.05;
    const double a = eb::conservation_residual(eb::PhasePoint<double>{X1, X2, 0, 0}, c);
    const double b = eb::conservation_residual(eb::PhasePoint<double>{X1, X2, 1, mu1}, c) - a;
    if (a * b >= 0) {
      require(o, false, "no start on the bad set");
      continue;
    }
    const double Y = std::sqrt(-a / b);
    for (const auto& p : eb::integrate_to(tt, {X1, X2, Y, mu1 * Y}, etas, eb::IntegratorConfig{})) {
      if (p.X1 - p.X2 <= 0) break;
      require(o, p.Z - mu1 * p.Y >= -1e-10, "bad set left");
    }
  }
  if (o.pass) o.detail = "rest points, Z2 symmetry at 100 points, three invariant sets";
  return o;
}

Outcome criterion10() {
  Outcome o;
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases{
      {{"verify", "7", "8", "1/2"}, 0}, {{"verify", "2", "3", "1/2"}, 2}, {{"verify", "5", "8", "0.9"}, 1}};
  std::string witness;
  for (const auto& c : cases) {
    std::ostringstream out, err;
    const int code = eb::cli::run_cli(c.args, out, err);
    std::string tag;
    for (const auto& a : c.args) tag += a + " ";
    require(o, code == c.code, tag + "-> " + std::to_string(code));
    if (c.code == 2) require(o, err.str().find("excluded dimensions") != std::string::npos, "clause not named");
    if (c.code != 1) continue;
    const std::string text = out.str();
    const std::string key = "\"rho1 A - rho0: counterexample k\",\"value\":\"";
    const auto at = text.find(key);
    if (at == std::string::npos) {
      require(o, false, "no counterexample witness");
      continue;
    }
    witness = text.substr(at + key.size(), text.find('"', at + key.size()) - at - key.size());
    const Rational k = eb::parse_rational(witness);
    const Rational A = q(9, 10);
    require(o, oracle::rho1<Rational>(5, 8, k) * A - oracle::rho0<Rational>(5, 8, k) < 0, "witness does not refute");
    require(o, eb::k_star(5, 8).hi() < k && k < 1, "witness outside (k_star, 1)");
  }
  if (o.pass) o.detail = "exit codes 0/1/2, (5,8,9/10) refuted at k = " + witness;
  return o;
}

}  // namespace

int main() {
  struct Entry {
    std::function<Outcome()> run;
    double limit_s;
  };
  const std::vector<Entry> criteria{{criterion1, 1},  {criterion2, 1}, {criterion3, 10}, {criterion4, 30},
                                    {criterion5, 10}, {criterion6, 1}, {criterion7, 60}, {criterion8, 0},
                                    {criterion9, 0},  {criterion10, 0}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limit_s > 0 && secs >= criteria[i].limit_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(criteria[i].limit_s)) + " s limit";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s (%.3f s) %s\n", i + 1, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
