#include "einstein_barrier/flow.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <map>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "einstein_barrier/errors.h"
#include "einstein_barrier/thresholds.h"

namespace einstein_barrier {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 4>;

constexpr double kMaxStep = 2.0;
constexpr double kEventMonitorTol = 1e-12;

/// Polynomial in the four phase coordinates with exact coefficients.
class MPoly {
 public:
  using Exponent = std::array<int, 4>;

  MPoly() = default;
  MPoly(long c) : MPoly(Rational(c)) {}
  MPoly(const Rational& c) {
    if (c != 0) terms_[Exponent{}] = c;
  }
  static MPoly var(int i) {
    MPoly p;
    Exponent e{};
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
  }

  const std::map<Exponent, Rational>& terms() const { return terms_; }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.accumulate(e, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a) {
    MPoly r = a;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (int i = 0; i < 4; ++i) e[i] = ea[i] + eb[i];
        r.accumulate(e, ca * cb);
      }
    }
    return r;
  }
  /// Division by a constant only.
  friend MPoly operator/(const MPoly& a, const MPoly& b) {
    if (b.terms_.size() != 1 || b.terms_.begin()->first != Exponent{}) {
      throw std::logic_error("MPoly division by a non-constant");
    }
    const Rational d = b.terms_.begin()->second;
    MPoly r = a;
    for (auto& [e, c] : r.terms_) c /= d;
    return r;
  }

 private:
  void accumulate(const Exponent& e, const Rational& c) {
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  std::map<Exponent, Rational> terms_;
};

/// An MPoly with coefficients rounded to double, evaluated by monomials.
class Expansion {
 public:
  explicit Expansion(const MPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      exps_.push_back(e);
      coefs_.push_back(to_double(c));
      for (int x : e) degree_ = std::max(degree_, x);
    }
  }

  double operator()(const State& d) const {
    std::array<std::array<double, 9>, 4> pw;
    for (int i = 0; i < 4; ++i) {
      pw[i][0] = 1;
      for (int k = 1; k <= degree_; ++k) pw[i][k] = pw[i][k - 1] * d[i];
    }
    double sum = 0;
    for (std::size_t j = 0; j < coefs_.size(); ++j) {
      const auto& e = exps_[j];
      sum += coefs_[j] * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]] * pw[3][e[3]];
    }
    return sum;
  }

 private:
  std::vector<MPoly::Exponent> exps_;
  std::vector<double> coefs_;
  int degree_ = 0;
};

/// Field, P, P' right-hand side and residual as polynomials in the offset
/// d = p - center, so values near the center keep their relative precision.
struct LocalModel {
  LocalModel(const StructuralTriple& t, const PhasePoint<Rational>& c)
      : center(c), center_double{to_double(c.X1), to_double(c.X2), to_double(c.Y), to_double(c.Z)} {
    const ModelConstants<MPoly> mc(t);
    const PhasePoint<MPoly> x{MPoly(c.X1) + MPoly::var(0), MPoly(c.X2) + MPoly::var(1), MPoly(c.Y) + MPoly::var(2),
                              MPoly(c.Z) + MPoly::var(3)};
    const auto v = vector_field(x, mc);
    field = {Expansion(v.X1), Expansion(v.X2), Expansion(v.Y), Expansion(v.Z)};
    P.emplace(eval_P(x, mc));
    p_prime.emplace(p_prime_rhs(x, mc));
    residual.emplace(conservation_residual(x, mc));
  }

  PhasePoint<double> point(const State& d) const {
    return {center_double.X1 + d[0], center_double.X2 + d[1], center_double.Y + d[2], center_double.Z + d[3]};
  }

  PhasePoint<Rational> center;
  PhasePoint<double> center_double;
  std::vector<Expansion> field;
  std::optional<Expansion> P, p_prime, residual;
};

struct System {
  const LocalModel* m;
  void operator()(const State& x, State& dxdt, double) const {
    for (int i = 0; i < 4; ++i) dxdt[i] = m->field[i](x);
  }
};

/// odeint replaces an oversized step by max_dt itself, so max_dt carries the direction.
auto make_stepper(const IntegratorConfig& cfg, double dir = 1) {
  return odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol, dir * kMaxStep, odeint::runge_kutta_dopri5<State>());
}

double h_of(const PhasePoint<Rational>& v, const StructuralTriple& t) {
  return to_double(t.d1 * v.X1 + t.d2 * v.X2);
}

double max_norm_distance(const PhasePoint<double>& a, const PhasePoint<double>& b) {
  return std::max({std::abs(a.X1 - b.X1), std::abs(a.X2 - b.X2), std::abs(a.Y - b.Y), std::abs(a.Z - b.Z)});
}

struct Watched {
  EventKind kind;
  bool terminal;
  double Monitors::*field;
};

const std::array<Watched, 4> kWatched = {{{EventKind::kHZero, true, &Monitors::H},
                                          {EventKind::kX1EqX2, true, &Monitors::X1mX2},
                                          {EventKind::kZEqMu1Y, true, &Monitors::ZmMu1Y},
                                          {EventKind::kPZero, false, &Monitors::P}}};

bool crosses(double a, double b) { return (a < 0 && b >= 0) || (a > 0 && b <= 0); }

}  // namespace

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kHZero:
      return "H_ZERO";
    case EventKind::kX1EqX2:
      return "X1_EQ_X2";
    case EventKind::kZEqMu1Y:
      return "Z_EQ_MU1_Y";
    case EventKind::kPZero:
      return "P_ZERO";
    case EventKind::kNearP0Minus:
      return "NEAR_P0_MINUS";
    case EventKind::kMaxEta:
      return "MAX_ETA";
    case EventKind::kResidualAbort:
      return "RESIDUAL_ABORT";
  }
  return "?";
}

EventKind parse_event_kind(const std::string& text) {
  for (EventKind k : {EventKind::kHZero, EventKind::kX1EqX2, EventKind::kZEqMu1Y, EventKind::kPZero,
                      EventKind::kNearP0Minus, EventKind::kMaxEta, EventKind::kResidualAbort}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown event kind: " + text);
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw std::invalid_argument("tolerances must be positive");
  if (!(event_tol > 0)) throw std::invalid_argument("event_tol must be positive");
  if (!(residual_cap > 0)) throw std::invalid_argument("residual_cap must be positive");
  if (!(eta_max > 0)) throw std::invalid_argument("eta_max must be positive");
  if (!(s >= 0) || !std::isfinite(s)) throw std::invalid_argument("s must be a finite nonnegative number");
  if (!(near_radius > 0)) throw std::invalid_argument("near_radius must be positive");
  if (!std::isfinite(family)) throw std::invalid_argument("family must be finite");
}

Eigen::Matrix4d jacobian_at(const PhasePoint<double>& p, const StructuralTriple& t) {
  const auto J = field_jacobian(p, ModelConstants<double>(t));
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = J[i][j];
  }
  return m;
}

std::vector<UnstableDirection> unstable_directions(const StructuralTriple& t) {
  const auto p0 = critical_point<double>(t, +1);
  const Eigen::Matrix4d J = jacobian_at(p0, t);
  Eigen::EigenSolver<Eigen::Matrix4d> es(J);
  if (es.info() != Eigen::Success) throw std::domain_error("eigen-decomposition failed at p0+");
  const auto grad = residual_gradient(p0, ModelConstants<double>(t));
  const Eigen::Vector4d g(grad[0], grad[1], grad[2], grad[3]);
  std::vector<UnstableDirection> out;
  for (int i = 0; i < 4; ++i) {
    const std::complex<double> lambda = es.eigenvalues()(i);
    if (std::abs(lambda.real()) < 1e-10) throw std::domain_error("non-hyperbolic eigenvalue at p0+");
    if (lambda.real() < 0) continue;
    if (std::abs(lambda.imag()) > 1e-12) throw std::domain_error("complex unstable eigenvalue at p0+");
    Eigen::Vector4d v = es.eigenvectors().col(i).real();
    v.normalize();
    if (v(3) < -1e-14 || (std::abs(v(3)) <= 1e-14 && v(2) < 0)) v = -v;
    out.push_back({lambda.real(), v, std::abs(g.dot(v)) < 1e-9 * g.norm()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.eigenvalue < b.eigenvalue; });
  return out;
}

std::array<PhasePoint<Rational>, 2> p0_plus_eigenvectors(const StructuralTriple& t) {
  const long d1 = t.d1, d2 = t.d2;
  PhasePoint<Rational> va{make_rational(d1 * d1 - d1 * d2 + d1 + d2, d2), make_rational(2 * d1 * d1, d2), Rational(1),
                          Rational(0)};
  PhasePoint<Rational> vb{make_rational(d1 * d2 - d1 - d2 * d2 + d2, 2 * d1), Rational(d2 - 1), Rational(0),
                          Rational(1)};
  return {va, vb};
}

PhasePoint<double> shooting_direction(const StructuralTriple& t, double family) {
  const auto [va, vb] = p0_plus_eigenvectors(t);
  const double a = h_of(va, t), b = h_of(vb, t);
  const auto A = va.as_array();
  const auto B = vb.as_array();
  std::array<double, 4> w;
  for (int i = 0; i < 4; ++i) {
    const double u1 = -to_double(A[i]) / a;
    const double u2 = a * to_double(B[i]) - b * to_double(A[i]);
    w[i] = u1 + family * u2;
  }
  const double norm = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]);
  for (auto& x : w) x /= norm;
  return PhasePoint<double>::from_array(w);
}

double mu1_double(const StructuralTriple& t) {
  if (t.A == 0) return to_double(make_rational(t.d1 - 1, t.d2 - 1));
  if (t.A > bohm_bound(t.d1, t.d2)) return std::numeric_limits<double>::quiet_NaN();
  return mu_roots(t).mu1.approx();
}

Monitors monitors_at(const PhasePoint<double>& p, const ModelConstants<double>& c, double mu1) {
  Monitors m;
  m.H = c.d1 * p.X1 + c.d2 * p.X2;
  m.X1mX2 = p.X1 - p.X2;
  m.ZmMu1Y = p.Z - mu1 * p.Y;
  m.P = eval_P(p, c);
  m.Q = eval_Q(p, c);
  m.residual = conservation_residual(p, c);
  return m;
}

double TrajectoryRecord::min_P() const {
  double v = INFINITY;
  for (const auto& s : samples) v = std::min(v, s.m.P);
  return v;
}

double TrajectoryRecord::max_P_before_terminal() const {
  double v = -INFINITY;
  const double stop = events.empty() ? INFINITY : events.back().eta;
  for (const auto& s : samples) {
    if (std::abs(s.eta) >= std::abs(stop)) break;
    v = std::max(v, s.m.P);
  }
  return v;
}

double TrajectoryRecord::min_H() const {
  double v = INFINITY;
  for (const auto& s : samples) v = std::min(v, s.m.H);
  return v;
}

double TrajectoryRecord::max_abs_residual() const {
  double v = 0;
  for (const auto& s : samples) v = std::max(v, std::abs(s.m.residual));
  return v;
}

namespace {

State initial_offset(const StructuralTriple& t, const LocalModel& m, const IntegratorConfig& cfg) {
  if (cfg.s == 0) return {0, 0, 0, 0};
  const auto w = shooting_direction(t, cfg.family);
  State d{cfg.s * w.X1, cfg.s * w.X2, cfg.s * w.Y, cfg.s * w.Z};
  // residual = a dY^2 + b dY + c with the other offsets fixed.
  auto at = [&](double y) {
    State q = d;
    q[2] = y;
    return (*m.residual)(q);
  };
  const double r0 = at(0), rp = at(1), rm = at(-1);
  const double qa = (rp + rm) / 2 - r0, qb = (rp - rm) / 2;
  const double disc = qb * qb - 4 * qa * r0;
  if (qa == 0 || disc < 0) throw std::domain_error("no Y correction puts the initial point on the invariant set");
  const double sq = std::sqrt(disc);
  // Numerically stable pair of roots.
  const double qq = -0.5 * (qb + std::copysign(sq, qb));
  const double y1 = qq / qa, y2 = qq != 0 ? r0 / qq : y1;
  d[2] = std::abs(y1 - d[2]) < std::abs(y2 - d[2]) ? y1 : y2;
  return d;
}

TrajectoryRecord run(const StructuralTriple& t, const LocalModel& model, const State& d0, const IntegratorConfig& cfg) {
  const ModelConstants<double> c(t);
  TrajectoryRecord rec;
  rec.mu1 = mu1_double(t);
  try {
    for (const auto& d : unstable_directions(t)) {
      ++rec.unstable_dimension;
      if (d.tangent_to_invariant_set) ++rec.unstable_tangent_dimension;
    }
  } catch (const std::domain_error&) {
    rec.unstable_dimension = -1;
  }
  const double mu1 = std::isnan(rec.mu1) ? 0 : rec.mu1;
  auto monitors = [&](const State& d) {
    const PhasePoint<double> p = model.point(d);
    Monitors m;
    m.H = c.d1 * p.X1 + c.d2 * p.X2;
    m.X1mX2 = p.X1 - p.X2;
    m.ZmMu1Y = std::isnan(rec.mu1) ? std::numeric_limits<double>::quiet_NaN() : p.Z - mu1 * p.Y;
    m.P = (*model.P)(d);
    m.Q = eval_Q(p, c);
    m.residual = (*model.residual)(d);
    return m;
  };
  const PhasePoint<double> start = model.point(d0);
  rec.samples.push_back({0, start, monitors(d0)});

  State field;
  System{&model}(d0, field, 0);
  if (field == State{0, 0, 0, 0}) {
    rec.samples.push_back({cfg.eta_max, start, monitors(d0)});
    rec.events.push_back({cfg.eta_max, EventKind::kMaxEta, start, 0});
    rec.terminal = EventKind::kMaxEta;
    return rec;
  }
  if (std::abs(rec.samples[0].m.residual) > cfg.residual_cap) {
    rec.events.push_back({0, EventKind::kResidualAbort, start, rec.samples[0].m.residual});
    rec.terminal = EventKind::kResidualAbort;
    return rec;
  }

  const System sys{&model};
  auto stepper = make_stepper(cfg);
  stepper.initialize(d0, 0.0, 1e-3);
  const PhasePoint<double> p0_minus = critical_point<double>(t, -1);
  State buf;
  auto offset_at = [&](double eta) {
    stepper.calc_state(eta, buf);
    return buf;
  };

  while (true) {
    auto [t0, t1] = stepper.do_step(sys);
    bool last = false;
    if (t1 >= cfg.eta_max) {
      t1 = cfg.eta_max;
      last = true;
    }
    const State d1 = last ? offset_at(t1) : stepper.current_state();
    const PhasePoint<double> p1 = model.point(d1);
    const Monitors m1 = monitors(d1);
    const Monitors& m0 = rec.samples.back().m;

    std::vector<Event> found;
    for (const auto& w : kWatched) {
      const double a = m0.*w.field, b = m1.*w.field;
      if (std::isnan(a) || std::isnan(b) || !crosses(a, b)) continue;
      double lo = t0, hi = t1;
      double eta = 0.5 * (lo + hi), v = monitors(offset_at(eta)).*w.field;
      while ((hi - lo > cfg.event_tol || std::abs(v) > kEventMonitorTol) && lo < eta && eta < hi) {
        if (crosses(a, v)) {
          hi = eta;
        } else {
          lo = eta;
        }
        eta = 0.5 * (lo + hi);
        v = monitors(offset_at(eta)).*w.field;
      }
      found.push_back({eta, w.kind, model.point(offset_at(eta)), v});
    }
    std::sort(found.begin(), found.end(), [](const Event& x, const Event& y) { return x.eta < y.eta; });

    if (cfg.record_p_prime && t1 > t0 && found.empty()) {
      const double mid = 0.5 * (t0 + t1);
      const double h = 0.25 * (t1 - t0);
      auto P_at = [&](double eta) { return (*model.P)(offset_at(eta)); };
      const double fd = (-P_at(mid + 2 * h) + 8 * P_at(mid + h) - 8 * P_at(mid - h) + P_at(mid - 2 * h)) / (12 * h);
      rec.p_prime.push_back({mid, fd, (*model.p_prime)(offset_at(mid))});
    }

    rec.samples.push_back({t1, p1, m1});
    std::optional<Event> stop;
    for (const auto& e : found) {
      rec.events.push_back(e);
      if (e.kind != EventKind::kPZero) {
        stop = e;
        break;
      }
    }
    if (stop) {
      rec.terminal = stop->kind;
      return rec;
    }
    if (std::abs(m1.residual) > cfg.residual_cap) {
      rec.events.push_back({t1, EventKind::kResidualAbort, p1, m1.residual});
      rec.terminal = EventKind::kResidualAbort;
      return rec;
    }
    if (m1.H < 0 && max_norm_distance(p1, p0_minus) < cfg.near_radius) {
      rec.events.push_back({t1, EventKind::kNearP0Minus, p1, max_norm_distance(p1, p0_minus)});
      rec.terminal = EventKind::kNearP0Minus;
      return rec;
    }
    if (last) {
      rec.events.push_back({t1, EventKind::kMaxEta, p1, 0});
      rec.terminal = EventKind::kMaxEta;
      return rec;
    }
  }
}

}  // namespace

PhasePoint<double> initial_point(const StructuralTriple& t, const IntegratorConfig& cfg) {
  const LocalModel m(t, critical_point<Rational>(t, +1));
  return m.point(initial_offset(t, m, cfg));
}

TrajectoryRecord shoot(const StructuralTriple& t, const IntegratorConfig& cfg) {
  cfg.validate();
  const LocalModel m(t, critical_point<Rational>(t, +1));
  return run(t, m, initial_offset(t, m, cfg), cfg);
}

TrajectoryRecord shoot_from(const StructuralTriple& t, const PhasePoint<double>& start, const IntegratorConfig& cfg) {
  cfg.validate();
  const LocalModel m(t, PhasePoint<Rational>{});
  return run(t, m, start.as_array(), cfg);
}

std::vector<PhasePoint<double>> integrate_to(const StructuralTriple& t, const PhasePoint<double>& start,
                                             const std::vector<double>& etas, const IntegratorConfig& cfg) {
  cfg.validate();
  if (etas.empty()) return {};
  const double dir = etas.front() > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    const double prev = i == 0 ? 0.0 : etas[i - 1];
    if (!(dir * (etas[i] - prev) > 0)) throw std::invalid_argument("etas must be strictly monotone away from 0");
  }
  const LocalModel m(t, PhasePoint<Rational>{});
  const System sys{&m};
  auto stepper = make_stepper(cfg, dir);
  stepper.initialize(start.as_array(), 0.0, dir * 1e-3);
  std::vector<PhasePoint<double>> out;
  State buf;
  std::size_t next = 0;
  while (next < etas.size()) {
    const auto [t0, t1] = stepper.do_step(sys);
    (void)t0;
    while (next < etas.size() && dir * (t1 - etas[next]) >= 0) {
      stepper.calc_state(etas[next], buf);
      out.push_back(PhasePoint<double>::from_array(buf));
      ++next;
    }
  }
  return out;
}

std::vector<SweepRow> sweep(const StructuralTriple& t, const std::vector<double>& s_values, const IntegratorConfig& cfg,
                            int jobs) {
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (!(s_values[i] > 0)) throw std::invalid_argument("s values must be positive");
    if (i > 0 && !(s_values[i] > s_values[i - 1])) throw std::invalid_argument("s values must be strictly ascending");
  }
  auto one = [&](double s) {
    SweepRow row;
    row.s = s;
    try {
      IntegratorConfig c = cfg;
      c.s = s;
      const auto rec = shoot(t, c);
      row.terminal = rec.terminal;
      row.eta_end = rec.terminal_event().eta;
      row.min_P = rec.min_P();
      row.min_H = rec.min_H();
      row.max_residual = rec.max_abs_residual();
      row.H_end = t.d1 * rec.terminal_event().p.X1 + t.d2 * rec.terminal_event().p.X2;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  };
  std::vector<SweepRow> rows(s_values.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t at = 0; at < s_values.size(); at += width) {
    std::vector<std::future<SweepRow>> running;
    for (std::size_t i = at; i < std::min(s_values.size(), at + width); ++i) {
      running.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async, one, s_values[i]));
    }
    for (std::size_t i = 0; i < running.size(); ++i) rows[at + i] = running[i].get();
  }
  return rows;
}

std::vector<double> s_grid(double lo, double hi, int n, bool log) {
  if (n <= 0) return {};
  if (n == 1) return {lo};
  if (log && !(lo > 0 && hi > 0)) throw std::invalid_argument("log spacing needs positive endpoints");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    out.push_back(log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& r) {
  out << "eta,X1,X2,Y,Z,H,X1mX2,ZmMu1Y,P,Q,residual\n";
  for (const auto& s : r.samples) {
    out << g17(s.eta) << ',' << g17(s.p.X1) << ',' << g17(s.p.X2) << ',' << g17(s.p.Y) << ',' << g17(s.p.Z) << ','
        << g17(s.m.H) << ',' << g17(s.m.X1mX2) << ',' << g17(s.m.ZmMu1Y) << ',' << g17(s.m.P) << ',' << g17(s.m.Q)
        << ',' << g17(s.m.residual) << '\n';
  }
  for (const auto& e : r.events) out << "# event," << to_string(e.kind) << ',' << g17(e.eta) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "s,terminal,eta_end,min_P,min_H,max_residual,H_end,error\n";
  for (const auto& r : rows) {
    out << g17(r.s) << ',' << (r.terminal ? to_string(*r.terminal) : "") << ',' << g17(r.eta_end) << ','
        << g17(r.min_P) << ',' << g17(r.min_H) << ',' << g17(r.max_residual) << ',' << g17(r.H_end) << ','
        << r.error << '\n';
  }
}

}  // namespace einstein_barrier
