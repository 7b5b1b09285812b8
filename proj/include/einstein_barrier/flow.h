#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "einstein_barrier/model.h"

namespace einstein_barrier {

enum class EventKind { kHZero, kX1EqX2, kZEqMu1Y, kPZero, kNearP0Minus, kMaxEta, kResidualAbort };

/// "H_ZERO", "X1_EQ_X2", "Z_EQ_MU1_Y", "P_ZERO", "NEAR_P0_MINUS", "MAX_ETA", "RESIDUAL_ABORT".
std::string to_string(EventKind kind);
/// Throws std::invalid_argument on unknown text.
EventKind parse_event_kind(const std::string& text);

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-18;
  double eta_max = 400;
  double event_tol = 1e-12;
  double residual_cap = 1e-6;
  /// Shooting offset from p0+.
  double s = 1e-6;
  /// Position inside the two-dimensional unstable family: direction u1 + family * u2.
  double family = 1;
  /// Max-norm radius for NEAR_P0_MINUS.
  double near_radius = 1e-4;
  /// Record, at the midpoint of each event-free step, a five-point difference
  /// of P across the step against the P' right-hand side.
  bool record_p_prime = false;

  /// Throws std::invalid_argument unless tolerances, caps and eta_max are positive and s >= 0.
  void validate() const;
};

/// Partial derivatives of vector_field, row i = d(field_i)/d(X1, X2, Y, Z).
template <class T>
std::array<std::array<T, 4>, 4> field_jacobian(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  const auto k = curvature_terms(p, c);
  const T cc = (1 - k.H * k.H) / c.n;
  const T g = k.H * (k.G + cc);
  const std::array<T, 4> dG{2 * c.d1 * p.X1, 2 * c.d2 * p.X2, T(0), T(0)};
  const std::array<T, 4> dH{c.d1, c.d2, T(0), T(0)};
  const std::array<T, 4> dR1{T(0), T(0), 2 * (c.d1 - 1) * p.Y, 2 * c.A * p.Z};
  const std::array<T, 4> dR2{T(0), T(0), (c.d2 - 1) * p.Z, (c.d2 - 1) * p.Y - 2 * c.two_d1_over_d2 * c.A * p.Z};
  std::array<std::array<T, 4>, 4> J;
  for (int j = 0; j < 4; ++j) {
    const T dcc = -2 * k.H * dH[j] / c.n;
    const T dg = dH[j] * (k.G + cc) + k.H * (dG[j] + dcc);
    const T e1 = j == 0 ? T(1) : T(0);
    const T e2 = j == 1 ? T(1) : T(0);
    const T e3 = j == 2 ? T(1) : T(0);
    const T e4 = j == 3 ? T(1) : T(0);
    J[0][j] = e1 * (g - k.H) + p.X1 * (dg - dH[j]) + dR1[j] - dcc;
    J[1][j] = e2 * (g - k.H) + p.X2 * (dg - dH[j]) + dR2[j] - dcc;
    J[2][j] = e3 * (g - p.X1) + p.Y * (dg - e1);
    J[3][j] = e4 * (g + p.X1 - 2 * p.X2) + p.Z * (dg + e1 - 2 * e2);
  }
  return J;
}

/// Gradient of conservation_residual.
template <class T>
std::array<T, 4> residual_gradient(const PhasePoint<T>& p, const ModelConstants<T>& c) {
  const auto k = curvature_terms(p, c);
  return {(2 * c.d1 * p.X1 - 2 * k.H * c.d1) / (c.n - 1) + 2 * k.H * c.d1 / c.n,
          (2 * c.d2 * p.X2 - 2 * k.H * c.d2) / (c.n - 1) + 2 * k.H * c.d2 / c.n,
          (2 * c.d1 * (c.d1 - 1) * p.Y + c.d2 * (c.d2 - 1) * p.Z) / (c.n - 1),
          (2 * c.d1 * c.A * p.Z + c.d2 * ((c.d2 - 1) * p.Y - 2 * c.two_d1_over_d2 * c.A * p.Z)) / (c.n - 1)};
}

Eigen::Matrix4d jacobian_at(const PhasePoint<double>& p, const StructuralTriple& t);

struct UnstableDirection {
  double eigenvalue = 0;
  /// Unit vector; Z >= 0, and Y >= 0 when Z vanishes.
  Eigen::Vector4d vector;
  /// Orthogonal to the residual gradient at p0+.
  bool tangent_to_invariant_set = false;
};

/// Eigenpairs of the linearization at p0+ with positive real part. Throws
/// std::domain_error when some eigenvalue has |real part| < 1e-10 or is complex.
std::vector<UnstableDirection> unstable_directions(const StructuralTriple& t);

/// Exact eigenvectors of the double eigenvalue 2/d1 at p0+, both tangent to
/// the invariant set: va with Z = 0 and vb with Z = 1.
std::array<PhasePoint<Rational>, 2> p0_plus_eigenvectors(const StructuralTriple& t);

/// u1 + family * u2 normalized, with u1 = -va / H(va) and u2 = H(va) vb - H(vb) va,
/// where H(v) = d1 v.X1 + d2 v.X2.
PhasePoint<double> shooting_direction(const StructuralTriple& t, double family);

/// p0+ + s w with Y moved to the nearest root of the residual, which is
/// quadratic in Y. Returns p0+ for s = 0.
PhasePoint<double> initial_point(const StructuralTriple& t, const IntegratorConfig& cfg);

/// mu1 rounded to double: the larger root of the homogeneous quadratic, the
/// linear root for A = 0, NaN above the Böhm bound.
double mu1_double(const StructuralTriple& t);

struct Monitors {
  double H = 0;
  double X1mX2 = 0;
  double ZmMu1Y = 0;
  double P = 0;
  double Q = 0;
  double residual = 0;
};

Monitors monitors_at(const PhasePoint<double>& p, const ModelConstants<double>& c, double mu1);

struct Sample {
  double eta = 0;
  PhasePoint<double> p;
  Monitors m;
};

struct Event {
  double eta = 0;
  EventKind kind = EventKind::kMaxEta;
  PhasePoint<double> p;
  /// Value of the event's monitor at eta.
  double monitor = 0;
};

struct PPrimeSample {
  double eta = 0;
  double finite_difference = 0;
  double rhs = 0;
};

struct TrajectoryRecord {
  std::vector<Sample> samples;
  std::vector<Event> events;
  EventKind terminal = EventKind::kMaxEta;
  double mu1 = 0;
  /// Positive eigenvalues at p0+ counted with multiplicity, and those tangent to the invariant set.
  int unstable_dimension = 0;
  int unstable_tangent_dimension = 0;
  std::vector<PPrimeSample> p_prime;

  const Event& terminal_event() const { return events.back(); }
  double min_P() const;
  /// Largest P over samples before the first terminal event.
  double max_P_before_terminal() const;
  double min_H() const;
  double max_abs_residual() const;
};

/// Integrates from initial_point until the first terminal event.
TrajectoryRecord shoot(const StructuralTriple& t, const IntegratorConfig& cfg);

/// Same event logic from an arbitrary start point.
TrajectoryRecord shoot_from(const StructuralTriple& t, const PhasePoint<double>& start, const IntegratorConfig& cfg);

/// States at the requested eta values (strictly monotone, same sign, starting
/// after 0), integrating forward or backward without event handling.
std::vector<PhasePoint<double>> integrate_to(const StructuralTriple& t, const PhasePoint<double>& start,
                                             const std::vector<double>& etas, const IntegratorConfig& cfg);

struct SweepRow {
  double s = 0;
  std::optional<EventKind> terminal;
  double eta_end = 0;
  double min_P = 0;
  double min_H = 0;
  double max_residual = 0;
  /// H at the terminal event.
  double H_end = 0;
  std::string error;
};

/// One shot per s. Throws std::invalid_argument unless s_values are positive
/// and strictly ascending; per-row failures are recorded in SweepRow::error.
std::vector<SweepRow> sweep(const StructuralTriple& t, const std::vector<double>& s_values, const IntegratorConfig& cfg,
                            int jobs = 1);

/// n values from lo to hi, geometric when log is set.
std::vector<double> s_grid(double lo, double hi, int n, bool log);

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& r);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace einstein_barrier
