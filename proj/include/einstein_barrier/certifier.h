#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "einstein_barrier/rational.h"
#include "einstein_barrier/verdict.h"

namespace einstein_barrier {

inline constexpr std::uint64_t kDefaultSeed = 1729;

struct CheckOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Accepted (A, k) samples for the resultant identity.
  int identity_samples = 100;
  /// Random k samples for the Omega factorization.
  int factorization_samples = 50;
  /// Constraint-satisfying points for the Gamma identity.
  int gamma_points = 20;
  /// Grid resolution 1/grid_denominator in k and l.
  int grid_denominator = 256;
  /// Upper bound on concurrently running checks in a battery.
  int jobs = 1;
};

/// Theorem hypothesis: d2 >= d1 >= 2, (d1,d2) not in {(2,2),(2,3),(2,4)},
/// Psi <= A < bohm_bound.
Verdict check_theorem_gate(int d1, int d2, const Rational& A);
/// PASS iff A >= bohm_bound.
Verdict check_bohm_gate(int d1, int d2, const Rational& A);

/// Psi = rho0(1)/rho1(1), Omega(1) = Xi(1) = bohm_bound, Omega(0) <= Psi < bohm_bound.
Verdict check_thresholds(int d1, int d2);

Verdict check_omega2_negative(int d1, int d2);
Verdict check_omega0_positive(int d1, int d2);
Verdict check_pxqx_negative(int d1, int d2);
Verdict check_px_root_structure(int d1, int d2);

Verdict check_resultant_identity(int d1, int d2, const CheckOptions& opts = {});
Verdict check_resultant_positivity(int d1, int d2, const Rational& A);

Verdict check_omega_monotonicity(int d1, int d2, const CheckOptions& opts = {});
/// dOmega/dk(1) > dXi/dk(1), plus agreement with the printed slope formulas.
Verdict check_initial_inclusion(int d1, int d2);

/// Grid search for omega >= 0 on {l > 0, P_Y < 0} over k in (k_star, 1).
Verdict check_omega_grid(int d1, int d2, const Rational& A, const CheckOptions& opts = {});
Verdict check_qy_on_gamma(int d1, int d2, const Rational& A, const CheckOptions& opts = {});

struct CheckInfo {
  std::string id;
  bool needs_A = false;
  /// Reported but left out of the headline status.
  bool informational = false;
  std::vector<std::string> depends_on;
  std::string summary;
};

/// All checks in canonical order.
const std::vector<CheckInfo>& check_catalog();
std::vector<std::string> check_ids();

/// Throws std::invalid_argument for an unknown id or a missing A.
Verdict run_check(const std::string& id, int d1, int d2, const std::optional<Rational>& A,
                  const CheckOptions& opts = {});

/// Ordered checks with dependency edges, grouped into waves that respect them.
class CheckSuite {
 public:
  /// Throws std::invalid_argument on duplicate ids, unknown dependencies or cycles.
  explicit CheckSuite(std::vector<CheckInfo> checks);

  const std::vector<CheckInfo>& checks() const { return checks_; }
  /// Indices into checks(); every dependency sits in an earlier wave.
  const std::vector<std::vector<std::size_t>>& waves() const { return waves_; }

 private:
  std::vector<CheckInfo> checks_;
  std::vector<std::vector<std::size_t>> waves_;
};

struct BatteryResult {
  std::vector<Verdict> verdicts;
  Status headline = Status::kVerified;
  std::string headline_reason;
};

/// Aggregation: a failed dimension clause of the theorem gate gives
/// OUT_OF_HYPOTHESIS; otherwise any REFUTED check gives REFUTED; otherwise a
/// failed gate or out-of-range check gives OUT_OF_HYPOTHESIS; otherwise
/// SAMPLED_CONSISTENT if any check is sampled, else VERIFIED.
Status aggregate(const std::vector<Verdict>& verdicts, std::string* reason = nullptr);

/// Runs every catalog check in dependency waves. Verdicts come back in
/// catalog order regardless of scheduling. Throws std::invalid_argument for
/// dimensions below 2.
BatteryResult run_full_battery(int d1, int d2, const Rational& A, const CheckOptions& opts = {});

}  // namespace einstein_barrier
