#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "einstein_barrier/interval.h"
#include "einstein_barrier/rational.h"
#include "einstein_barrier/uni_poly.h"

namespace einstein_barrier {

enum class Status { kVerified, kRefuted, kSampledConsistent, kOutOfHypothesis };

/// "VERIFIED", "REFUTED", "SAMPLED_CONSISTENT", "OUT_OF_HYPOTHESIS".
std::string to_string(Status s);
/// Inverse of to_string; throws std::invalid_argument on unknown text.
Status parse_status(const std::string& text);

struct Witness {
  std::string desc;
  std::string value;
};

/// Outcome of one named check with exact witness data.
struct Verdict {
  std::string check_id;
  int d1 = 0;
  int d2 = 0;
  std::optional<Rational> A;
  Status status = Status::kVerified;
  /// "PASS"/"FAIL" for gate checks.
  std::optional<std::string> gate;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;

  void add(std::string desc, std::string value) { witnesses.push_back({std::move(desc), std::move(value)}); }
  void add(std::string desc, const Rational& q) { add(std::move(desc), to_string(q)); }
  void add(std::string desc, const RatInterval& iv) { add(std::move(desc), iv.to_string()); }
  void add(std::string desc, const UniPoly& p) { add(std::move(desc), p.to_string("k")); }
  void note(std::string text) { notes.push_back(std::move(text)); }
  const Witness* find(const std::string& desc) const;
};

/// One JSON object per verdict:
/// {check_id, params:{d1,d2,A}, status, gate?, witnesses:[{desc,value}], notes?, seed, elapsed_ms}.
std::string to_json_line(const Verdict& v);

}  // namespace einstein_barrier
