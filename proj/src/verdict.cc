#include "einstein_barrier/verdict.h"

#include <stdexcept>

#include <json.hpp>

namespace einstein_barrier {

std::string to_string(Status s) {
  switch (s) {
    case Status::kVerified:
      return "VERIFIED";
    case Status::kRefuted:
      return "REFUTED";
    case Status::kSampledConsistent:
      return "SAMPLED_CONSISTENT";
    case Status::kOutOfHypothesis:
      return "OUT_OF_HYPOTHESIS";
  }
  return "?";
}

Status parse_status(const std::string& text) {
  for (Status s : {Status::kVerified, Status::kRefuted, Status::kSampledConsistent, Status::kOutOfHypothesis}) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown status: " + text);
}

const Witness* Verdict::find(const std::string& desc) const {
  for (const auto& w : witnesses) {
    if (w.desc == desc) return &w;
  }
  return nullptr;
}

std::string to_json_line(const Verdict& v) {
  nlohmann::ordered_json j;
  j["check_id"] = v.check_id;
  j["params"] = {{"d1", v.d1}, {"d2", v.d2}};
  j["params"]["A"] = v.A ? nlohmann::ordered_json(to_string(*v.A)) : nlohmann::ordered_json(nullptr);
  j["status"] = to_string(v.status);
  if (v.gate) j["gate"] = *v.gate;
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : v.witnesses) j["witnesses"].push_back({{"desc", w.desc}, {"value", w.value}});
  if (!v.notes.empty()) j["notes"] = v.notes;
  j["seed"] = v.seed;
  j["elapsed_ms"] = v.elapsed_ms;
  return j.dump();
}

}  // namespace einstein_barrier
