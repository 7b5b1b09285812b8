#include "cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "einstein_barrier/certifier.h"
#include "einstein_barrier/flow.h"
#include "einstein_barrier/thresholds.h"

namespace einstein_barrier::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  std::string json_path;
  std::string out_path;
};

struct Target {
  int d1 = 0;
  int d2 = 0;
  std::string A_text;

  std::optional<Rational> A() const {
    if (A_text.empty()) return std::nullopt;
    try {
      return parse_rational(A_text);
    } catch (const std::invalid_argument& e) {
      throw UsageError("malformed A '" + A_text + "': " + e.what());
    }
  }
};

json params_json(int d1, int d2, const std::optional<Rational>& A) {
  json p;
  p["d1"] = d1;
  p["d2"] = d2;
  p["A"] = A ? json(to_string(*A)) : json(nullptr);
  return p;
}

/// Finite doubles as numbers, anything else as null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

class Sink {
 public:
  /// "" discards, "-" is `fallback`, anything else a file.
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open " + path + " for writing");
      stream_ = file_.get();
    }
  }
  explicit operator bool() const { return stream_ != nullptr; }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void require_dims(int d1, int d2) {
  try {
    require_dimensions(d1, d2);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

IntegratorConfig checked(const IntegratorConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

CheckOptions check_options(const Common& c) {
  CheckOptions o;
  o.seed = c.seed;
  o.jobs = c.jobs;
  return o;
}

int cmd_table(const Common& c, std::ostream& out) {
  Sink js(c.json_path, out);
  out << std::left << std::setw(16) << "K" << std::setw(16) << "H" << std::setw(10) << "G" << std::setw(4) << "d1"
      << std::setw(5) << "d2" << std::setw(12) << "A" << std::setw(26) << "Psi" << std::setw(12) << "~Psi"
      << std::setw(14) << "Bohm bound" << std::setw(12) << "~bound" << "gate\n";
  for (const auto& e : table_entries()) {
    const auto v = check_theorem_gate(e.d1, e.d2, e.A);
    const Rational p = psi(e.d1, e.d2), b = bohm_bound(e.d1, e.d2);
    const std::string gate = v.gate.value_or("?");
    out << std::left << std::setw(16) << e.K << std::setw(16) << e.H << std::setw(10) << e.G << std::setw(4) << e.d1
        << std::setw(5) << e.d2 << std::setw(12) << to_string(e.A) << std::setw(26) << to_string(p) << std::setw(12)
        << to_decimal_string(p, 6) << std::setw(14) << to_string(b) << std::setw(12) << to_decimal_string(b, 6) << gate
        << "\n";
    if (js) {
      json row;
      row["command"] = "table";
      row["params"] = params_json(e.d1, e.d2, e.A);
      row["groups"] = {{"K", e.K}, {"H", e.H}, {"G", e.G}};
      row["psi"] = to_string(p);
      row["psi_decimal"] = to_decimal_string(p, 10);
      row["bohm_bound"] = to_string(b);
      row["bohm_bound_decimal"] = to_decimal_string(b, 10);
      row["gate"] = gate;
      row["seed"] = c.seed;
      *js << row.dump() << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const Common& c, const Target& t, std::ostream& out, std::ostream& err) {
  require_dims(t.d1, t.d2);
  const Rational A = *t.A();
  Sink js(c.json_path, out);
  const auto start = std::chrono::steady_clock::now();
  const auto gate = check_theorem_gate(t.d1, t.d2, A);
  for (const auto& note : gate.notes) err << "theorem gate: " << note << "\n";
  const auto battery = run_full_battery(t.d1, t.d2, A, check_options(c));
  Verdict head;
  head.check_id = "battery";
  head.d1 = t.d1;
  head.d2 = t.d2;
  head.A = A;
  head.status = battery.headline;
  head.seed = c.seed;
  head.add("headline reason", battery.headline_reason);
  for (const auto& v : battery.verdicts) head.add(v.check_id, to_string(v.status));
  head.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (const auto& v : battery.verdicts) {
    out << to_json_line(v) << "\n";
    if (js && &*js != &out) *js << to_json_line(v) << "\n";
  }
  out << to_json_line(head) << "\n";
  if (js && &*js != &out) *js << to_json_line(head) << "\n";
  err << "verdict: " << to_string(battery.headline) << " (" << battery.headline_reason << ")\n";
  return exit_code_for(battery.headline);
}

int cmd_certify(const Common& c, const std::string& id, const Target& t, std::ostream& out, std::ostream& err) {
  const auto ids = check_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    std::string list;
    for (const auto& x : ids) list += (list.empty() ? "" : ", ") + x;
    throw UsageError("unknown check id '" + id + "'; valid ids: " + list);
  }
  require_dims(t.d1, t.d2);
  const auto A = t.A();
  Verdict v;
  try {
    v = run_check(id, t.d1, t.d2, A, check_options(c));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Sink js(c.json_path, out);
  out << to_json_line(v) << "\n";
  if (js && &*js != &out) *js << to_json_line(v) << "\n";
  err << v.check_id << ": " << to_string(v.status) << "\n";
  return exit_code_for(v.status);
}

StructuralTriple triple(const Target& t) {
  require_dims(t.d1, t.d2);
  const Rational A = *t.A();
  if (A < 0) throw UsageError("A must be nonnegative");
  return StructuralTriple::make(t.d1, t.d2, A);
}

int cmd_integrate(const Common& c, const Target& t, const IntegratorConfig& cfg_in, std::ostream& out,
                  std::ostream& err) {
  const auto tr = triple(t);
  const auto cfg = checked(cfg_in);
  TrajectoryRecord rec;
  try {
    rec = shoot(tr, cfg);
  } catch (const std::domain_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalAbort;
  }
  Sink csv(c.out_path.empty() ? "-" : c.out_path, out);
  write_trajectory_csv(*csv, rec);
  std::ostream& summary = c.out_path.empty() ? err : out;
  const auto& end = rec.terminal_event();
  const double H_end = tr.d1 * end.p.X1 + tr.d2 * end.p.X2;
  summary << "terminal: " << to_string(rec.terminal) << " at eta = " << end.eta << " (H = " << H_end << ")\n"
          << "min P: " << rec.min_P() << "\nmax P before terminal: " << rec.max_P_before_terminal()
          << "\nmin H: " << rec.min_H() << "\nmax |residual|: " << rec.max_abs_residual()
          << "\nunstable dimension at p0+: " << rec.unstable_dimension << " (" << rec.unstable_tangent_dimension
          << " tangent to the invariant set)\n";
  if (!c.out_path.empty()) summary << "csv: " << c.out_path << "\n";
  if (rec.terminal == EventKind::kNearP0Minus) summary << "note: NEAR_P0_MINUS is a proximity heuristic\n";
  Sink js(c.json_path, out);
  if (js) {
    json j;
    j["command"] = "integrate";
    j["params"] = params_json(tr.d1, tr.d2, tr.A);
    j["s"] = cfg.s;
    j["family"] = cfg.family;
    j["terminal"] = to_string(rec.terminal);
    j["eta_end"] = number(end.eta);
    j["H_end"] = number(H_end);
    j["min_P"] = number(rec.min_P());
    j["max_P_before_terminal"] = number(rec.max_P_before_terminal());
    j["min_H"] = number(rec.min_H());
    j["max_residual"] = number(rec.max_abs_residual());
    j["unstable_dimension"] = rec.unstable_dimension;
    j["unstable_tangent_dimension"] = rec.unstable_tangent_dimension;
    json events = json::array();
    for (const auto& e : rec.events) events.push_back({{"kind", to_string(e.kind)}, {"eta", number(e.eta)}});
    j["events"] = events;
    j["samples"] = rec.samples.size();
    j["csv"] = c.out_path.empty() ? json(nullptr) : json(c.out_path);
    j["seed"] = c.seed;
    *js << j.dump() << "\n";
  }
  if (rec.terminal == EventKind::kResidualAbort) {
    err << "residual abort: |residual| = " << std::abs(end.monitor) << " exceeds cap " << cfg.residual_cap
        << "; tighten rel_tol or reduce s\n";
    return kExitNumericalAbort;
  }
  return kExitOk;
}

int cmd_sweep(const Common& c, const Target& t, const std::string& range, const IntegratorConfig& cfg_in,
              std::ostream& out, std::ostream& err) {
  const auto tr = triple(t);
  const auto cfg = checked(cfg_in);
  std::vector<double> s;
  std::vector<SweepRow> rows;
  try {
    s = parse_s_range(range);
    rows = sweep(tr, s, cfg, c.jobs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Sink csv(c.out_path.empty() ? "-" : c.out_path, out);
  write_sweep_csv(*csv, rows);
  std::ostream& summary = c.out_path.empty() ? err : out;
  int aborted = 0, escaped_x = 0;
  std::map<std::string, int> counts;
  for (const auto& r : rows) {
    ++counts[r.terminal ? to_string(*r.terminal) : "ERROR"];
    if (!r.error.empty() || r.terminal == EventKind::kResidualAbort) ++aborted;
    if (r.terminal == EventKind::kX1EqX2 && r.H_end > 0) ++escaped_x;
  }
  summary << "rows: " << rows.size() << "\n";
  for (const auto& [k, n] : counts) summary << "  " << k << ": " << n << "\n";
  summary << "rows ending at X1_EQ_X2 with H > 0: " << escaped_x << "\n";
  Sink js(c.json_path, out);
  if (js) {
    for (const auto& r : rows) {
      json j;
      j["command"] = "sweep";
      j["params"] = params_json(tr.d1, tr.d2, tr.A);
      j["s"] = r.s;
      j["terminal"] = r.terminal ? json(to_string(*r.terminal)) : json(nullptr);
      j["eta_end"] = number(r.eta_end);
      j["min_P"] = number(r.min_P);
      j["min_H"] = number(r.min_H);
      j["max_residual"] = number(r.max_residual);
      j["H_end"] = number(r.H_end);
      j["error"] = r.error;
      j["seed"] = c.seed;
      *js << j.dump() << "\n";
    }
  }
  return aborted > 0 ? kExitNumericalAbort : kExitOk;
}

void add_target(CLI::App* sub, Target& t, bool A_required) {
  sub->add_option("d1", t.d1, "sphere-fiber dimension")->required();
  sub->add_option("d2", t.d2, "base dimension")->required();
  auto* a = sub->add_option("A", t.A_text, "fibration constant, p/q or decimal");
  if (A_required) a->required();
}

void add_integrator(CLI::App* sub, IntegratorConfig& cfg) {
  sub->add_option("--rel-tol", cfg.rel_tol, "relative step tolerance")->capture_default_str();
  sub->add_option("--abs-tol", cfg.abs_tol, "absolute step tolerance")->capture_default_str();
  sub->add_option("--eta-max", cfg.eta_max, "maximum eta")->capture_default_str();
  sub->add_option("--event-tol", cfg.event_tol, "event bisection tolerance in eta")->capture_default_str();
  sub->add_option("--residual-cap", cfg.residual_cap, "abort threshold on |residual|")->capture_default_str();
  sub->add_option("--family", cfg.family, "direction inside the unstable family")->capture_default_str();
  sub->add_option("--near-radius", cfg.near_radius, "NEAR_P0_MINUS radius")->capture_default_str();
}

}  // namespace

int exit_code_for(Status s) {
  switch (s) {
    case Status::kVerified:
    case Status::kSampledConsistent:
      return kExitOk;
    case Status::kRefuted:
      return kExitRefuted;
    case Status::kOutOfHypothesis:
      return kExitOutOfHypothesis;
  }
  return kExitOutOfHypothesis;
}

std::vector<double> parse_s_range(const std::string& text) {
  auto num = [](const std::string& x) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(x, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed number '" + x + "' in s range");
    }
    if (used != x.size()) throw std::invalid_argument("malformed number '" + x + "' in s range");
    return v;
  };
  if (text.empty()) return {};
  std::vector<std::string> parts;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 4 || (parts[2] != "log" && parts[2] != "lin")) {
      throw std::invalid_argument("s range must look like lo:hi:log:n or lo:hi:lin:n");
    }
    const double n = num(parts[3]);
    if (n < 0 || n != std::floor(n)) throw std::invalid_argument("s range count must be a nonnegative integer");
    return s_grid(num(parts[0]), num(parts[1]), static_cast<int>(n), parts[2] == "log");
  }
  std::vector<double> out;
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ',')) out.push_back(num(p));
  return out;
}

const std::vector<TableEntry>& table_entries() {
  static const std::vector<TableEntry> rows = {
      {"Sp(2)U(1)", "U(4)", "SU(5)", 5, 8, make_rational(49, 50)},
      {"Spin(7)", "Spin(8)", "Spin(9)", 7, 8, make_rational(1, 2)},
      {"G2xSO(2)", "Spin(7)SO(2)", "Spin(9)", 7, 14, make_rational(507, 196)},
      {"Spin(11)Sp(1)", "Spin(12)Sp(1)", "E7", 11, 64, make_rational(49)},
      {"Spin(15)", "Spin(16)", "E8", 15, 128, make_rational(32258, 225)},
  };
  return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Barrier certificates and flow experiments for cohomogeneity one Einstein metrics", "einbar"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--jobs", common.jobs, "parallel workers")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--json", common.json_path, "JSON-lines output path, '-' for stdout");
  app.add_option("--out", common.out_path, "CSV output path (default stdout)");

  auto* table = app.add_subcommand("table", "thresholds and gate status for the five example pairs");
  Target vt;
  auto* verify = app.add_subcommand("verify", "full verdict battery for (d1, d2, A)");
  add_target(verify, vt, true);
  Target ct;
  std::string check_id;
  auto* certify = app.add_subcommand("certify", "one named check");
  certify->add_option("check_id", check_id, "check id")->required();
  add_target(certify, ct, false);
  Target it;
  IntegratorConfig icfg;
  auto* integrate = app.add_subcommand("integrate", "shoot one trajectory from p0+");
  add_target(integrate, it, true);
  integrate->add_option("--s", icfg.s, "shooting offset")->capture_default_str();
  add_integrator(integrate, icfg);
  Target st;
  IntegratorConfig scfg;
  std::string range;
  auto* sw = app.add_subcommand("sweep", "one trajectory per shooting offset");
  add_target(sw, st, true);
  sw->add_option("--s", range, "lo:hi:log:n, lo:hi:lin:n or a comma-separated list")->required();
  add_integrator(sw, scfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (table->parsed()) return cmd_table(common, out);
    if (verify->parsed()) return cmd_verify(common, vt, out, err);
    if (certify->parsed()) return cmd_certify(common, check_id, ct, out, err);
    if (integrate->parsed()) return cmd_integrate(common, it, icfg, out, err);
    if (sw->parsed()) return cmd_sweep(common, st, range, scfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitOutOfHypothesis;
  }
  return kExitUsage;
}

}  // namespace einstein_barrier::cli
