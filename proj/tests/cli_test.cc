#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "cli.h"

namespace eb = einstein_barrier;
using eb::cli::run_cli;
using json = nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> v;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) v.push_back(json::parse(line));
  }
  return v;
}

/// Verdict lines with timing removed, for reproducibility comparisons.
std::vector<json> untimed(const std::string& text) {
  auto v = lines(text);
  for (auto& j : v) j.erase("elapsed_ms");
  return v;
}

}  // namespace

TEST(ExitCodes, TotalOverStatuses) {
  EXPECT_EQ(eb::cli::exit_code_for(eb::Status::kVerified), 0);
  EXPECT_EQ(eb::cli::exit_code_for(eb::Status::kSampledConsistent), 0);
  EXPECT_EQ(eb::cli::exit_code_for(eb::Status::kRefuted), 1);
  EXPECT_EQ(eb::cli::exit_code_for(eb::Status::kOutOfHypothesis), 2);
}

TEST(Verify, ExampleMatrix) {
  const auto ok = run({"verify", "7", "8", "1/2"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(lines(ok.out).back()["check_id"], "battery");

  const auto excluded = run({"verify", "2", "3", "1/2"});
  EXPECT_EQ(excluded.code, 2);
  EXPECT_NE(excluded.err.find("excluded dimensions"), std::string::npos);
  EXPECT_EQ(lines(excluded.out).back()["status"], "OUT_OF_HYPOTHESIS");

  const auto refuted = run({"verify", "5", "8", "0.9"});
  EXPECT_EQ(refuted.code, 1);
  bool witnessed = false;
  for (const auto& j : lines(refuted.out)) {
    if (j["check_id"] != "resultant-pos") continue;
    EXPECT_EQ(j["status"], "REFUTED");
    EXPECT_EQ(j["params"]["A"], "9/10");
    for (const auto& w : j["witnesses"]) {
      if (w["desc"] == "rho1 A - rho0: counterexample k") witnessed = true;
    }
  }
  EXPECT_TRUE(witnessed);
}

TEST(Verify, DecimalAndFractionAgree) {
  const auto a = untimed(run({"verify", "5", "8", "0.98"}).out);
  const auto b = untimed(run({"verify", "5", "8", "49/50"}).out);
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.front()["params"]["A"], "49/50");
}

TEST(Verify, MalformedInputIsUsageError) {
  EXPECT_EQ(run({"verify", "5", "8", "0.9.1"}).code, 64);
  EXPECT_EQ(run({"verify", "5", "8", "1/0"}).code, 64);
  EXPECT_EQ(run({"verify", "5", "8"}).code, 64);
  EXPECT_EQ(run({"verify", "1", "8", "1/2"}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Certify, Examples) {
  const auto omega2 = run({"certify", "omega2", "5", "8"});
  EXPECT_EQ(omega2.code, 0);
  EXPECT_EQ(lines(omega2.out).at(0)["status"], "VERIFIED");

  const auto px = run({"certify", "px-roots", "2", "2"});
  EXPECT_EQ(px.code, 0);
  const auto j = lines(px.out).at(0);
  EXPECT_EQ(j["status"], "VERIFIED");
  bool near = false;
  for (const auto& w : j["witnesses"]) {
    if (w["desc"] == "k_star approx") near = std::abs(std::stod(w["value"].get<std::string>()) + 0.732) < 1e-3;
  }
  EXPECT_TRUE(near);

  const auto res = run({"certify", "resultant-pos", "5", "8", "49/50"});
  EXPECT_EQ(res.code, 0);
  EXPECT_EQ(lines(res.out).at(0)["status"], "VERIFIED");
}

TEST(Certify, UnknownIdListsValidIds) {
  const auto r = run({"certify", "omega7", "5", "8"});
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.err.find("omega-grid"), std::string::npos);
  EXPECT_NE(r.err.find("theorem-gate"), std::string::npos);
  EXPECT_EQ(run({"certify", "resultant-pos", "5", "8"}).code, 64);
}

TEST(Certify, SeedReproducibility) {
  const auto a = untimed(run({"certify", "resultant-identity", "7", "8", "--seed", "7"}).out);
  const auto b = untimed(run({"--seed", "7", "certify", "resultant-identity", "7", "8"}).out);
  const auto c = untimed(run({"certify", "resultant-identity", "7", "8", "--seed", "8"}).out);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.at(0)["seed"], 7);
  EXPECT_NE(a, c);
}

TEST(Table, RowsAndGates) {
  const auto r = run({"table", "--json", "-"});
  EXPECT_EQ(r.code, 0);
  std::vector<json> rows;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '{') rows.push_back(json::parse(line));
  }
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0]["psi"], "186494/198025");
  EXPECT_EQ(rows[0]["params"]["A"], "49/50");
  EXPECT_EQ(rows[4]["psi"], "28882022881/576131150");
  EXPECT_EQ(rows[4]["params"]["A"], "32258/225");
  EXPECT_EQ(rows[3]["params"]["A"], "49");
  for (const auto& row : rows) EXPECT_EQ(row["gate"], "PASS");
  EXPECT_NE(r.out.find("Spin(9)"), std::string::npos);
}

TEST(Integrate, TerminalEvents) {
  const auto h = run({"integrate", "7", "8", "1/2", "--s", "1e-6", "--json", "-"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.err.find("terminal: H_ZERO"), std::string::npos);
  const auto summary = lines(h.out.substr(h.out.rfind("\n{") + 1)).back();
  EXPECT_EQ(summary["terminal"], "H_ZERO");
  EXPECT_LT(summary["max_P_before_terminal"].get<double>(), 0);
  EXPECT_EQ(h.out.rfind("eta,X1,X2,Y,Z,H,X1mX2,ZmMu1Y,P,Q,residual", 0), 0u);

  const auto rest = run({"integrate", "7", "8", "1/2", "--s", "0"});
  EXPECT_EQ(rest.code, 0);
  EXPECT_NE(rest.err.find("terminal: MAX_ETA"), std::string::npos);

  const auto x = run({"integrate", "5", "8", "3/10", "--s", "1e-6"});
  EXPECT_EQ(x.code, 0);
  EXPECT_NE(x.err.find("terminal: X1_EQ_X2"), std::string::npos);
}

TEST(Integrate, ResidualAbortIsExitThree) {
  const auto r = run({"integrate", "7", "8", "1/2", "--s", "1e-3", "--rel-tol", "1e-3", "--abs-tol", "1e-6",
                      "--residual-cap", "1e-9"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("residual abort"), std::string::npos);
  EXPECT_EQ(run({"integrate", "7", "8", "1/2", "--s", "-1"}).code, 64);
}

TEST(Sweep, RowsAndEmptyRange) {
  const auto r = run({"sweep", "7", "8", "1/2", "--s", "1e-7:1e-3:log:20", "--jobs", "4"});
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s,terminal,eta_end,min_P,min_H,max_residual,H_end,error");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_NE(line.find(",H_ZERO,"), std::string::npos) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 20);

  const auto empty = run({"sweep", "7", "8", "1/2", "--s", ""});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "s,terminal,eta_end,min_P,min_H,max_residual,H_end,error\n");

  const auto near = run({"sweep", "5", "8", "49/50", "--s", "1e-7:1e-3:log:6"});
  EXPECT_EQ(near.code, 0);
  EXPECT_NE(near.err.find("rows ending at X1_EQ_X2 with H > 0: 0"), std::string::npos);

  EXPECT_EQ(run({"sweep", "7", "8", "1/2", "--s", "1e-3:1e-7:log:3"}).code, 64);
  EXPECT_EQ(run({"sweep", "7", "8", "1/2", "--s", "1e-7:1e-3:cubic:3"}).code, 64);
}

TEST(SRange, Parsing) {
  EXPECT_TRUE(eb::cli::parse_s_range("").empty());
  EXPECT_TRUE(eb::cli::parse_s_range("1e-7:1e-3:log:0").empty());
  const auto g = eb::cli::parse_s_range("1e-7:1e-3:log:5");
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 1e-7);
  EXPECT_EQ(g.back(), 1e-3);
  EXPECT_EQ(eb::cli::parse_s_range("1:2:lin:3"), (std::vector<double>{1, 1.5, 2}));
  EXPECT_EQ(eb::cli::parse_s_range("1e-6,2e-6"), (std::vector<double>{1e-6, 2e-6}));
  EXPECT_THROW(eb::cli::parse_s_range("1e-7:1e-3:log"), std::invalid_argument);
  EXPECT_THROW(eb::cli::parse_s_range("1e-7:1e-3:log:2.5"), std::invalid_argument);
  EXPECT_THROW(eb::cli::parse_s_range("1e-7,x"), std::invalid_argument);
}
