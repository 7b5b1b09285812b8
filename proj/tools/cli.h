#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "einstein_barrier/rational.h"
#include "einstein_barrier/verdict.h"

namespace einstein_barrier::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitRefuted = 1,
  kExitOutOfHypothesis = 2,
  kExitNumericalAbort = 3,
  kExitUsage = 64,
};

/// VERIFIED and SAMPLED_CONSISTENT -> 0, REFUTED -> 1, OUT_OF_HYPOTHESIS -> 2.
int exit_code_for(Status s);

/// "lo:hi:log:n" or "lo:hi:lin:n", a comma-separated list, or "" for no values.
/// Throws std::invalid_argument on malformed text.
std::vector<double> parse_s_range(const std::string& text);

struct TableEntry {
  std::string K, H, G;
  int d1 = 0;
  int d2 = 0;
  Rational A;
};

/// The five dimension pairs with their example A values.
const std::vector<TableEntry>& table_entries();

/// Runs the command line (without the program name). Verdict streams and data
/// go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace einstein_barrier::cli
