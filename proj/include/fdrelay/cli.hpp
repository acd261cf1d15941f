#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fdrelay/outage.hpp"
#include "fdrelay/scenario.hpp"

namespace fdrelay::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kUnsupported = 3,
  kNoConvergence = 4,
  kValidationFailed = 5,
};

inline constexpr const char* kCsvHeader = "scheme,method,P_S_dB,p_out,stderr";

/// Every requested (scheme, method, grid point) of the scenario. OP has no
/// exact evaluator; its exact rows are omitted.
std::vector<OutagePoint> compute_curves(const Scenario& scenario);

/// CSV text with the fixed header, rows sorted by (scheme, method, P_S_dB).
std::string format_csv(std::vector<OutagePoint> points);

struct ValidationReport {
  std::string text;
  bool passed = true;
};

/// Exact versus Monte Carlo z-scores at every grid point. OP is checked
/// against the MM exact curve and its asymptotic bracket instead.
ValidationReport validate_scenario(const Scenario& scenario);

/// alpha_opt, diversity and selection complexity table.
std::string constants_table(const SystemConfig& config);

/// Entry point of the `fdrelay` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fdrelay::cli
