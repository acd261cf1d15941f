#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdrelay/channel.hpp"
#include "fdrelay/errors.hpp"
#include "fdrelay/scheme.hpp"

namespace fdrelay {

/// Scenario file problem, with the 1-based line it was found on (0 when
/// the problem is a missing key).
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Relay power exponent: a fixed value or "auto" (the diversity-optimal
/// exponent for selection schemes, full power for the ZF designs).
struct AlphaSetting {
  bool automatic = false;
  double value = 1.0;

  friend bool operator==(const AlphaSetting&, const AlphaSetting&) = default;
};

/// Parsed scenario file. Layout:
///
///   [system]  N_T, M_R, M_T, N_R, c_SR, c_RD, c_RR, R_0
///   [power]   P_S_dB = start, stop, step   (inclusive, dB)
///             alpha = <value>|auto, alpha.<SCHEME> = <value>|auto,
///             P_R_dB = <value> (fixed relay power, replaces alpha)
///   [run]     schemes, methods, trials, seed, threads, output
///
/// '#' and ';' start comments. Unknown sections or keys are errors.
struct Scenario {
  SystemConfig system;
  double db_start = 0.0;
  double db_stop = 0.0;
  double db_step = 1.0;
  AlphaSetting alpha;
  std::map<Scheme, AlphaSetting> alpha_per_scheme;
  std::optional<double> p_r_db;
  std::vector<Scheme> schemes;
  std::vector<Method> methods{Method::kExact, Method::kMonteCarlo};
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string output;

  std::vector<double> grid() const;
  /// System configuration for `scheme` with the relay power rule resolved
  /// (P_S left at the configured placeholder).
  SystemConfig config_for(Scheme scheme) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
std::string format_scenario(const Scenario& scenario);

}  // namespace fdrelay
