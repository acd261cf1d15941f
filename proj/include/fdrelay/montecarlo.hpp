#pragma once

#include <cstdint>
#include <vector>

#include "fdrelay/channel.hpp"
#include "fdrelay/outage.hpp"
#include "fdrelay/scheme.hpp"

namespace fdrelay {

struct TrialPlan {
  Scheme scheme = Scheme::kMm;
  SystemConfig config;
  double gamma_t = 3.0;
  std::uint64_t trials = 1'000'000;
  std::uint64_t base_seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct OutageEstimate {
  double p_hat = 0.0;
  double stderr_ = 0.0;  // sqrt(p_hat (1 - p_hat) / trials)
  std::uint64_t trials = 0;
  std::uint64_t events = 0;
};

OutageEstimate make_estimate(std::uint64_t events, std::uint64_t trials);

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_stderr(double p, std::uint64_t trials);

/// Fraction of trials whose end-to-end SNR falls below gamma_t. Trial t
/// draws its channels from substream t of base_seed, so the estimate is
/// bit-identical for any thread count.
OutageEstimate estimate_outage(const TrialPlan& plan);

/// Monte Carlo outage for each grid point (P_S in dB), sharing channel
/// draws across grid points. Point i equals estimate_outage() run with
/// P_S = 10^(grid[i]/10) and the same seed.
std::vector<OutageEstimate> estimate_outage_curve(Scheme scheme, const SystemConfig& config,
                                                  const std::vector<double>& p_s_db,
                                                  double gamma_t, std::uint64_t trials,
                                                  std::uint64_t base_seed,
                                                  unsigned threads = 0);

struct SweepRequest {
  std::vector<Scheme> schemes;
  SystemConfig config;
  std::vector<double> p_s_db;
  std::uint64_t trials = 1'000'000;
  std::uint64_t base_seed = 1;
  unsigned threads = 0;
};

/// Monte Carlo outage for every (scheme, grid point); gamma_t is taken from
/// the configured target rate.
std::vector<OutagePoint> sweep_outage(const SweepRequest& request);

/// Grid start..stop inclusive in increments of step (dB).
std::vector<double> db_grid(double start, double stop, double step);

}  // namespace fdrelay
