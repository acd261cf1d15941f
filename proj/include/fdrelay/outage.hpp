#pragma once

#include <cstdint>

#include "fdrelay/channel.hpp"
#include "fdrelay/scheme.hpp"
#include "fdrelay/wishart.hpp"

namespace fdrelay {

/// One point of an outage curve.
struct OutagePoint {
  Scheme scheme = Scheme::kMm;
  Method method = Method::kExact;
  double p_s_db = 0.0;
  double p_out = 0.0;
  double stderr_ = 0.0;        // Monte Carlo only
  std::uint64_t trials = 0;    // Monte Carlo only
};

/// Quadrature tolerances used by the integral evaluators.
inline constexpr double kOutageAbsTol = 1e-10;
inline constexpr double kOutageRelTol = 1e-8;

/// Exact outage of a ZF design as a finite Bessel-K sum. Hop 1 uses the
/// largest-eigenvalue law of an (M_R - 1) x N_T (receive) or M_R x N_T
/// (transmit) Wishart factor at average P_S c_SR; hop 2 an M_T x N_R or
/// (M_T - 1) x N_R factor at average P_R c_RD.
double outage_zf_exact(ZfDesign design, const SystemConfig& config, double gamma_t);

/// The same kernel for arbitrary hop dimensions and averages.
double dual_hop_wishart_outage(int m1, int n1, double avg1, int m2, int n2, double avg2,
                               double gamma_t);

/// High-SNR single-term (or two-term on ties) outage of a ZF design.
double outage_zf_asymptotic(ZfDesign design, const SystemConfig& config, double gamma_t);
double log_outage_zf_asymptotic(ZfDesign design, const SystemConfig& config,
                                double gamma_t);

// Exact antenna-selection outage, evaluated by numerical integration.
double outage_mm_exact(const SystemConfig& config, double gamma_t);
double outage_pr_exact(const SystemConfig& config, double gamma_t);
double outage_li_exact(const SystemConfig& config, double gamma_t);

/// Dispatches to the evaluator for `scheme`. OP has no exact evaluator and
/// raises UnsupportedConfigError.
double outage_exact(Scheme scheme, const SystemConfig& config, double gamma_t);

/// CDF of the first-hop SINR X = A / (B + 1) with A the largest of n
/// exponentials of mean avg_sr and B exponential with mean avg_rr / divisor.
/// Returned as the complement 1 - F_X(x).
double first_hop_ccdf(int n, double avg_sr, double avg_rr, double divisor, double x);
/// F_X(x) itself, accurate to full relative precision for small values.
double first_hop_cdf(int n, double avg_sr, double avg_rr, double divisor, double x);

/// Two-term power-law approximations for P_S -> infinity with P_R = P_S^alpha,
/// 0 < alpha < 1. For OP the MM expression (an upper bound) is returned.
double outage_as_asymptotic(AsScheme scheme, const SystemConfig& config, double gamma_t);
double log_outage_as_asymptotic(AsScheme scheme, const SystemConfig& config,
                                double gamma_t);

struct OutageBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Explicit asymptotic bracket of the OP outage: a lower bound from a
/// decoupled best-link system and the MM approximation as upper bound.
OutageBounds op_as_asymptotic_bounds(const SystemConfig& config, double gamma_t);

double asymptotic_outage(Scheme scheme, const SystemConfig& config, double gamma_t);

/// Exact rational number with positive denominator, kept in lowest terms.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

Fraction make_fraction(std::int64_t num, std::int64_t den);

/// Relay power exponent that balances the decay of both outage terms.
Fraction optimal_alpha(AsScheme scheme, const SystemConfig& config);

/// Diversity order: min(...) for the ZF designs, the harmonic forms
/// (at the optimal alpha) for the selection rules.
Fraction diversity_order(Scheme scheme, const SystemConfig& config);

/// Number of channels examined by a selection rule.
std::int64_t selection_complexity(AsScheme scheme, const SystemConfig& config);

}  // namespace fdrelay
