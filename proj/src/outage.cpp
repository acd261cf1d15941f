#include "fdrelay/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "fdrelay/errors.hpp"
#include "fdrelay/numerics.hpp"

namespace fdrelay {

namespace {

constexpr double kBoundarySlack = 1e-9;

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double clamp_probability(double p, const char* where) {
  if (p < -kBoundarySlack || p > 1.0 + kBoundarySlack || !std::isfinite(p)) {
    throw ConvergenceError(std::string(where) + ": result outside [0, 1]", p,
                           std::abs(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

void check_threshold(double gamma_t) {
  if (!(gamma_t > 0.0)) throw DomainError("outage threshold must be positive");
}

struct HopDims {
  int m1, n1, m2, n2;
};

HopDims zf_hop_dims(ZfDesign design, const SystemConfig& c) {
  if (design == ZfDesign::kReceive) {
    if (c.m_r < 2) throw UnsupportedConfigError("receive_zf requires M_R > 1");
    return {c.m_r - 1, c.n_t, c.m_t, c.n_r};
  }
  if (c.m_t < 2) throw UnsupportedConfigError("transmit_zf requires M_T > 1");
  return {c.m_r, c.n_t, c.m_t - 1, c.n_r};
}

// Largest of n i.i.d. exponentials with the given mean.
double max_exp_cdf(int n, double mean, double x) {
  return std::pow(-std::expm1(-x / mean), n);
}

double max_exp_pdf(int n, double mean, double x) {
  const double e = std::exp(-x / mean);
  return n / mean * std::pow(-std::expm1(-x / mean), n - 1) * e;
}

// P(X Y / (X + Y + 1) < gamma_t) for independent X and Y:
//   F_Y(g) + int_0^inf F_X(g (y + g + 1) / y) f_Y(y + g) dy.
// Both parts are nonnegative, so the absolute tolerance is tied to F_Y(g),
// a lower bound on the result.
template <typename CdfX, typename CdfY, typename PdfY>
double dual_hop_outage(CdfX&& cdf_x, CdfY&& cdf_y, PdfY&& pdf_y, double gamma_t) {
  const double g = gamma_t;
  auto integrand = [&](double y) {
    if (y <= 0.0) return pdf_y(g);
    const double f_y = pdf_y(y + g);
    if (f_y == 0.0) return 0.0;
    return cdf_x(g + g * (g + 1.0) / y) * f_y;
  };
  const double head = cdf_y(g);
  const double abs_tol = std::min(kOutageAbsTol, kOutageRelTol * head);
  return head + integrate_semi_infinite(integrand, abs_tol, kOutageRelTol);
}

template <typename CdfX>
double selection_outage(CdfX&& cdf_x, int n_y, double avg_y, double gamma_t) {
  return dual_hop_outage(
      cdf_x, [&](double y) { return max_exp_cdf(n_y, avg_y, y); },
      [&](double y) { return max_exp_pdf(n_y, avg_y, y); }, gamma_t);
}

DerivedAverages averages(const SystemConfig& config) {
  config.validate();
  return derived_averages(config, AveragesContext::kAntennaSelection);
}

void require_power_law(const SystemConfig& config) {
  if (!config.relay.is_exponent() || !(config.relay.alpha() < 1.0)) {
    throw DomainError(
        "asymptotic selection outage requires P_R = P_S^alpha with 0 < alpha < 1");
  }
}

struct TwoTerm {
  double log_first;
  double log_second;
};

double safe_log(double x) {
  return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

TwoTerm as_terms(AsScheme scheme, const SystemConfig& c, double gamma_t) {
  const DerivedAverages avg = averages(c);
  const int n1 = c.n_t * c.m_r;
  const double log_ratio = safe_log(avg.rr * gamma_t / avg.sr);
  const double log_second_base = std::log(gamma_t / avg.rd);
  switch (scheme) {
    case AsScheme::kOptimal:
    case AsScheme::kMaxMax:
      return {std::lgamma(n1 + 1.0) + n1 * log_ratio, c.m_t * c.n_r * log_second_base};
    case AsScheme::kPartial:
      return {c.m_r * (std::lgamma(c.n_t + 1.0) - c.n_t * std::log(double(c.m_t))) +
                  n1 * log_ratio,
              c.n_r * log_second_base};
    case AsScheme::kLoopInterference:
      return {std::lgamma(c.n_t + 1.0) - c.n_t * std::log(double(c.m_r) * c.m_t) +
                  c.n_t * log_ratio,
              c.n_r * log_second_base};
  }
  throw DomainError("unknown selection scheme");
}

}  // namespace

double dual_hop_wishart_outage(int m1, int n1, double avg1, int m2, int n2, double avg2,
                               double gamma_t) {
  check_threshold(gamma_t);
  if (!(avg1 > 0.0) || !(avg2 > 0.0)) throw DomainError("average SNRs must be positive");
  const PolyExpExpansion hop1 = wishart_maxeig_expansion(m1, n1);
  const PolyExpExpansion hop2 = wishart_maxeig_expansion(m2, n2);

  // 1 - int_0^inf Fbar_2(g + c/y) f_1(g + y) dy, expanding both polynomial
  // factors binomially; each resulting integral is
  //   int_0^inf y^{nu-1} e^{-alpha y - beta/y} dy = 2 (beta/alpha)^{nu/2} K_nu(2 sqrt(alpha beta)).
  const double g = gamma_t;
  const double c = g * (1.0 + g);
  const double log_g = std::log(g);
  const double log_c = std::log(c);
  double survive = 0.0;
  double magnitude = 0.0;
  for (const auto& t1 : hop1.terms) {
    const double alpha = t1.a / avg1;
    const double log_a1 =
        (t1.b + 1) * std::log(alpha) - std::lgamma(t1.b + 1.0);  // a^{b+1}/(b! avg^{b+1})
    for (const auto& t2 : hop2.terms) {
      const double rate2 = t2.a / avg2;
      const double beta = rate2 * c;
      const double bessel_arg = 2.0 * std::sqrt(alpha * beta);
      const double log_prefactor = -(alpha + rate2) * g + std::log(std::abs(t1.d * t2.d)) + log_a1;
      const double sign = (t1.d * t2.d) < 0.0 ? -1.0 : 1.0;
      for (int m = 0; m <= t2.b; ++m) {
        const double log_m = m * std::log(rate2) - std::lgamma(m + 1.0);
        for (int u = 0; u <= m; ++u) {
          const double log_u = std::log(binomial(m, u)) + (m - u) * log_g + u * log_c;
          for (int v = 0; v <= t1.b; ++v) {
            const double log_v = std::log(binomial(t1.b, v)) + (t1.b - v) * log_g;
            const int nu = v - u + 1;
            const double k = bessel_k(std::abs(nu), bessel_arg);
            if (k == 0.0) continue;
            const double log_integral =
                std::log(2.0) + 0.5 * nu * (std::log(beta) - std::log(alpha)) + std::log(k);
            const double term = std::exp(log_prefactor + log_m + log_u + log_v + log_integral);
            survive += sign * term;
            magnitude += term;
          }
        }
      }
    }
  }
  const double p = 1.0 - survive;
  // The sum is a survival probability; once the outage drops to within a
  // few digits of its rounding error, switch to the lower-tail form.
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + magnitude);
  if (p > 1e3 * rounding) return clamp_probability(p, "dual_hop_wishart_outage");

  auto cdf_x = [&](double x) { return wishart_maxeig_tail_cdf(m1, n1, x, avg1); };
  auto cdf_y = [&](double y) { return wishart_maxeig_tail_cdf(m2, n2, y, avg2); };
  auto pdf_y = [&](double y) { return wishart_maxeig_tail_pdf(m2, n2, y, avg2); };
  return clamp_probability(dual_hop_outage(cdf_x, cdf_y, pdf_y, gamma_t),
                           "dual_hop_wishart_outage");
}

double outage_zf_exact(ZfDesign design, const SystemConfig& config, double gamma_t) {
  config.validate();
  const HopDims dims = zf_hop_dims(design, config);
  const DerivedAverages avg = derived_averages(config, AveragesContext::kPrecoding);
  return dual_hop_wishart_outage(dims.m1, dims.n1, avg.sr, dims.m2, dims.n2, avg.rd,
                                 gamma_t);
}

double log_outage_zf_asymptotic(ZfDesign design, const SystemConfig& config,
                                double gamma_t) {
  config.validate();
  check_threshold(gamma_t);
  const HopDims dims = zf_hop_dims(design, config);
  const DerivedAverages avg = derived_averages(config, AveragesContext::kPrecoding);
  const int d1 = dims.m1 * dims.n1;
  const int d2 = dims.m2 * dims.n2;
  const double first = std::log(wishart_small_x_constant(dims.m1, dims.n1)) +
                       d1 * std::log(gamma_t / avg.sr);
  const double second = std::log(wishart_small_x_constant(dims.m2, dims.n2)) +
                        d2 * std::log(gamma_t / avg.rd);
  if (d1 < d2) return first;
  if (d1 > d2) return second;
  return log_sum_exp(first, second);
}

double outage_zf_asymptotic(ZfDesign design, const SystemConfig& config, double gamma_t) {
  return std::exp(log_outage_zf_asymptotic(design, config, gamma_t));
}

double first_hop_ccdf(int n, double avg_sr, double avg_rr, double divisor, double x) {
  // n sum_p (-1)^p C(n-1, p) e^{-(p+1)x/avg_sr} / ((p+1)(1 + (p+1) avg_rr x / (divisor avg_sr)))
  double sum = 0.0;
  for (int p = 0; p < n; ++p) {
    const double q = p + 1.0;
    const double term = binomial(n - 1, p) * std::exp(-q * x / avg_sr) /
                        (q * (1.0 + q * avg_rr * x / (divisor * avg_sr)));
    sum += (p % 2 == 0) ? term : -term;
  }
  return n * sum;
}

double first_hop_cdf(int n, double avg_sr, double avg_rr, double divisor, double x) {
  const double closed = 1.0 - first_hop_ccdf(n, avg_sr, avg_rr, divisor, x);
  if (closed > 1e-3) return closed;
  // Small values: E_B[F_A(x (B + 1))] directly, with B = (mean) * s.
  const double mean = avg_rr / divisor;
  auto f_a = [&](double y) { return std::pow(-std::expm1(-y / avg_sr), n); };
  if (mean == 0.0) return f_a(x);
  return integrate_semi_infinite(
      [&](double s) { return f_a(x * (1.0 + mean * s)) * std::exp(-s); }, 0.0, 1e-10);
}

double outage_mm_exact(const SystemConfig& config, double gamma_t) {
  check_threshold(gamma_t);
  const DerivedAverages avg = averages(config);
  const int n1 = config.n_t * config.m_r;
  auto cdf_x = [&](double x) { return first_hop_cdf(n1, avg.sr, avg.rr, 1.0, x); };
  return clamp_probability(selection_outage(cdf_x, config.m_t * config.n_r, avg.rd, gamma_t),
                           "outage_mm_exact");
}

double outage_pr_exact(const SystemConfig& config, double gamma_t) {
  check_threshold(gamma_t);
  const DerivedAverages avg = averages(config);
  auto cdf_x = [&](double x) {
    return std::pow(first_hop_cdf(config.n_t, avg.sr, avg.rr, config.m_t, x), config.m_r);
  };
  return clamp_probability(selection_outage(cdf_x, config.n_r, avg.rd, gamma_t),
                           "outage_pr_exact");
}

double outage_li_exact(const SystemConfig& config, double gamma_t) {
  check_threshold(gamma_t);
  const DerivedAverages avg = averages(config);
  const double divisor = static_cast<double>(config.m_r) * config.m_t;
  auto cdf_x = [&](double x) { return first_hop_cdf(config.n_t, avg.sr, avg.rr, divisor, x); };
  return clamp_probability(selection_outage(cdf_x, config.n_r, avg.rd, gamma_t),
                           "outage_li_exact");
}

double outage_exact(Scheme scheme, const SystemConfig& config, double gamma_t) {
  switch (scheme) {
    case Scheme::kReceiveZf: return outage_zf_exact(ZfDesign::kReceive, config, gamma_t);
    case Scheme::kTransmitZf: return outage_zf_exact(ZfDesign::kTransmit, config, gamma_t);
    case Scheme::kMm: return outage_mm_exact(config, gamma_t);
    case Scheme::kPr: return outage_pr_exact(config, gamma_t);
    case Scheme::kLi: return outage_li_exact(config, gamma_t);
    case Scheme::kOp:
      throw UnsupportedConfigError("OP selection has no exact outage evaluator");
  }
  throw DomainError("unknown scheme");
}

double log_outage_as_asymptotic(AsScheme scheme, const SystemConfig& config,
                                double gamma_t) {
  check_threshold(gamma_t);
  require_power_law(config);
  const TwoTerm t = as_terms(scheme, config, gamma_t);
  return log_sum_exp(t.log_first, t.log_second);
}

double outage_as_asymptotic(AsScheme scheme, const SystemConfig& config, double gamma_t) {
  return std::exp(log_outage_as_asymptotic(scheme, config, gamma_t));
}

OutageBounds op_as_asymptotic_bounds(const SystemConfig& config, double gamma_t) {
  check_threshold(gamma_t);
  require_power_law(config);
  const TwoTerm upper = as_terms(AsScheme::kMaxMax, config, gamma_t);
  const int n1 = config.n_t * config.m_r;
  const double shrink = n1 * std::log(static_cast<double>(config.m_t) * config.m_r);
  return {std::exp(log_sum_exp(upper.log_first - shrink, upper.log_second)),
          std::exp(log_sum_exp(upper.log_first, upper.log_second))};
}

double asymptotic_outage(Scheme scheme, const SystemConfig& config, double gamma_t) {
  if (is_precoding(scheme)) return outage_zf_asymptotic(to_design(scheme), config, gamma_t);
  return outage_as_asymptotic(to_as_scheme(scheme), config, gamma_t);
}

Fraction make_fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("fraction with zero denominator");
  if (den < 0) num = -num, den = -den;
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

Fraction optimal_alpha(AsScheme scheme, const SystemConfig& c) {
  const std::int64_t first = static_cast<std::int64_t>(c.n_t) * c.m_r;
  switch (scheme) {
    case AsScheme::kOptimal:
    case AsScheme::kMaxMax:
      return make_fraction(first, first + static_cast<std::int64_t>(c.m_t) * c.n_r);
    case AsScheme::kPartial: return make_fraction(first, first + c.n_r);
    case AsScheme::kLoopInterference: return make_fraction(c.n_t, c.n_t + c.n_r);
  }
  throw DomainError("unknown selection scheme");
}

Fraction diversity_order(Scheme scheme, const SystemConfig& c) {
  auto harmonic = [](std::int64_t a, std::int64_t b) { return make_fraction(a * b, a + b); };
  const std::int64_t sr = static_cast<std::int64_t>(c.n_t) * c.m_r;
  const std::int64_t rd = static_cast<std::int64_t>(c.m_t) * c.n_r;
  check_supported(scheme, c);
  switch (scheme) {
    case Scheme::kReceiveZf:
      return make_fraction(std::min<std::int64_t>(sr - c.n_t, rd), 1);
    case Scheme::kTransmitZf:
      return make_fraction(std::min<std::int64_t>(sr, rd - c.n_r), 1);
    case Scheme::kOp:
    case Scheme::kMm: return harmonic(rd, sr);
    case Scheme::kPr: return harmonic(c.n_r, sr);
    case Scheme::kLi: return harmonic(c.n_t, c.n_r);
  }
  throw DomainError("unknown scheme");
}

std::int64_t selection_complexity(AsScheme scheme, const SystemConfig& c) {
  const std::int64_t nt = c.n_t, mr = c.m_r, mt = c.m_t, nr = c.n_r;
  switch (scheme) {
    case AsScheme::kOptimal: return nt * mr * mt * nr;
    case AsScheme::kMaxMax: return nt * mr + mt * nr;
    case AsScheme::kPartial: return nt * mr * mt + nr;
    case AsScheme::kLoopInterference: return nt + mr * mt + nr;
  }
  throw DomainError("unknown selection scheme");
}

}  // namespace fdrelay
