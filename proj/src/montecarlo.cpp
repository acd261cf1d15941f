#include "fdrelay/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fdrelay/antenna_selection.hpp"
#include "fdrelay/errors.hpp"
#include "fdrelay/precoding.hpp"

namespace fdrelay {

namespace {

unsigned resolve_threads(unsigned requested, std::uint64_t trials) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(trials, 1)));
}

// Counts outage events per grid point over trials [begin, end).
void run_block(Scheme scheme, const SystemConfig& base, const std::vector<double>& p_s,
               double gamma_t, std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
               std::vector<std::uint64_t>& events) {
  std::vector<SystemConfig> configs(p_s.size(), base);
  for (std::size_t i = 0; i < p_s.size(); ++i) configs[i].p_s = p_s[i];
  LinkGains gains;
  Eigen::MatrixXd abs_sr, abs_rd, abs_rr;

  for (std::uint64_t trial = begin; trial < end; ++trial) {
    const ChannelRealization ch = sample_channels(base, seed, trial);
    if (is_precoding(scheme)) {
      const ZfHopGains gains = zf_hop_gains(to_design(scheme), ch);
      for (std::size_t i = 0; i < configs.size(); ++i) {
        if (zf_snr(gains, configs[i].p_s, configs[i].relay_power()) < gamma_t) ++events[i];
      }
    } else {
      // Same values as link_gains(ch, configs[i]) without reallocating per point.
      const AsScheme rule = to_as_scheme(scheme);
      if (trial == begin) gains = link_gains(ch, base);
      abs_sr = ch.h_sr.cwiseAbs2();
      abs_rd = ch.h_rd.cwiseAbs2();
      abs_rr = ch.h_rr.cwiseAbs2();
      for (std::size_t i = 0; i < configs.size(); ++i) {
        const double p_r = configs[i].relay_power();
        gains.sr.noalias() = configs[i].p_s * abs_sr;
        gains.rd.noalias() = p_r * abs_rd;
        gains.rr.noalias() = p_r * abs_rr;
        if (select(rule, gains).sinr < gamma_t) ++events[i];
      }
    }
  }
}

}  // namespace

double binomial_stderr(double p, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

OutageEstimate make_estimate(std::uint64_t events, std::uint64_t trials) {
  OutageEstimate e;
  e.trials = trials;
  e.events = events;
  e.p_hat = trials == 0 ? 0.0 : static_cast<double>(events) / static_cast<double>(trials);
  e.stderr_ = binomial_stderr(e.p_hat, trials);
  return e;
}

namespace {

std::vector<OutageEstimate> estimate_linear_curve(Scheme scheme, const SystemConfig& config,
                                                  const std::vector<double>& p_s,
                                                  double gamma_t, std::uint64_t trials,
                                                  std::uint64_t base_seed,
                                                  unsigned threads) {
  config.validate();
  check_supported(scheme, config);
  if (trials == 0) throw DomainError("trial count must be >= 1");
  if (p_s.empty()) throw DomainError("power grid is empty");
  if (!(gamma_t >= 0.0)) throw DomainError("threshold must be nonnegative");

  const unsigned workers = resolve_threads(threads, trials);
  std::vector<std::vector<std::uint64_t>> counts(workers,
                                                 std::vector<std::uint64_t>(p_s.size(), 0));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    try {
      run_block(scheme, config, p_s, gamma_t, base_seed, begin, end, counts[w]);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<OutageEstimate> out;
  out.reserve(p_s.size());
  for (std::size_t i = 0; i < p_s.size(); ++i) {
    std::uint64_t total = 0;
    for (const auto& c : counts) total += c[i];
    out.push_back(make_estimate(total, trials));
  }
  return out;
}

}  // namespace

std::vector<OutageEstimate> estimate_outage_curve(Scheme scheme, const SystemConfig& config,
                                                  const std::vector<double>& p_s_db,
                                                  double gamma_t, std::uint64_t trials,
                                                  std::uint64_t base_seed,
                                                  unsigned threads) {
  std::vector<double> p_s(p_s_db.size());
  std::transform(p_s_db.begin(), p_s_db.end(), p_s.begin(), db_to_linear);
  return estimate_linear_curve(scheme, config, p_s, gamma_t, trials, base_seed, threads);
}

OutageEstimate estimate_outage(const TrialPlan& plan) {
  return estimate_linear_curve(plan.scheme, plan.config, {plan.config.p_s}, plan.gamma_t,
                               plan.trials, plan.base_seed, plan.threads)
      .front();
}

std::vector<OutagePoint> sweep_outage(const SweepRequest& request) {
  std::vector<OutagePoint> points;
  const double gamma_t = request.config.threshold();
  for (Scheme scheme : request.schemes) {
    const auto curve = estimate_outage_curve(scheme, request.config, request.p_s_db, gamma_t,
                                             request.trials, request.base_seed,
                                             request.threads);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      points.push_back({scheme, Method::kMonteCarlo, request.p_s_db[i], curve[i].p_hat,
                        curve[i].stderr_, curve[i].trials});
    }
  }
  return points;
}

std::vector<double> db_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw DomainError("invalid dB grid");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(start + step * static_cast<double>(i));
  return grid;
}

}  // namespace fdrelay
