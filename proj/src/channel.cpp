#include "fdrelay/channel.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fdrelay/errors.hpp"

namespace fdrelay {

double RelayPower::resolve(double p_s) const {
  return is_exponent() ? std::pow(p_s, value_) : value_;
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw DomainError("SystemConfig: " + msg); };
  if (n_t < 1 || m_r < 1 || m_t < 1 || n_r < 1) fail("antenna counts must be >= 1");
  if (!(c_sr >= 0.0) || !(c_rd >= 0.0) || !(c_rr >= 0.0)) {
    fail("channel variances must be >= 0");
  }
  if (!(p_s > 0.0) || !std::isfinite(p_s)) fail("P_S must be positive");
  if (relay.is_exponent()) {
    if (!(relay.alpha() > 0.0 && relay.alpha() <= 1.0)) fail("alpha must lie in (0, 1]");
  } else if (!(relay.fixed_power() > 0.0)) {
    fail("P_R must be positive");
  }
  if (!(target_rate > 0.0)) fail("R_0 must be positive");
}

double SystemConfig::threshold() const { return std::exp2(target_rate) - 1.0; }

DerivedAverages derived_averages(const SystemConfig& config, AveragesContext) {
  config.validate();
  const double p_r = config.relay_power();
  return {config.p_s * config.c_sr, p_r * config.c_rd, p_r * config.c_rr};
}

namespace {

ComplexMatrix gaussian_matrix(int rows, int cols, double variance,
                              std::normal_distribution<double>& normal,
                              Philox4x32& stream) {
  const double sigma = std::sqrt(variance / 2.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double re = normal(stream);
      const double im = normal(stream);
      m(r, c) = Complex(sigma * re, sigma * im);
    }
  }
  return m;
}

}  // namespace

ChannelRealization sample_channels(const SystemConfig& config, Philox4x32& stream) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ChannelRealization ch;
  ch.h_sr = gaussian_matrix(config.m_r, config.n_t, config.c_sr, normal, stream);
  ch.h_rd = gaussian_matrix(config.n_r, config.m_t, config.c_rd, normal, stream);
  ch.h_rr = gaussian_matrix(config.m_r, config.m_t, config.c_rr, normal, stream);
  return ch;
}

ChannelRealization sample_channels(const SystemConfig& config, std::uint64_t seed,
                                   std::uint64_t index) {
  Philox4x32 stream(seed, index);
  return sample_channels(config, stream);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace fdrelay
