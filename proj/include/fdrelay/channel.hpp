#pragma once

#include <cstdint>

#include "fdrelay/numerics.hpp"
#include "fdrelay/rng.hpp"

namespace fdrelay {

/// How the relay transmit power follows the source power: either a fixed
/// linear value P_R, or P_R = P_S^alpha with 0 < alpha <= 1.
class RelayPower {
 public:
  static RelayPower fixed(double p_r) { return RelayPower(Kind::kFixed, p_r); }
  static RelayPower exponent(double alpha) {
    return RelayPower(Kind::kExponent, alpha);
  }

  bool is_exponent() const noexcept { return kind_ == Kind::kExponent; }
  double alpha() const noexcept { return is_exponent() ? value_ : 0.0; }
  double fixed_power() const noexcept { return is_exponent() ? 0.0 : value_; }
  double resolve(double p_s) const;

  friend bool operator==(const RelayPower&, const RelayPower&) = default;

 private:
  enum class Kind { kFixed, kExponent };
  RelayPower(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

struct SystemConfig {
  int n_t = 1;  // source transmit antennas
  int m_r = 1;  // relay receive antennas
  int m_t = 1;  // relay transmit antennas
  int n_r = 1;  // destination receive antennas
  double c_sr = 1.0;
  double c_rd = 1.0;
  double c_rr = 0.0;
  double p_s = 1.0;
  RelayPower relay = RelayPower::exponent(1.0);
  double target_rate = 2.0;  // R_0, bits per channel use

  /// Throws DomainError describing the first violated invariant.
  void validate() const;

  double relay_power() const { return relay.resolve(p_s); }
  /// SNR threshold 2^R_0 - 1.
  double threshold() const;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// One block-fading draw. H_SR is M_R x N_T, H_RD is N_R x M_T and H_RR
/// (relay transmit -> relay receive) is M_R x M_T.
struct ChannelRealization {
  ComplexMatrix h_sr;
  ComplexMatrix h_rd;
  ComplexMatrix h_rr;
};

enum class AveragesContext { kPrecoding, kAntennaSelection };

struct DerivedAverages {
  double sr = 0.0;
  double rd = 0.0;
  double rr = 0.0;
};

/// Average link SNR/INR values. Both contexts take the relay power from the
/// configured RelayPower rule; with an exponent rule that is P_S^alpha.
DerivedAverages derived_averages(const SystemConfig& config,
                                 AveragesContext context);

/// Draws i.i.d. CN(0, c_XY) entries for all three channels, in the order
/// H_SR, H_RD, H_RR (column-major within each). Entries of zero-variance
/// links are exactly zero; the stream is advanced identically either way.
ChannelRealization sample_channels(const SystemConfig& config, Philox4x32& stream);

/// sample_channels on the independent substream `index` of `seed`.
ChannelRealization sample_channels(const SystemConfig& config, std::uint64_t seed,
                                   std::uint64_t index);

/// 10^(db/10).
double db_to_linear(double db);

}  // namespace fdrelay
