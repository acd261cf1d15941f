#pragma once

#include "fdrelay/channel.hpp"
#include "fdrelay/numerics.hpp"

namespace fdrelay {

enum class ZfDesign { kReceive, kTransmit };

const char* to_string(ZfDesign design);

/// Joint source precoder t, destination combiner r and rank-1 relay matrix
/// W = w_t w_r^H satisfying the loop-breaking condition w_r^H H_RR w_t = 0.
struct PrecodingSolution {
  ComplexVector t;    // N_T, unit norm
  ComplexVector r;    // N_R, unit norm
  ComplexVector w_r;  // M_R
  ComplexVector w_t;  // M_T
  ComplexMatrix w;    // M_T x M_R
  double gamma = 0.0; // end-to-end SNR (linear)
  ZfDesign design = ZfDesign::kReceive;
};

/// Power-independent hop gains of a ZF design. The e2e SNR for powers
/// (P_S, P_R) is P_S a P_R b / (P_S a + P_R b + 1).
struct ZfHopGains {
  double first = 0.0;   // a: S-R gain after the relay receive stage
  double second = 0.0;  // b: R-D gain after the relay transmit stage
};

/// x y / (x + y + 1), the dual-hop AF combination of two hop SNRs.
inline double dual_hop_snr(double x, double y) { return x * y / (x + y + 1.0); }

double zf_snr(const ZfHopGains& gains, double p_s, double p_r);

/// Receive ZF (needs M_R > 1): MRT at the relay output towards h_RD and a
/// receive vector w_r that nulls the loop direction H_RR h_RD.
PrecodingSolution receive_zf(const ChannelRealization& ch, double p_s, double p_r);

/// Transmit ZF (needs M_T > 1): MRC at the relay input and a transmit
/// vector w_t orthogonal to H_RR^H h_SR, scaled to spend exactly P_R.
PrecodingSolution transmit_zf(const ChannelRealization& ch, double p_s, double p_r);

PrecodingSolution solve_zf(ZfDesign design, const ChannelRealization& ch, double p_s,
                           double p_r);

/// Hop gains only (a, b) without building the beamformers: receive ZF
/// gives lambda_max(H_SR^H D H_SR) and lambda_max(H_RD H_RD^H); transmit
/// ZF gives lambda_max(H_SR^H H_SR) and lambda_max(H_RD B H_RD^H).
ZfHopGains zf_hop_gains(ZfDesign design, const ChannelRealization& ch);

/// End-to-end SINR P_S |h_RD^H W h_SR|^2 / (||h_RD^H W||^2 + 1) for a
/// relay matrix that already breaks the loop (W H_RR W = 0).
double generic_e2e_sinr(const ComplexMatrix& w, const ComplexVector& h_sr,
                        const ComplexVector& h_rd, double p_s);

/// Same, with the effective channels h_SR = H_SR t and h_RD = H_RD^H r.
double generic_e2e_sinr(const ComplexMatrix& w, const ChannelRealization& ch,
                        const ComplexVector& t, const ComplexVector& r, double p_s);

/// ||W H_RR W||_F.
double zf_loop_check(const ComplexMatrix& w, const ComplexMatrix& h_rr);

/// P_S ||W h_SR||^2 + ||W||_F^2.
double relay_output_power(const ComplexMatrix& w, const ComplexVector& h_sr, double p_s);

/// I - v v^H / ||v||^2, or the identity when v is negligible relative to
/// `reference` (nothing to null).
ComplexMatrix orthogonal_projector(const ComplexVector& v, double reference);

}  // namespace fdrelay
