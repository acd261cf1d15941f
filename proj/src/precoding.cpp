#include "fdrelay/precoding.hpp"

#include <cmath>

#include "fdrelay/errors.hpp"

namespace fdrelay {

namespace {

constexpr double kDegenerateLoop = 1e-12;

void check_shapes(const ChannelRealization& ch) {
  const auto m_r = ch.h_sr.rows();
  const auto m_t = ch.h_rd.cols();
  if (ch.h_rr.rows() != m_r || ch.h_rr.cols() != m_t) {
    throw DimensionError("channel realization: H_RR must be M_R x M_T");
  }
}

void check_powers(double p_s, double p_r) {
  if (!(p_s > 0.0) || !(p_r > 0.0)) throw DomainError("powers must be positive");
}

// Projection that removes the loop direction H_RR h_RD from the relay
// receive space.
ComplexMatrix receive_projector(const ComplexMatrix& h_rr, const ComplexVector& h_rd) {
  const ComplexVector loop = h_rr * h_rd;
  return orthogonal_projector(loop, h_rr.norm() * h_rd.norm());
}

// Projection that removes H_RR^H h_SR from the relay transmit space.
ComplexMatrix transmit_projector(const ComplexMatrix& h_rr, const ComplexVector& h_sr) {
  const ComplexVector loop = h_rr.adjoint() * h_sr;
  return orthogonal_projector(loop, h_rr.norm() * h_sr.norm());
}

}  // namespace

const char* to_string(ZfDesign design) {
  return design == ZfDesign::kReceive ? "receive_zf" : "transmit_zf";
}

double zf_snr(const ZfHopGains& gains, double p_s, double p_r) {
  return dual_hop_snr(p_s * gains.first, p_r * gains.second);
}

ComplexMatrix orthogonal_projector(const ComplexVector& v, double reference) {
  const auto n = v.size();
  ComplexMatrix p = ComplexMatrix::Identity(n, n);
  const double norm = v.norm();
  if (norm <= kDegenerateLoop * reference || norm == 0.0) return p;
  p.noalias() -= (v * v.adjoint()) / (norm * norm);
  return p;
}

PrecodingSolution receive_zf(const ChannelRealization& ch, double p_s, double p_r) {
  check_shapes(ch);
  check_powers(p_s, p_r);
  if (ch.h_sr.rows() < 2) {
    throw UnsupportedConfigError("receive ZF requires M_R > 1");
  }
  if (ch.h_rd.norm() == 0.0) throw DomainError("receive ZF: H_RD is identically zero");

  PrecodingSolution sol;
  sol.design = ZfDesign::kReceive;

  // r maximizes ||H_RD^H r||^2 = r^H (H_RD H_RD^H) r.
  sol.r = hermitian_max_eig(ch.h_rd * ch.h_rd.adjoint()).vector;
  const ComplexVector h_rd = ch.h_rd.adjoint() * sol.r;

  const ComplexMatrix d_hat = receive_projector(ch.h_rr, h_rd);
  const ComplexMatrix projected = d_hat * ch.h_sr;
  sol.t = hermitian_max_eig(projected.adjoint() * projected).vector;
  const ComplexVector h_sr = ch.h_sr * sol.t;

  sol.w_t = h_rd;

  // Whitening E^{-1/2} for E = I + P_S h_SR h_SR^H, in closed form.
  const auto m_r = h_sr.size();
  const double h_sr_sq = h_sr.squaredNorm();
  ComplexMatrix e_inv_sqrt = ComplexMatrix::Identity(m_r, m_r);
  if (h_sr_sq > 0.0) {
    e_inv_sqrt += ((1.0 / std::sqrt(1.0 + p_s * h_sr_sq) - 1.0) / h_sr_sq) *
                  (h_sr * h_sr.adjoint());
  }
  const ComplexVector loop_white = e_inv_sqrt * (ch.h_rr * h_rd);
  const ComplexMatrix d =
      orthogonal_projector(loop_white, ch.h_rr.norm() * h_rd.norm());
  const ComplexVector aligned = d * (e_inv_sqrt * h_sr);
  const double h_rd_sq = h_rd.squaredNorm();
  const double scale = std::sqrt(p_r / h_rd_sq);
  const double aligned_norm = aligned.norm();
  sol.w_r = aligned_norm > 0.0 ? ComplexVector(e_inv_sqrt * aligned * (scale / aligned_norm))
                               : ComplexVector::Zero(m_r);
  sol.w = sol.w_t * sol.w_r.adjoint();

  const double first = p_s * (d_hat * h_sr).squaredNorm();
  sol.gamma = dual_hop_snr(first, p_r * h_rd_sq);
  return sol;
}

PrecodingSolution transmit_zf(const ChannelRealization& ch, double p_s, double p_r) {
  check_shapes(ch);
  check_powers(p_s, p_r);
  if (ch.h_rd.cols() < 2) {
    throw UnsupportedConfigError("transmit ZF requires M_T > 1");
  }
  if (ch.h_sr.norm() == 0.0) throw DomainError("transmit ZF: H_SR is identically zero");

  PrecodingSolution sol;
  sol.design = ZfDesign::kTransmit;

  sol.t = hermitian_max_eig(ch.h_sr.adjoint() * ch.h_sr).vector;
  const ComplexVector h_sr = ch.h_sr * sol.t;
  sol.w_r = h_sr;

  const ComplexMatrix b = transmit_projector(ch.h_rr, h_sr);
  // r maximizes ||B H_RD^H r||^2.
  const ComplexMatrix steered_rd = b * ch.h_rd.adjoint();
  sol.r = hermitian_max_eig(steered_rd.adjoint() * steered_rd).vector;
  const ComplexVector h_rd = ch.h_rd.adjoint() * sol.r;

  const ComplexVector steered = b * h_rd;
  const double h_sr_sq = h_sr.squaredNorm();
  const double amplitude =
      std::sqrt(p_r / (h_sr_sq * h_sr_sq * p_s + h_sr_sq));
  const double steered_norm = steered.norm();
  sol.w_t = steered_norm > 0.0 ? ComplexVector(steered * (amplitude / steered_norm))
                               : ComplexVector::Zero(h_rd.size());
  sol.w = sol.w_t * sol.w_r.adjoint();

  sol.gamma = dual_hop_snr(p_s * h_sr_sq, p_r * steered.squaredNorm());
  return sol;
}

PrecodingSolution solve_zf(ZfDesign design, const ChannelRealization& ch, double p_s,
                           double p_r) {
  return design == ZfDesign::kReceive ? receive_zf(ch, p_s, p_r)
                                      : transmit_zf(ch, p_s, p_r);
}

ZfHopGains zf_hop_gains(ZfDesign design, const ChannelRealization& ch) {
  check_shapes(ch);
  if (design == ZfDesign::kReceive) {
    if (ch.h_sr.rows() < 2) throw UnsupportedConfigError("receive ZF requires M_R > 1");
    const EigPair rd = hermitian_max_eig(ch.h_rd * ch.h_rd.adjoint());
    const ComplexVector h_rd = ch.h_rd.adjoint() * rd.vector;
    const ComplexMatrix d_hat = receive_projector(ch.h_rr, h_rd);
    const ComplexMatrix projected = d_hat * ch.h_sr;
    const double first = hermitian_max_eig(projected.adjoint() * projected).value;
    return {std::max(0.0, first), std::max(0.0, rd.value)};
  }
  if (ch.h_rd.cols() < 2) throw UnsupportedConfigError("transmit ZF requires M_T > 1");
  const EigPair sr = hermitian_max_eig(ch.h_sr.adjoint() * ch.h_sr);
  const ComplexVector h_sr = ch.h_sr * sr.vector;
  const ComplexMatrix b = transmit_projector(ch.h_rr, h_sr);
  const ComplexMatrix steered_rd = b * ch.h_rd.adjoint();
  const double second = hermitian_max_eig(steered_rd.adjoint() * steered_rd).value;
  return {std::max(0.0, sr.value), std::max(0.0, second)};
}

double generic_e2e_sinr(const ComplexMatrix& w, const ComplexVector& h_sr,
                        const ComplexVector& h_rd, double p_s) {
  if (w.cols() != h_sr.size() || w.rows() != h_rd.size()) {
    throw DimensionError("generic_e2e_sinr: W must be M_T x M_R");
  }
  const Eigen::RowVectorXcd leak = h_rd.adjoint() * w;
  const Complex signal = leak * h_sr;
  return p_s * std::norm(signal) / (leak.squaredNorm() + 1.0);
}

double generic_e2e_sinr(const ComplexMatrix& w, const ChannelRealization& ch,
                        const ComplexVector& t, const ComplexVector& r, double p_s) {
  if (t.size() != ch.h_sr.cols() || r.size() != ch.h_rd.rows()) {
    throw DimensionError("generic_e2e_sinr: t must be N_T and r must be N_R");
  }
  return generic_e2e_sinr(w, ch.h_sr * t, ch.h_rd.adjoint() * r, p_s);
}

double zf_loop_check(const ComplexMatrix& w, const ComplexMatrix& h_rr) {
  if (w.cols() != h_rr.rows() || h_rr.cols() != w.rows()) {
    throw DimensionError("zf_loop_check: W must be M_T x M_R and H_RR M_R x M_T");
  }
  return (w * h_rr * w).norm();
}

double relay_output_power(const ComplexMatrix& w, const ComplexVector& h_sr, double p_s) {
  if (w.cols() != h_sr.size()) throw DimensionError("relay_output_power: shape mismatch");
  return p_s * (w * h_sr).squaredNorm() + w.squaredNorm();
}

}  // namespace fdrelay
