#include "fdrelay/antenna_selection.hpp"

#include "fdrelay/errors.hpp"
#include "fdrelay/precoding.hpp"

namespace fdrelay {

namespace {

SelectionResult finish(AsScheme scheme, const LinkGains& g, int i, int j, int k, int l) {
  return {scheme, i, j, k, l, sinr_quadruple(g, i, j, k, l)};
}

// Row of the largest entry in column `col`, first on ties.
int argmax_in_col(const Eigen::MatrixXd& m, Eigen::Index col) {
  Eigen::Index best = 0;
  for (Eigen::Index r = 1; r < m.rows(); ++r) {
    if (m(r, col) > m(best, col)) best = r;
  }
  return static_cast<int>(best);
}

int argmax_in_row(const Eigen::MatrixXd& m, Eigen::Index row) {
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < m.cols(); ++c) {
    if (m(row, c) > m(row, best)) best = c;
  }
  return static_cast<int>(best);
}

}  // namespace

const char* to_string(AsScheme scheme) {
  switch (scheme) {
    case AsScheme::kOptimal: return "OP";
    case AsScheme::kMaxMax: return "MM";
    case AsScheme::kPartial: return "PR";
    case AsScheme::kLoopInterference: return "LI";
  }
  return "?";
}

LinkGains link_gains(const ChannelRealization& ch, const SystemConfig& config) {
  if (ch.h_sr.rows() != config.m_r || ch.h_sr.cols() != config.n_t ||
      ch.h_rd.rows() != config.n_r || ch.h_rd.cols() != config.m_t ||
      ch.h_rr.rows() != config.m_r || ch.h_rr.cols() != config.m_t) {
    throw DimensionError("link_gains: realization does not match the configuration");
  }
  const double p_r = config.relay_power();
  return {config.p_s * ch.h_sr.cwiseAbs2(), p_r * ch.h_rd.cwiseAbs2(),
          p_r * ch.h_rr.cwiseAbs2()};
}

double sinr_quadruple(const LinkGains& g, int i, int j, int k, int l) {
  if (i < 0 || i >= g.sr.rows() || j < 0 || j >= g.sr.cols() || k < 0 ||
      k >= g.rd.rows() || l < 0 || l >= g.rd.cols()) {
    throw DimensionError("sinr_quadruple: antenna index out of range");
  }
  const double first = g.sr(i, j) / (g.rr(i, l) + 1.0);
  return dual_hop_snr(first, g.rd(k, l));
}

SelectionResult select_op(const LinkGains& g) {
  SelectionResult best{AsScheme::kOptimal, 0, 0, 0, 0, sinr_quadruple(g, 0, 0, 0, 0)};
  for (int i = 0; i < g.sr.rows(); ++i) {
    for (int j = 0; j < g.sr.cols(); ++j) {
      for (int k = 0; k < g.rd.rows(); ++k) {
        for (int l = 0; l < g.rd.cols(); ++l) {
          const double s = sinr_quadruple(g, i, j, k, l);
          if (s > best.sinr) best = {AsScheme::kOptimal, i, j, k, l, s};
        }
      }
    }
  }
  return best;
}

SelectionResult select_mm(const LinkGains& g) {
  int bi = 0, bj = 0;
  for (int i = 0; i < g.sr.rows(); ++i) {
    for (int j = 0; j < g.sr.cols(); ++j) {
      if (g.sr(i, j) > g.sr(bi, bj)) bi = i, bj = j;
    }
  }
  int bk = 0, bl = 0;
  for (int k = 0; k < g.rd.rows(); ++k) {
    for (int l = 0; l < g.rd.cols(); ++l) {
      if (g.rd(k, l) > g.rd(bk, bl)) bk = k, bl = l;
    }
  }
  return finish(AsScheme::kMaxMax, g, bi, bj, bk, bl);
}

SelectionResult select_pr(const LinkGains& g) {
  int bi = 0, bj = 0, bl = 0;
  double best = g.sr(0, 0) / (g.rr(0, 0) + 1.0);
  for (int i = 0; i < g.sr.rows(); ++i) {
    for (int j = 0; j < g.sr.cols(); ++j) {
      for (int l = 0; l < g.rr.cols(); ++l) {
        const double ratio = g.sr(i, j) / (g.rr(i, l) + 1.0);
        if (ratio > best) best = ratio, bi = i, bj = j, bl = l;
      }
    }
  }
  return finish(AsScheme::kPartial, g, bi, bj, argmax_in_col(g.rd, bl), bl);
}

SelectionResult select_li(const LinkGains& g) {
  int bi = 0, bl = 0;
  for (int i = 0; i < g.rr.rows(); ++i) {
    for (int l = 0; l < g.rr.cols(); ++l) {
      if (g.rr(i, l) < g.rr(bi, bl)) bi = i, bl = l;
    }
  }
  return finish(AsScheme::kLoopInterference, g, bi, argmax_in_row(g.sr, bi),
                argmax_in_col(g.rd, bl), bl);
}

SelectionResult select(AsScheme scheme, const LinkGains& g) {
  switch (scheme) {
    case AsScheme::kOptimal: return select_op(g);
    case AsScheme::kMaxMax: return select_mm(g);
    case AsScheme::kPartial: return select_pr(g);
    case AsScheme::kLoopInterference: return select_li(g);
  }
  throw DomainError("select: unknown scheme");
}

}  // namespace fdrelay
