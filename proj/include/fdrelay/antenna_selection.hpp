#pragma once

#include <Eigen/Dense>

#include "fdrelay/channel.hpp"

namespace fdrelay {

enum class AsScheme { kOptimal, kMaxMax, kPartial, kLoopInterference };

/// "OP", "MM", "PR" or "LI".
const char* to_string(AsScheme scheme);

/// Per-antenna-pair instantaneous link SNR/INR values, laid out like the
/// channel matrices: sr(i, j) = P_S |h_SR(i, j)|^2 with i relay-rx and j
/// source-tx, rd(k, l) = P_R |h_RD(k, l)|^2 with k destination-rx and l
/// relay-tx, rr(i, l) = P_R |h_RR(i, l)|^2. P_R follows the configured
/// relay power rule (P_S^alpha in the selection experiments).
struct LinkGains {
  Eigen::MatrixXd sr;
  Eigen::MatrixXd rd;
  Eigen::MatrixXd rr;
};

LinkGains link_gains(const ChannelRealization& ch, const SystemConfig& config);

/// End-to-end SINR of the quadruple (i, j, k, l), indices 0-based:
/// X Y / (X + Y + 1) with X = sr(i, j) / (rr(i, l) + 1) and Y = rd(k, l).
double sinr_quadruple(const LinkGains& g, int i, int j, int k, int l);

/// Selected relay-rx i, source-tx j, destination-rx k, relay-tx l (0-based).
struct SelectionResult {
  AsScheme scheme = AsScheme::kOptimal;
  int i = 0;
  int j = 0;
  int k = 0;
  int l = 0;
  double sinr = 0.0;
};

// All rules break ties towards the lexicographically smallest indices.

/// Exhaustive search over every quadruple.
SelectionResult select_op(const LinkGains& g);
/// Strongest S-R pair and strongest R-D pair, ignoring the loop channel.
SelectionResult select_mm(const LinkGains& g);
/// (i, j, l) maximizing the first-hop SINR, then the best k for that l.
SelectionResult select_pr(const LinkGains& g);
/// Weakest loop pair (i, l), then the best j and k for it.
SelectionResult select_li(const LinkGains& g);

SelectionResult select(AsScheme scheme, const LinkGains& g);

}  // namespace fdrelay
