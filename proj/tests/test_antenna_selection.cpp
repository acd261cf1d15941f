#include <doctest.h>

#include <random>

#include "fdrelay/antenna_selection.hpp"
#include "fdrelay/channel.hpp"
#include "fdrelay/errors.hpp"

using namespace fdrelay;

namespace {

SystemConfig make_config(int n_t, int m_r, int m_t, int n_r) {
  SystemConfig c;
  c.n_t = n_t, c.m_r = m_r, c.m_t = m_t, c.n_r = n_r;
  c.c_rr = 0.1;
  c.p_s = 100.0;
  c.relay = RelayPower::exponent(0.5);
  return c;
}

double sinr_oracle(const LinkGains& g, int i, int j, int k, int l) {
  const double x = g.sr(i, j) / (g.rr(i, l) + 1.0);
  const double y = g.rd(k, l);
  return x * y / (x + y + 1.0);
}

}  // namespace

TEST_CASE("link gains are per-pair SNRs") {
  const SystemConfig cfg = make_config(2, 3, 2, 4);
  const ChannelRealization ch = sample_channels(cfg, 3, 0);
  const LinkGains g = link_gains(ch, cfg);
  CHECK(g.sr.rows() == 3);
  CHECK(g.sr.cols() == 2);
  CHECK(g.rd.rows() == 4);
  CHECK(g.rd.cols() == 2);
  CHECK(g.rr.rows() == 3);
  CHECK(g.rr.cols() == 2);
  CHECK(g.sr(2, 1) == doctest::Approx(100.0 * std::norm(ch.h_sr(2, 1))));
  CHECK(g.rd(3, 0) == doctest::Approx(10.0 * std::norm(ch.h_rd(3, 0))));
  CHECK(g.rr(1, 1) == doctest::Approx(10.0 * std::norm(ch.h_rr(1, 1))));
}

TEST_CASE("OP is the exhaustive maximum") {
  const SystemConfig cfg = make_config(2, 3, 2, 2);
  for (int t = 0; t < 500; ++t) {
    const LinkGains g = link_gains(sample_channels(cfg, 7, t), cfg);
    double best = -1.0;
    int bi = -1, bj = -1, bk = -1, bl = -1;
    for (int i = 0; i < cfg.m_r; ++i)
      for (int j = 0; j < cfg.n_t; ++j)
        for (int k = 0; k < cfg.n_r; ++k)
          for (int l = 0; l < cfg.m_t; ++l) {
            const double v = sinr_oracle(g, i, j, k, l);
            if (v > best) best = v, bi = i, bj = j, bk = k, bl = l;
          }
    const SelectionResult r = select_op(g);
    CHECK(r.sinr == doctest::Approx(best).epsilon(1e-14));
    CHECK(r.i == bi);
    CHECK(r.j == bj);
    CHECK(r.k == bk);
    CHECK(r.l == bl);
  }
}

TEST_CASE("sub-optimal rules follow their definitions") {
  const SystemConfig cfg = make_config(3, 2, 3, 2);
  for (int t = 0; t < 300; ++t) {
    const LinkGains g = link_gains(sample_channels(cfg, 11, t), cfg);

    const SelectionResult mm = select_mm(g);
    CHECK(g.sr(mm.i, mm.j) == g.sr.maxCoeff());
    CHECK(g.rd(mm.k, mm.l) == g.rd.maxCoeff());
    CHECK(mm.sinr == doctest::Approx(sinr_oracle(g, mm.i, mm.j, mm.k, mm.l)));

    const SelectionResult pr = select_pr(g);
    double best_first = -1.0;
    for (int i = 0; i < cfg.m_r; ++i)
      for (int j = 0; j < cfg.n_t; ++j)
        for (int l = 0; l < cfg.m_t; ++l)
          best_first = std::max(best_first, g.sr(i, j) / (g.rr(i, l) + 1.0));
    CHECK(g.sr(pr.i, pr.j) / (g.rr(pr.i, pr.l) + 1.0) == best_first);
    CHECK(g.rd(pr.k, pr.l) == g.rd.col(pr.l).maxCoeff());

    const SelectionResult li = select_li(g);
    CHECK(g.rr(li.i, li.l) == g.rr.minCoeff());
    CHECK(g.sr(li.i, li.j) == g.sr.row(li.i).maxCoeff());
    CHECK(g.rd(li.k, li.l) == g.rd.col(li.l).maxCoeff());
  }
}

TEST_CASE("OP dominates every other rule") {
  const SystemConfig cfg = make_config(2, 2, 2, 2);
  for (int t = 0; t < 2000; ++t) {
    const LinkGains g = link_gains(sample_channels(cfg, 13, t), cfg);
    const double op = select_op(g).sinr;
    for (AsScheme s : {AsScheme::kMaxMax, AsScheme::kPartial, AsScheme::kLoopInterference}) {
      CHECK(op >= select(s, g).sinr);
    }
  }
}

TEST_CASE("single relay antennas make OP and MM coincide") {
  const SystemConfig cfg = make_config(3, 1, 1, 2);
  for (int t = 0; t < 500; ++t) {
    const LinkGains g = link_gains(sample_channels(cfg, 19, t), cfg);
    const SelectionResult op = select_op(g), mm = select_mm(g);
    CHECK(op.i == mm.i);
    CHECK(op.j == mm.j);
    CHECK(op.k == mm.k);
    CHECK(op.l == mm.l);
    CHECK(op.sinr == mm.sinr);
  }
}

TEST_CASE("ties go to the smallest indices") {
  LinkGains g;
  g.sr = Eigen::MatrixXd::Constant(2, 2, 4.0);
  g.rd = Eigen::MatrixXd::Constant(2, 2, 3.0);
  g.rr = Eigen::MatrixXd::Constant(2, 2, 0.5);
  for (AsScheme s : {AsScheme::kOptimal, AsScheme::kMaxMax, AsScheme::kPartial,
                     AsScheme::kLoopInterference}) {
    const SelectionResult r = select(s, g);
    CHECK(r.scheme == s);
    CHECK(r.i == 0);
    CHECK(r.j == 0);
    CHECK(r.k == 0);
    CHECK(r.l == 0);
  }
}

TEST_CASE("quadruple SINR and range checks") {
  LinkGains g;
  g.sr = Eigen::MatrixXd::Constant(1, 1, 9.0);
  g.rd = Eigen::MatrixXd::Constant(1, 1, 4.0);
  g.rr = Eigen::MatrixXd::Constant(1, 1, 2.0);
  CHECK(sinr_quadruple(g, 0, 0, 0, 0) == doctest::Approx(3.0 * 4.0 / 8.0));
  CHECK_THROWS_AS(sinr_quadruple(g, 1, 0, 0, 0), DimensionError);
  CHECK_THROWS_AS(sinr_quadruple(g, 0, 0, 0, -1), DimensionError);
}

TEST_CASE("scheme names") {
  CHECK(std::string(to_string(AsScheme::kOptimal)) == "OP");
  CHECK(std::string(to_string(AsScheme::kMaxMax)) == "MM");
  CHECK(std::string(to_string(AsScheme::kPartial)) == "PR");
  CHECK(std::string(to_string(AsScheme::kLoopInterference)) == "LI");
}
