#include <doctest.h>

#include <string>

#include "fdrelay/outage.hpp"
#include "fdrelay/scenario.hpp"

using namespace fdrelay;

namespace {

const char* kBase = R"([system]
N_T = 2
M_R = 3
M_T = 2
N_R = 1
c_SR = 1.5
c_RD = 0.5
c_RR = 0.05   # residual loop
R_0 = 1

[power]
P_S_dB = 0, 20, 5
alpha = 0.75
alpha.PR = auto

[run]
schemes = receive_zf, MM, PR
methods = exact, montecarlo
trials = 5000
seed = 12
threads = 2
output = out.csv
)";

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return {};
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

}  // namespace

TEST_CASE("parses every field") {
  const Scenario sc = parse_scenario(kBase);
  CHECK(sc.system.n_t == 2);
  CHECK(sc.system.m_r == 3);
  CHECK(sc.system.m_t == 2);
  CHECK(sc.system.n_r == 1);
  CHECK(sc.system.c_sr == 1.5);
  CHECK(sc.system.c_rd == 0.5);
  CHECK(sc.system.c_rr == 0.05);
  CHECK(sc.system.target_rate == 1.0);
  CHECK(sc.grid() == std::vector<double>{0, 5, 10, 15, 20});
  CHECK(sc.schemes == std::vector<Scheme>{Scheme::kReceiveZf, Scheme::kMm, Scheme::kPr});
  CHECK(sc.methods == std::vector<Method>{Method::kExact, Method::kMonteCarlo});
  CHECK(sc.trials == 5000);
  CHECK(sc.seed == 12);
  CHECK(sc.threads == 2);
  CHECK(sc.output == "out.csv");
}

TEST_CASE("relay power rule per scheme") {
  const Scenario sc = parse_scenario(kBase);
  CHECK(sc.config_for(Scheme::kMm).relay == RelayPower::exponent(0.75));
  CHECK(sc.config_for(Scheme::kReceiveZf).relay == RelayPower::exponent(0.75));
  const double pr = optimal_alpha(AsScheme::kPartial, sc.system).value();
  CHECK(sc.config_for(Scheme::kPr).relay == RelayPower::exponent(pr));

  const Scenario automatic = parse_scenario(replace(kBase, "alpha = 0.75", "alpha = auto"));
  CHECK(automatic.config_for(Scheme::kReceiveZf).relay == RelayPower::exponent(1.0));
  CHECK(automatic.config_for(Scheme::kMm).relay ==
        RelayPower::exponent(optimal_alpha(AsScheme::kMaxMax, automatic.system).value()));

  const std::string fixed = replace(replace(kBase, "alpha = 0.75\n", "P_R_dB = 10\n"),
                                    "alpha.PR = auto\n", "");
  CHECK(parse_scenario(fixed).config_for(Scheme::kMm).relay ==
        RelayPower::fixed(db_to_linear(10.0)));
}

TEST_CASE("round trip through the writer") {
  const Scenario sc = parse_scenario(kBase);
  const Scenario again = parse_scenario(format_scenario(sc));
  CHECK(again == sc);
  CHECK(again.system == sc.system);

  Scenario odd = sc;
  odd.system.c_rr = 0.1 + 0.2;
  odd.db_step = 1.0 / 3.0;
  odd.p_r_db = 3.3;
  odd.alpha_per_scheme.clear();
  odd.alpha = {};
  odd.output.clear();
  CHECK(parse_scenario(format_scenario(odd)) == odd);
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_line(replace(kBase, "c_RR = 0.05", "c_RR = -0.05")) == 8);
  CHECK(error_line(replace(kBase, "N_R = 1", "N_R = one")) == 5);
  CHECK(error_line(replace(kBase, "R_0 = 1", "R_0 = 1\nbogus = 3")) == 10);
  CHECK(error_line(replace(kBase, "[power]", "[powers]")) == 11);
  CHECK(error_line(replace(kBase, "P_S_dB = 0, 20, 5", "P_S_dB = 0, 20")) == 12);
  CHECK(error_line(replace(kBase, "alpha = 0.75", "alpha = 1.5")) == 13);
  CHECK(error_line(replace(kBase, "alpha.PR", "alpha.XX")) == 14);
  CHECK(error_line(replace(kBase, "MM, PR", "MM, QQ")) == 17);
  CHECK(error_line(replace(kBase, "trials = 5000", "trials = 0")) == 19);
  CHECK(error_line(replace(kBase, "seed = 12", "seed = 12\nseed = 13")) == 21);
  CHECK(error_line(replace(kBase, "N_T = 2", "N_T 2")) == 2);
  CHECK(error_text(replace(kBase, "c_RR = 0.05", "c_RR = -0.05")).find("line 8") == 0);
}

TEST_CASE("missing keys are named") {
  const std::string no_schemes = replace(kBase, "schemes = receive_zf, MM, PR", "schemes =");
  CHECK(error_text(no_schemes).find("schemes") != std::string::npos);
  const std::string dropped = replace(kBase, "schemes = receive_zf, MM, PR\n", "");
  CHECK(error_text(dropped).find("schemes") != std::string::npos);
  const std::string no_grid = replace(kBase, "P_S_dB = 0, 20, 5\n", "");
  CHECK(error_text(no_grid).find("P_S_dB") != std::string::npos);
  CHECK(error_text(replace(kBase, "alpha = 0.75", "P_R_dB = 3")).find("exclusive") !=
        std::string::npos);
}

TEST_CASE("defaults") {
  const Scenario sc = parse_scenario("[power]\nP_S_dB = 0, 10, 10\n[run]\nschemes = LI\n");
  CHECK(sc.system.n_t == 1);
  CHECK(sc.system.c_sr == 1.0);
  CHECK(sc.system.c_rr == 0.0);
  CHECK(sc.system.target_rate == 2.0);
  CHECK(sc.alpha == AlphaSetting{false, 1.0});
  CHECK(sc.methods == std::vector<Method>{Method::kExact, Method::kMonteCarlo});
  CHECK(sc.trials == 1000000);
  CHECK(sc.seed == 1);
}
