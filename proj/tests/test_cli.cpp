#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "fdrelay/cli.hpp"

using namespace fdrelay;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fdrelay");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content = {}) {
  const fs::path dir = fs::temp_directory_path() / "fdrelay_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  if (!content.empty()) std::ofstream(p) << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

const std::string kScenarioDir = FDRELAY_SCENARIO_DIR;

const char* kSmall = R"([system]
N_T = 2
M_R = 2
M_T = 2
N_R = 2
c_RR = 0.05
[power]
P_S_dB = 0, 20, 10
alpha = 1
[run]
schemes = MM, receive_zf
methods = exact, montecarlo
trials = 20000
seed = 4
)";

}  // namespace

TEST_CASE("sweep writes the sorted CSV") {
  const fs::path scenario = temp_file("small.ini", kSmall);
  const fs::path out = temp_file("small.csv");
  const Run r = run({"sweep", "--scenario", scenario.string(), "--out", out.string()});
  REQUIRE(r.code == 0);
  const auto rows = lines(slurp(out));
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == "scheme,method,P_S_dB,p_out,stderr");
  CHECK(rows[1].rfind("MM,exact,0,", 0) == 0);
  CHECK(rows[3].rfind("MM,exact,20,", 0) == 0);
  CHECK(rows[4].rfind("MM,montecarlo,0,", 0) == 0);
  CHECK(rows[7].rfind("receive_zf,exact,0,", 0) == 0);
  CHECK(rows[12].rfind("receive_zf,montecarlo,20,", 0) == 0);
  CHECK(rows[1].substr(rows[1].size() - 2) == ",0");
}

TEST_CASE("sweep output is byte-identical across runs and thread counts") {
  const fs::path scenario = temp_file("det.ini", kSmall);
  const fs::path a = temp_file("a.csv"), b = temp_file("b.csv");
  REQUIRE(run({"sweep", "--scenario", scenario.string(), "--out", a.string()}).code == 0);
  REQUIRE(run({"sweep", "--scenario", scenario.string(), "--out", b.string(), "--threads", "3"})
              .code == 0);
  CHECK(slurp(a) == slurp(b));
  const fs::path c = temp_file("c.csv");
  REQUIRE(run({"sweep", "--scenario", scenario.string(), "--out", c.string(), "--seed", "5"})
              .code == 0);
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("flags override the scenario") {
  const fs::path scenario = temp_file("flags.ini", kSmall);
  const Run r = run({"sweep", "--scenario", scenario.string(), "--schemes", "LI", "--trials",
                     "100"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].rfind("LI,", 0) == 0);
}

TEST_CASE("error-floor scenario yields one curve per selection rule") {
  const fs::path out = temp_file("floor.csv");
  const Run r = run({"sweep", "--scenario", kScenarioDir + "/error_floor.ini", "--out",
                     out.string(), "--trials", "2000"});
  REQUIRE(r.code == 0);
  const auto rows = lines(slurp(out));
  CHECK(rows.size() == 1 + 4 * 6);
}

TEST_CASE("exit codes") {
  const std::string no_schemes = std::string(kSmall).replace(
      std::string(kSmall).find("schemes = MM, receive_zf"), 24, "schemes =");
  Run r = run({"sweep", "--scenario", temp_file("e1.ini", no_schemes).string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("schemes") != std::string::npos);

  const std::string negative =
      std::string(kSmall).replace(std::string(kSmall).find("c_RR = 0.05"), 11, "c_RR = -1");
  r = run({"validate", "--scenario", temp_file("e2.ini", negative).string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 6") != std::string::npos);

  CHECK(run({"sweep", "--scenario", "/nonexistent/file.ini"}).code == 2);
  CHECK(run({"sweep"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"sweep", "--scenario", temp_file("e3.ini", kSmall).string(), "--schemes", "XX"})
            .code == 2);

  const std::string single_rx =
      std::string(kSmall).replace(std::string(kSmall).find("M_R = 2"), 7, "M_R = 1");
  CHECK(run({"sweep", "--scenario", temp_file("e4.ini", single_rx).string()}).code == 3);

  const std::string asym = std::string(kSmall).replace(
      std::string(kSmall).find("methods = exact, montecarlo"), 27, "methods = asymptotic");
  CHECK(run({"sweep", "--scenario", temp_file("e5.ini", asym).string(), "--schemes", "MM"})
            .code == 3);
}

TEST_CASE("validate reports z-scores and fails on disagreement") {
  const fs::path scenario = temp_file("v.ini", kSmall);
  const Run ok = run({"validate", "--scenario", scenario.string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("MM: exact vs Monte Carlo") != std::string::npos);
  CHECK(ok.out.find("PASS") != std::string::npos);

  // With a single trial, an outage event at a point whose exact outage is
  // small lies many standard errors away; some seed must produce one.
  const fs::path fine = temp_file("v1.ini", std::string(kSmall).replace(
      std::string(kSmall).find("P_S_dB = 0, 20, 10"), 18, "P_S_dB = 0, 20, 1"));
  bool failed = false;
  for (int seed = 1; seed <= 200 && !failed; ++seed) {
    const Run bad = run({"validate", "--scenario", fine.string(), "--trials", "1", "--seed",
                         std::to_string(seed), "--schemes", "MM"});
    CHECK((bad.code == 0 || bad.code == 5));
    if (bad.code == 5) {
      failed = true;
      CHECK(bad.out.find("FAIL") != std::string::npos);
    }
  }
  CHECK(failed);

  const std::string mc_only = std::string(kSmall).replace(
      std::string(kSmall).find("methods = exact, montecarlo"), 27, "methods = montecarlo");
  CHECK(run({"validate", "--scenario", temp_file("v2.ini", mc_only).string()}).code == 2);
}

TEST_CASE("validate treats OP separately") {
  const fs::path scenario = temp_file("op.ini", kSmall);
  const Run r = run({"validate", "--scenario", scenario.string(), "--schemes", "OP"});
  CHECK(r.code == 0);
  CHECK(r.out.find("OP: MC + bounds only") != std::string::npos);
}

TEST_CASE("constants table") {
  const Run r = run({"constants", "--nt", "2", "--mr", "2", "--mt", "2", "--nr", "2"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  auto cells = [](const std::string& row) {
    std::vector<std::string> out;
    std::stringstream ss(row);
    std::string cell;
    while (ss >> cell) out.push_back(cell);
    return out;
  };
  CHECK(cells(rows[0]) ==
        std::vector<std::string>{"quantity", "receive_zf", "transmit_zf", "OP", "MM", "PR", "LI"});
  CHECK(cells(rows[1]) ==
        std::vector<std::string>{"alpha_opt", "1", "1", "0.5", "0.5", "0.667", "0.5"});
  CHECK(cells(rows[2]) ==
        std::vector<std::string>{"alpha_exact", "1", "1", "1/2", "1/2", "2/3", "1/2"});
  CHECK(cells(rows[3]) ==
        std::vector<std::string>{"diversity", "2", "2", "2", "2", "1.33", "1"});
  CHECK(cells(rows[4]) ==
        std::vector<std::string>{"complexity", "-", "-", "16", "8", "10", "8"});

  const Run single = run({"constants", "--nt", "1", "--mr", "1", "--mt", "1", "--nr", "1"});
  REQUIRE(single.code == 0);
  for (const auto& row : lines(single.out)) {
    const auto c = cells(row);
    if (c[0] == "complexity" || c[0] == "quantity") continue;
    CHECK(c[3] == c[4]);
  }
  CHECK(run({"constants", "--nt", "0", "--mr", "1", "--mt", "1", "--nr", "1"}).code == 2);
  CHECK(run({"constants", "--nt", "2"}).code == 2);
  CHECK(run({"constants", "--scenario", kScenarioDir + "/error_floor.ini"}).code == 0);
}
