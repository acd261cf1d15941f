#include "fdrelay/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fdrelay/montecarlo.hpp"

namespace fdrelay::cli {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string g12(double v) { return fmt("%.12g", v); }

bool wants(const Scenario& sc, Method m) {
  return std::find(sc.methods.begin(), sc.methods.end(), m) != sc.methods.end();
}

SystemConfig at_power(SystemConfig config, double db) {
  config.p_s = db_to_linear(db);
  return config;
}

std::vector<Scheme> parse_scheme_list(const std::string& text) {
  std::vector<Scheme> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    const auto s = parse_scheme(item);
    if (!s) throw ScenarioError("--schemes: unknown scheme '" + item + "'", 0);
    out.push_back(*s);
  }
  if (out.empty()) throw ScenarioError("--schemes: empty list", 0);
  return out;
}

struct CommonFlags {
  std::string scenario;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string schemes;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--scenario", f.scenario, "Scenario file")->required();
  cmd->add_option("--trials", f.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--seed", f.seed, "Base seed of the random streams");
  cmd->add_option("--threads", f.threads, "Worker threads (0: all cores)");
  cmd->add_option("--schemes", f.schemes, "Comma-separated schemes, overrides the scenario");
}

Scenario load_with_overrides(const CommonFlags& f) {
  Scenario sc = load_scenario(f.scenario);
  if (f.trials) {
    if (*f.trials == 0) throw ScenarioError("--trials must be >= 1", 0);
    sc.trials = *f.trials;
  }
  if (f.seed) sc.seed = *f.seed;
  if (f.threads) sc.threads = *f.threads;
  if (!f.schemes.empty()) sc.schemes = parse_scheme_list(f.schemes);
  return sc;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError("cannot write output file '" + path + "'", 0);
  out << text;
  if (!out) throw ScenarioError("failed writing output file '" + path + "'", 0);
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (estimate " << e.estimate() << ", error bound "
        << e.error_bound() << ")\n";
    return kNoConvergence;
  } catch (const UnsupportedConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

void validate_exact_scheme(const Scenario& sc, Scheme scheme, std::ostream& out, bool& passed) {
  const SystemConfig config = sc.config_for(scheme);
  const std::vector<double> grid = sc.grid();
  const auto mc = estimate_outage_curve(scheme, config, grid, config.threshold(), sc.trials,
                                        sc.seed, sc.threads);
  out << to_string(scheme) << ": exact vs Monte Carlo (" << sc.trials << " trials)\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %8s %14s %14s %12s %8s\n", "P_S_dB", "p_exact", "p_hat",
                "stderr", "z");
  out << line;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = outage_exact(scheme, at_power(config, grid[i]), config.threshold());
    const double sigma = binomial_stderr(p, sc.trials);
    const double diff = std::abs(p - mc[i].p_hat);
    const double z = sigma > 0.0 ? diff / sigma
                     : diff == 0.0 ? 0.0
                                   : std::numeric_limits<double>::infinity();
    const bool ok = z <= 3.0;
    passed = passed && ok;
    std::snprintf(line, sizeof line, "  %8.4g %14.6e %14.6e %12.4e %8.3f %s\n", grid[i], p,
                  mc[i].p_hat, sigma, z, ok ? "ok" : "FAIL");
    out << line;
  }
}

void validate_op(const Scenario& sc, std::ostream& out, bool& passed) {
  const SystemConfig config = sc.config_for(Scheme::kOp);
  const std::vector<double> grid = sc.grid();
  const double gamma_t = config.threshold();
  const auto mc =
      estimate_outage_curve(Scheme::kOp, config, grid, gamma_t, sc.trials, sc.seed, sc.threads);
  const bool power_law = config.relay.is_exponent() && config.relay.alpha() < 1.0;
  out << "OP: MC + bounds only (" << sc.trials << " trials)\n"
      << "  checks p_hat <= MM exact + 3 stderr"
      << (power_law ? "; p_hat within [0.1 lower, 10 upper] where the bracket is asymptotic\n"
                    : "; asymptotic bracket needs alpha < 1, skipped\n");
  char line[200];
  std::snprintf(line, sizeof line, "  %8s %14s %14s %14s %14s\n", "P_S_dB", "p_hat", "mm_exact",
                "lower", "upper");
  out << line;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SystemConfig point = at_power(config, grid[i]);
    const double mm = outage_mm_exact(point, gamma_t);
    bool ok = mc[i].p_hat <= mm + 3.0 * binomial_stderr(mm, sc.trials);
    double lower = std::nan(""), upper = std::nan("");
    if (power_law) {
      const OutageBounds b = op_as_asymptotic_bounds(point, gamma_t);
      lower = b.lower;
      upper = b.upper;
      if (mc[i].events >= 20 && upper <= 0.05) {
        ok = ok && mc[i].p_hat >= 0.1 * lower && mc[i].p_hat <= 10.0 * upper;
      }
    }
    passed = passed && ok;
    std::snprintf(line, sizeof line, "  %8.4g %14.6e %14.6e %14.6e %14.6e %s\n", grid[i],
                  mc[i].p_hat, mm, lower, upper, ok ? "ok" : "FAIL");
    out << line;
  }
}

}  // namespace

std::vector<OutagePoint> compute_curves(const Scenario& sc) {
  for (Scheme scheme : sc.schemes) {
    const SystemConfig config = sc.config_for(scheme);
    config.validate();
    check_supported(scheme, config);
    const bool power_law = config.relay.is_exponent() && config.relay.alpha() < 1.0;
    if (wants(sc, Method::kAsymptotic) && !is_precoding(scheme) && !power_law) {
      throw UnsupportedConfigError("asymptotic " + to_string(scheme) +
                                   " outage needs P_R = P_S^alpha with alpha < 1");
    }
  }
  std::vector<OutagePoint> points;
  const std::vector<double> grid = sc.grid();
  for (Scheme scheme : sc.schemes) {
    const SystemConfig config = sc.config_for(scheme);
    const double gamma_t = config.threshold();
    for (Method method : sc.methods) {
      if (method == Method::kMonteCarlo) {
        const auto est =
            estimate_outage_curve(scheme, config, grid, gamma_t, sc.trials, sc.seed, sc.threads);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          points.push_back({scheme, method, grid[i], est[i].p_hat, est[i].stderr_, est[i].trials});
        }
        continue;
      }
      if (method == Method::kExact && scheme == Scheme::kOp) continue;
      for (double db : grid) {
        const SystemConfig point = at_power(config, db);
        const double p = method == Method::kExact ? outage_exact(scheme, point, gamma_t)
                                                  : asymptotic_outage(scheme, point, gamma_t);
        points.push_back({scheme, method, db, p, 0.0, 0});
      }
    }
  }
  return points;
}

std::string format_csv(std::vector<OutagePoint> points) {
  std::stable_sort(points.begin(), points.end(), [](const OutagePoint& a, const OutagePoint& b) {
    const std::string sa = to_string(a.scheme), sb = to_string(b.scheme);
    if (sa != sb) return sa < sb;
    const std::string ma = to_string(a.method), mb = to_string(b.method);
    if (ma != mb) return ma < mb;
    return a.p_s_db < b.p_s_db;
  });
  std::string csv = std::string(kCsvHeader) + "\n";
  for (const auto& p : points) {
    csv += to_string(p.scheme) + "," + to_string(p.method) + "," + g12(p.p_s_db) + "," +
           g12(p.p_out) + "," + g12(p.stderr_) + "\n";
  }
  return csv;
}

ValidationReport validate_scenario(const Scenario& sc) {
  if (!wants(sc, Method::kExact) || !wants(sc, Method::kMonteCarlo)) {
    throw ScenarioError("validate needs both 'exact' and 'montecarlo' in methods", 0);
  }
  for (Scheme scheme : sc.schemes) {
    const SystemConfig config = sc.config_for(scheme);
    config.validate();
    check_supported(scheme, config);
  }
  std::ostringstream out;
  bool passed = true;
  for (Scheme scheme : sc.schemes) {
    if (scheme == Scheme::kOp) {
      validate_op(sc, out, passed);
    } else {
      validate_exact_scheme(sc, scheme, out, passed);
    }
  }
  out << (passed ? "PASS" : "FAIL") << "\n";
  return {out.str(), passed};
}

std::string constants_table(const SystemConfig& config) {
  config.validate();
  std::ostringstream out;
  auto cell = [&](const std::string& s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-13s", s.c_str());
    out << buf;
  };
  auto fraction_text = [](const Fraction& f) {
    return f.den == 1 ? std::to_string(f.num) : std::to_string(f.num) + "/" + std::to_string(f.den);
  };
  cell("quantity");
  for (Scheme s : kAllSchemes) cell(to_string(s));
  out << "\n";

  cell("alpha_opt");
  for (Scheme s : kAllSchemes) {
    cell(is_precoding(s) ? "1" : fmt("%.3g", optimal_alpha(to_as_scheme(s), config).value()));
  }
  out << "\n";
  cell("alpha_exact");
  for (Scheme s : kAllSchemes) {
    cell(is_precoding(s) ? "1" : fraction_text(optimal_alpha(to_as_scheme(s), config)));
  }
  out << "\n";
  cell("diversity");
  for (Scheme s : kAllSchemes) {
    try {
      cell(fmt("%.3g", diversity_order(s, config).value()));
    } catch (const UnsupportedConfigError&) {
      cell("n/a");
    }
  }
  out << "\n";
  cell("complexity");
  for (Scheme s : kAllSchemes) {
    cell(is_precoding(s) ? "-" : std::to_string(selection_complexity(to_as_scheme(s), config)));
  }
  out << "\n";
  return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outage analysis of full-duplex MIMO amplify-and-forward relay links",
               "fdrelay"};
  app.require_subcommand(1);

  CommonFlags sweep_flags;
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "Write outage curves as CSV");
  add_common(sweep, sweep_flags);
  sweep->add_option("--out", out_path, "CSV output path (default: scenario output, else stdout)");

  CommonFlags validate_flags;
  auto* validate = app.add_subcommand("validate", "Compare exact outage against Monte Carlo");
  add_common(validate, validate_flags);

  std::string constants_scenario;
  std::optional<int> nt, mr, mt, nr;
  auto* constants = app.add_subcommand("constants", "Print alpha_opt, diversity and complexity");
  constants->add_option("--scenario", constants_scenario, "Take antenna counts from a scenario");
  constants->add_option("--nt", nt, "Source antennas N_T");
  constants->add_option("--mr", mr, "Relay receive antennas M_R");
  constants->add_option("--mt", mt, "Relay transmit antennas M_T");
  constants->add_option("--nr", nr, "Destination antennas N_R");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  if (*sweep) {
    return guarded(err, [&] {
      const Scenario sc = load_with_overrides(sweep_flags);
      const std::string csv = format_csv(compute_curves(sc));
      const std::string path = out_path.empty() ? sc.output : out_path;
      if (path.empty()) {
        out << csv;
      } else {
        write_text(path, csv);
      }
      return static_cast<int>(kOk);
    });
  }
  if (*validate) {
    return guarded(err, [&] {
      const ValidationReport report = validate_scenario(load_with_overrides(validate_flags));
      out << report.text;
      return static_cast<int>(report.passed ? kOk : kValidationFailed);
    });
  }
  return guarded(err, [&] {
    SystemConfig config;
    if (!constants_scenario.empty()) config = load_scenario(constants_scenario).system;
    for (auto [flag, value, field] :
         {std::tuple{"--nt", nt, &config.n_t}, std::tuple{"--mr", mr, &config.m_r},
          std::tuple{"--mt", mt, &config.m_t}, std::tuple{"--nr", nr, &config.n_r}}) {
      if (value) {
        *field = *value;
      } else if (constants_scenario.empty()) {
        throw ScenarioError(std::string("missing antenna count ") + flag, 0);
      }
    }
    out << constants_table(config);
    return static_cast<int>(kOk);
  });
}

}  // namespace fdrelay::cli
