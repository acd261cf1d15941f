#include "fdrelay/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "fdrelay/montecarlo.hpp"
#include "fdrelay/outage.hpp"

namespace fdrelay {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double to_double(const std::string& key, const std::string& value, int line) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ScenarioError(key + ": expected a number, got '" + value + "'", line);
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& value, int line) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ScenarioError(key + ": expected a nonnegative integer, got '" + value + "'", line);
  }
  return out;
}

int to_count(const std::string& key, const std::string& value, int line) {
  const std::uint64_t v = to_uint(key, value, line);
  if (v < 1 || v > 64) throw ScenarioError(key + ": antenna count must be in [1, 64]", line);
  return static_cast<int>(v);
}

double to_variance(const std::string& key, const std::string& value, int line) {
  const double v = to_double(key, value, line);
  if (v < 0.0) throw ScenarioError(key + ": variance must be >= 0", line);
  return v;
}

AlphaSetting to_alpha(const std::string& key, const std::string& value, int line) {
  if (value == "auto") return {true, 1.0};
  const double a = to_double(key, value, line);
  if (!(a > 0.0 && a <= 1.0)) throw ScenarioError(key + ": alpha must lie in (0, 1]", line);
  return {false, a};
}

// Shortest decimal text that parses back to the same double.
std::string exact(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<double> Scenario::grid() const { return db_grid(db_start, db_stop, db_step); }

SystemConfig Scenario::config_for(Scheme scheme) const {
  SystemConfig config = system;
  if (p_r_db) {
    config.relay = RelayPower::fixed(db_to_linear(*p_r_db));
    return config;
  }
  const auto it = alpha_per_scheme.find(scheme);
  const AlphaSetting setting = it != alpha_per_scheme.end() ? it->second : alpha;
  double a = setting.value;
  if (setting.automatic) {
    a = is_precoding(scheme) ? 1.0 : optimal_alpha(to_as_scheme(scheme), config).value();
  }
  config.relay = RelayPower::exponent(a);
  return config;
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;

  using Handler = std::function<void(const std::string&, const std::string&, int)>;
  const std::map<std::string, std::map<std::string, Handler>> handlers = {
      {"system",
       {
           {"N_T", [&](auto& k, auto& v, int l) { sc.system.n_t = to_count(k, v, l); }},
           {"M_R", [&](auto& k, auto& v, int l) { sc.system.m_r = to_count(k, v, l); }},
           {"M_T", [&](auto& k, auto& v, int l) { sc.system.m_t = to_count(k, v, l); }},
           {"N_R", [&](auto& k, auto& v, int l) { sc.system.n_r = to_count(k, v, l); }},
           {"c_SR", [&](auto& k, auto& v, int l) { sc.system.c_sr = to_variance(k, v, l); }},
           {"c_RD", [&](auto& k, auto& v, int l) { sc.system.c_rd = to_variance(k, v, l); }},
           {"c_RR", [&](auto& k, auto& v, int l) { sc.system.c_rr = to_variance(k, v, l); }},
           {"R_0",
            [&](auto& k, auto& v, int l) {
              sc.system.target_rate = to_double(k, v, l);
              if (!(sc.system.target_rate > 0.0)) throw ScenarioError("R_0 must be positive", l);
            }},
       }},
      {"power",
       {
           {"P_S_dB",
            [&](auto& k, auto& v, int l) {
              const auto items = split_list(v);
              if (items.size() != 3) {
                throw ScenarioError("P_S_dB: expected 'start, stop, step'", l);
              }
              sc.db_start = to_double(k, items[0], l);
              sc.db_stop = to_double(k, items[1], l);
              sc.db_step = to_double(k, items[2], l);
              if (!(sc.db_step > 0.0) || sc.db_stop < sc.db_start) {
                throw ScenarioError("P_S_dB: need step > 0 and stop >= start", l);
              }
            }},
           {"alpha", [&](auto& k, auto& v, int l) { sc.alpha = to_alpha(k, v, l); }},
           {"P_R_dB", [&](auto& k, auto& v, int l) { sc.p_r_db = to_double(k, v, l); }},
       }},
      {"run",
       {
           {"schemes",
            [&](auto& k, auto& v, int l) {
              sc.schemes.clear();
              for (const auto& name : split_list(v)) {
                const auto s = parse_scheme(name);
                if (!s) throw ScenarioError(k + ": unknown scheme '" + name + "'", l);
                sc.schemes.push_back(*s);
              }
            }},
           {"methods",
            [&](auto& k, auto& v, int l) {
              sc.methods.clear();
              for (const auto& name : split_list(v)) {
                const auto m = parse_method(name);
                if (!m) throw ScenarioError(k + ": unknown method '" + name + "'", l);
                sc.methods.push_back(*m);
              }
              if (sc.methods.empty()) throw ScenarioError(k + ": empty list", l);
            }},
           {"trials",
            [&](auto& k, auto& v, int l) {
              sc.trials = to_uint(k, v, l);
              if (sc.trials == 0) throw ScenarioError("trials must be >= 1", l);
            }},
           {"seed", [&](auto& k, auto& v, int l) { sc.seed = to_uint(k, v, l); }},
           {"threads",
            [&](auto& k, auto& v, int l) { sc.threads = static_cast<unsigned>(to_uint(k, v, l)); }},
           {"output", [&](auto&, auto& v, int) { sc.output = v; }},
       }},
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    const std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ScenarioError("malformed section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (!handlers.count(section)) {
        throw ScenarioError("unknown section [" + section + "]", line_no);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ScenarioError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ScenarioError("key '" + key + "' outside a section", line_no);
    if (!seen.insert(section + "." + key).second) {
      throw ScenarioError("duplicate key '" + key + "'", line_no);
    }
    if (section == "power" && key.rfind("alpha.", 0) == 0) {
      const auto scheme = parse_scheme(key.substr(6));
      if (!scheme) throw ScenarioError("unknown scheme in key '" + key + "'", line_no);
      sc.alpha_per_scheme[*scheme] = to_alpha(key, value, line_no);
      continue;
    }
    const auto& keys = handlers.at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw ScenarioError("unknown key '" + key + "' in [" + section + "]", line_no);
    }
    it->second(key, value, line_no);
  }

  if (!seen.count("power.P_S_dB")) throw ScenarioError("missing key 'P_S_dB' in [power]", 0);
  if (sc.schemes.empty()) throw ScenarioError("missing key 'schemes' in [run]", 0);
  if (sc.p_r_db && (seen.count("power.alpha") || !sc.alpha_per_scheme.empty())) {
    throw ScenarioError("P_R_dB and alpha are mutually exclusive", 0);
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file '" + path + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string format_scenario(const Scenario& sc) {
  auto alpha_text = [](const AlphaSetting& a) { return a.automatic ? std::string("auto") : exact(a.value); };
  std::ostringstream out;
  out << "[system]\n"
      << "N_T = " << sc.system.n_t << "\n"
      << "M_R = " << sc.system.m_r << "\n"
      << "M_T = " << sc.system.m_t << "\n"
      << "N_R = " << sc.system.n_r << "\n"
      << "c_SR = " << exact(sc.system.c_sr) << "\n"
      << "c_RD = " << exact(sc.system.c_rd) << "\n"
      << "c_RR = " << exact(sc.system.c_rr) << "\n"
      << "R_0 = " << exact(sc.system.target_rate) << "\n\n"
      << "[power]\n"
      << "P_S_dB = " << exact(sc.db_start) << ", " << exact(sc.db_stop) << ", "
      << exact(sc.db_step) << "\n";
  if (sc.p_r_db) {
    out << "P_R_dB = " << exact(*sc.p_r_db) << "\n";
  } else {
    out << "alpha = " << alpha_text(sc.alpha) << "\n";
    for (const auto& [scheme, a] : sc.alpha_per_scheme) {
      out << "alpha." << to_string(scheme) << " = " << alpha_text(a) << "\n";
    }
  }
  out << "\n[run]\nschemes = ";
  for (std::size_t i = 0; i < sc.schemes.size(); ++i) {
    out << (i ? ", " : "") << to_string(sc.schemes[i]);
  }
  out << "\nmethods = ";
  for (std::size_t i = 0; i < sc.methods.size(); ++i) {
    out << (i ? ", " : "") << to_string(sc.methods[i]);
  }
  out << "\ntrials = " << sc.trials << "\nseed = " << sc.seed << "\nthreads = " << sc.threads
      << "\n";
  if (!sc.output.empty()) out << "output = " << sc.output << "\n";
  return out.str();
}

}  // namespace fdrelay
