#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdrelay/antenna_selection.hpp"
#include "fdrelay/cli.hpp"
#include "fdrelay/errors.hpp"
#include "fdrelay/montecarlo.hpp"
#include "fdrelay/outage.hpp"
#include "fdrelay/precoding.hpp"
#include "fdrelay/scenario.hpp"
#include "fdrelay/wishart.hpp"

namespace py = pybind11;
using namespace fdrelay;

namespace {

Scheme scheme_arg(const std::string& name) {
  const auto s = parse_scheme(name);
  if (!s) throw DomainError("unknown scheme '" + name + "'");
  return *s;
}

double threshold_or(const SystemConfig& c, std::optional<double> gamma_t) {
  return gamma_t ? *gamma_t : c.threshold();
}

py::tuple fraction(const Fraction& f) { return py::make_tuple(f.num, f.den); }

py::dict solution_dict(const PrecodingSolution& s) {
  py::dict d;
  d["t"] = s.t;
  d["r"] = s.r;
  d["w_r"] = s.w_r;
  d["w_t"] = s.w_t;
  d["w"] = s.w;
  d["gamma"] = s.gamma;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fdrelay, m) {
  m.doc() = "Outage analysis of full-duplex MIMO AF relays";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UnsupportedConfigError>(m, "UnsupportedConfigError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init([](int n_t, int m_r, int m_t, int n_r, double c_sr, double c_rd, double c_rr,
                       double p_s_db, std::optional<double> alpha, std::optional<double> p_r_db,
                       double target_rate) {
             SystemConfig c;
             c.n_t = n_t, c.m_r = m_r, c.m_t = m_t, c.n_r = n_r;
             c.c_sr = c_sr, c.c_rd = c_rd, c.c_rr = c_rr;
             c.p_s = db_to_linear(p_s_db);
             c.target_rate = target_rate;
             if (alpha && p_r_db) throw DomainError("give either alpha or p_r_db, not both");
             c.relay = p_r_db ? RelayPower::fixed(db_to_linear(*p_r_db))
                              : RelayPower::exponent(alpha.value_or(1.0));
             c.validate();
             return c;
           }),
           py::kw_only(), py::arg("n_t"), py::arg("m_r"), py::arg("m_t"), py::arg("n_r"),
           py::arg("c_sr") = 1.0, py::arg("c_rd") = 1.0, py::arg("c_rr") = 0.0,
           py::arg("p_s_db") = 0.0, py::arg("alpha") = py::none(), py::arg("p_r_db") = py::none(),
           py::arg("target_rate") = 2.0)
      .def_readwrite("n_t", &SystemConfig::n_t)
      .def_readwrite("m_r", &SystemConfig::m_r)
      .def_readwrite("m_t", &SystemConfig::m_t)
      .def_readwrite("n_r", &SystemConfig::n_r)
      .def_readwrite("c_sr", &SystemConfig::c_sr)
      .def_readwrite("c_rd", &SystemConfig::c_rd)
      .def_readwrite("c_rr", &SystemConfig::c_rr)
      .def_readwrite("p_s", &SystemConfig::p_s)
      .def_readwrite("target_rate", &SystemConfig::target_rate)
      .def_property_readonly("p_r", &SystemConfig::relay_power)
      .def("threshold", &SystemConfig::threshold)
      .def("validate", &SystemConfig::validate)
      .def("with_power_db", [](SystemConfig c, double db) {
        c.p_s = db_to_linear(db);
        return c;
      })
      .def("__repr__", [](const SystemConfig& c) {
        std::ostringstream s;
        s << "SystemConfig(" << c.n_t << "," << c.m_r << "," << c.m_t << "," << c.n_r
          << ", c_rr=" << c.c_rr << ", p_s=" << c.p_s << ", p_r=" << c.relay_power() << ")";
        return s.str();
      });

  m.def("schemes", [] {
    std::vector<std::string> out;
    for (Scheme s : kAllSchemes) out.push_back(to_string(s));
    return out;
  });

  m.def(
      "outage_exact",
      [](const std::string& scheme, const SystemConfig& c, std::optional<double> gamma_t) {
        return outage_exact(scheme_arg(scheme), c, threshold_or(c, gamma_t));
      },
      py::arg("scheme"), py::arg("config"), py::arg("gamma_t") = py::none());
  m.def(
      "outage_asymptotic",
      [](const std::string& scheme, const SystemConfig& c, std::optional<double> gamma_t) {
        return asymptotic_outage(scheme_arg(scheme), c, threshold_or(c, gamma_t));
      },
      py::arg("scheme"), py::arg("config"), py::arg("gamma_t") = py::none());
  m.def(
      "op_bounds",
      [](const SystemConfig& c, std::optional<double> gamma_t) {
        const OutageBounds b = op_as_asymptotic_bounds(c, threshold_or(c, gamma_t));
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("config"), py::arg("gamma_t") = py::none());

  m.def(
      "simulate",
      [](const std::string& scheme, const SystemConfig& c, const std::vector<double>& p_s_db,
         std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        std::vector<OutageEstimate> est;
        {
          py::gil_scoped_release release;
          est = estimate_outage_curve(scheme_arg(scheme), c, p_s_db, c.threshold(), trials, seed,
                                      threads);
        }
        py::list out;
        for (const auto& e : est) out.append(py::make_tuple(e.p_hat, e.stderr_, e.events));
        return out;
      },
      py::arg("scheme"), py::arg("config"), py::arg("p_s_db"), py::arg("trials") = 1'000'000,
      py::arg("seed") = 1, py::arg("threads") = 0);

  m.def(
      "optimal_alpha",
      [](const std::string& scheme, const SystemConfig& c) {
        return fraction(optimal_alpha(to_as_scheme(scheme_arg(scheme)), c));
      },
      py::arg("scheme"), py::arg("config"));
  m.def(
      "diversity_order",
      [](const std::string& scheme, const SystemConfig& c) {
        return fraction(diversity_order(scheme_arg(scheme), c));
      },
      py::arg("scheme"), py::arg("config"));

  m.def(
      "sample_channels",
      [](const SystemConfig& c, std::uint64_t seed, std::uint64_t trial) {
        const ChannelRealization ch = sample_channels(c, seed, trial);
        return py::make_tuple(ch.h_sr, ch.h_rd, ch.h_rr);
      },
      py::arg("config"), py::arg("seed"), py::arg("trial"));
  m.def(
      "zf_precoder",
      [](const std::string& design, const ComplexMatrix& h_sr, const ComplexMatrix& h_rd,
         const ComplexMatrix& h_rr, double p_s, double p_r) {
        const Scheme s = scheme_arg(design);
        if (!is_precoding(s)) throw DomainError("zf_precoder needs receive_zf or transmit_zf");
        return solution_dict(solve_zf(to_design(s), {h_sr, h_rd, h_rr}, p_s, p_r));
      },
      py::arg("design"), py::arg("h_sr"), py::arg("h_rd"), py::arg("h_rr"), py::arg("p_s"),
      py::arg("p_r"));

  m.def(
      "wishart_maxeig_cdf",
      [](int mm, int n, double x, double scale) {
        return wishart_maxeig_expansion(mm, n, scale).cdf(x);
      },
      py::arg("m"), py::arg("n"), py::arg("x"), py::arg("scale") = 1.0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> storage{"fdrelay"};
        storage.insert(storage.end(), args.begin(), args.end());
        std::vector<char*> argv;
        for (auto& s : storage) argv.push_back(s.data());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
