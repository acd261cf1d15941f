#include "fdrelay/scheme.hpp"

#include "fdrelay/errors.hpp"

namespace fdrelay {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kReceiveZf: return "receive_zf";
    case Scheme::kTransmitZf: return "transmit_zf";
    case Scheme::kOp: return "OP";
    case Scheme::kMm: return "MM";
    case Scheme::kPr: return "PR";
    case Scheme::kLi: return "LI";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

bool is_precoding(Scheme scheme) {
  return scheme == Scheme::kReceiveZf || scheme == Scheme::kTransmitZf;
}

ZfDesign to_design(Scheme scheme) {
  if (!is_precoding(scheme)) throw DomainError("not a precoding scheme: " + to_string(scheme));
  return scheme == Scheme::kReceiveZf ? ZfDesign::kReceive : ZfDesign::kTransmit;
}

AsScheme to_as_scheme(Scheme scheme) {
  switch (scheme) {
    case Scheme::kOp: return AsScheme::kOptimal;
    case Scheme::kMm: return AsScheme::kMaxMax;
    case Scheme::kPr: return AsScheme::kPartial;
    case Scheme::kLi: return AsScheme::kLoopInterference;
    default: throw DomainError("not an antenna-selection scheme: " + to_string(scheme));
  }
}

Scheme from_design(ZfDesign design) {
  return design == ZfDesign::kReceive ? Scheme::kReceiveZf : Scheme::kTransmitZf;
}

Scheme from_as_scheme(AsScheme scheme) {
  switch (scheme) {
    case AsScheme::kOptimal: return Scheme::kOp;
    case AsScheme::kMaxMax: return Scheme::kMm;
    case AsScheme::kPartial: return Scheme::kPr;
    case AsScheme::kLoopInterference: return Scheme::kLi;
  }
  return Scheme::kOp;
}

std::string to_string(Method method) {
  switch (method) {
    case Method::kExact: return "exact";
    case Method::kAsymptotic: return "asymptotic";
    case Method::kMonteCarlo: return "montecarlo";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::kExact, Method::kAsymptotic, Method::kMonteCarlo}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void check_supported(Scheme scheme, const SystemConfig& config) {
  if (scheme == Scheme::kReceiveZf && config.m_r < 2) {
    throw UnsupportedConfigError("receive_zf requires M_R > 1");
  }
  if (scheme == Scheme::kTransmitZf && config.m_t < 2) {
    throw UnsupportedConfigError("transmit_zf requires M_T > 1");
  }
}

}  // namespace fdrelay
