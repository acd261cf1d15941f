#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fdrelay/antenna_selection.hpp"
#include "fdrelay/precoding.hpp"

namespace fdrelay {

/// Every link strategy the toolkit evaluates: the two ZF precoding designs
/// and the four antenna-selection rules.
enum class Scheme { kReceiveZf, kTransmitZf, kOp, kMm, kPr, kLi };

inline constexpr Scheme kAllSchemes[] = {Scheme::kReceiveZf, Scheme::kTransmitZf,
                                         Scheme::kOp,        Scheme::kMm,
                                         Scheme::kPr,        Scheme::kLi};

std::string to_string(Scheme scheme);
/// Accepts the names produced by to_string (case-sensitive).
std::optional<Scheme> parse_scheme(std::string_view name);

bool is_precoding(Scheme scheme);
ZfDesign to_design(Scheme scheme);
AsScheme to_as_scheme(Scheme scheme);
Scheme from_design(ZfDesign design);
Scheme from_as_scheme(AsScheme scheme);

enum class Method { kExact, kAsymptotic, kMonteCarlo };

std::string to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Throws UnsupportedConfigError when `scheme` cannot run on the antenna
/// configuration (receive ZF needs M_R > 1, transmit ZF needs M_T > 1).
void check_supported(Scheme scheme, const SystemConfig& config);

}  // namespace fdrelay
