#pragma once

#include <stdexcept>
#include <string>

namespace fdrelay {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch or a square/Hermitian requirement violated.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Scheme requested for an antenna configuration it does not support
// (e.g. receive ZF with a single relay receive antenna).
class UnsupportedConfigError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

// Numerical integration did not reach its tolerance. Carries the best
// estimate and its error bound so callers can decide what to do.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace fdrelay
