#pragma once

#include <stdexcept>
#include <string>

namespace nonrecip {

/// Raised when inputs violate a documented precondition (bad dimensions,
/// negative rates, non-commuting couplings, malformed configuration).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a trustworthy result: unstable
/// drift, degenerate steady states, positivity loss, truncation leakage.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nonrecip
