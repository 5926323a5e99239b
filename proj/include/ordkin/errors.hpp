#pragma once

#include <stdexcept>
#include <string>

namespace ordkin {

/// Invalid user-supplied parameters: bad dimensions, out-of-range values,
/// incompatible rule/manifold pairs.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Contact geometry for which the impulse denominator is not positive.
class DegenerateGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ensemble for which a derived quantity is undefined (e.g. zero mean
/// director, zero relative velocity).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quantity requested outside the regime where it is defined.
class NotApplicableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ordkin
