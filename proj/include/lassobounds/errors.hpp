#pragma once

#include <stdexcept>
#include <string>

namespace lassobounds {

/// Raised when two operands disagree on n or p.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a mathematical precondition of an operation does not hold,
/// e.g. a budget K smaller than the l1 norm of the true coefficients.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lassobounds
