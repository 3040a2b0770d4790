#pragma once

#include <stdexcept>
#include <string>

namespace schmidt {

/// Precondition violated by the caller (zero input, dimension mismatch, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A form family is not in the position an operation requires.
class PositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid campaign configuration; the message carries the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schmidt
