#pragma once

#include <stdexcept>
#include <string>

namespace addfn {

/// Argument outside the mathematical domain of an operation (limit < 2, u <= 0, zero variance).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds the configured sieve / memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (short grid, undersized aux table, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unparseable function text or unknown builtin name.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace addfn
