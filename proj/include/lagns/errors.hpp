#pragma once

#include <stdexcept>
#include <string>

namespace lagns {

/// Argument outside the mathematical domain of an operation (v <= 0, p < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Initial profiles violate positivity at some sample point.
class InvalidInitialData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Initial profiles disagree with the far-field state or the wall conditions.
class IncompatibleData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A tridiagonal system handed to the Thomas sweep is not diagonally dominant.
class SolverBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration text. `line` is 0 for validation errors not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace lagns
