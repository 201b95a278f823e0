#pragma once

#include <stdexcept>
#include <string>

namespace impuq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (out-of-range abscissa,
/// dimension mismatch, wrong bundle kind).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Probability intervals whose credal set is empty.
class InfeasibleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Problem too large for an exact combinatorial routine.
class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed input file. Carries the offending line when known (0 otherwise).
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Iterative routine hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace impuq
