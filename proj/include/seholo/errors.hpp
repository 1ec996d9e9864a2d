#pragma once

#include <stdexcept>
#include <string>

namespace seholo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not match what an operation requires.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A physical invariant (Hermiticity, unit trace, positivity, ...) failed.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Bad input to a constructor or operation (non-Hermitian generator,
/// unnormalized pulse, illegal level pair, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical routine did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration; `line` is 0 when the source was not a file.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace seholo
