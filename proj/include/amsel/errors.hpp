#pragma once

#include <stdexcept>
#include <string>

namespace amsel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidCoin : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The product of the coin CDFs would exceed the polynomial degree cap.
/// Callers fall back to quadrature.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class NoAffordableCoin : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class MalformedTree : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A policy declined to choose while an affordable coin remained.
class PolicyError : public Error {
 public:
  using Error::Error;
};

/// Configuration problem attributed to a named field (e.g. `prior.3`).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace amsel
