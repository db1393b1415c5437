#pragma once

#include <stdexcept>
#include <string>

namespace qmeta {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent user input. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A numerical precondition did not hold (CFL, norm, energy window, ...).
// CLI exit code 3.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InsufficientPeriodicity : public PreconditionError {
 public:
  explicit InsufficientPeriodicity(const std::string& what)
      : PreconditionError("insufficient periodicity: " + what) {}
};

}  // namespace qmeta
