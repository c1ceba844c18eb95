#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qcp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Basis dimension or site count beyond a hard or configured limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Inconsistent, out-of-range or non-finite model parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Operation requires a unit-norm state.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Integrator failure, non-finite amplitudes, unresolved gap closing.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Observation window in which the domain picture is not applicable.
class InvalidWindowError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration failed validation. field() is the dotted key
// path of the offending entry, e.g. "detuning.delta_offset".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace qcp
