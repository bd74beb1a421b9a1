#pragma once

#include <stdexcept>
#include <string>

namespace mixlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad input: dimension mismatch, parameter outside its domain, invalid model.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// The computation ran but produced something unusable (NaN, failed
/// tolerance, no threshold crossing).
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

/// Requested operation has no meaning for this model (e.g. a closed-form
/// inviscid solution for a model that has none).
class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& msg) : Error(msg) {}
};

}  // namespace mixlab
