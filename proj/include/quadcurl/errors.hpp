#pragma once

#include <stdexcept>
#include <string>

namespace quadcurl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// (family, k, shape) outside the implemented set.
class UnsupportedCombination : public Error {
 public:
  using Error::Error;
};

/// Singular DOF/basis matrix during dualization.
class UnisolvenceFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double residual) : Error(what), residual_(residual) {}
  [[nodiscard]] double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace quadcurl
