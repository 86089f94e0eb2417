#pragma once

#include <stdexcept>
#include <string>

namespace sympgeo {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed grids, mismatched operands, bad bases or solver settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A computation produced non-finite values, failed to converge, or left
/// the regime where its discretization is meaningful.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, double time = 0.0)
      : Error(what), time_(time) {}

  /// Simulation time at which the failure was detected (0 when not applicable).
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// File-system failures while writing artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sympgeo
