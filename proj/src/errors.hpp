#pragma once

#include <stdexcept>
#include <string>

namespace rrd {

// Bad dimensions, invalid parameter combinations, refused configurations.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Failures of the numerical machinery itself.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Bracket expansion hit its cap while the objective was still increasing.
class UnboundedMaximumError : public NumericalError {
 public:
  explicit UnboundedMaximumError(const std::string& what)
      : NumericalError(what) {}
};

class SingularMatrixError : public NumericalError {
 public:
  explicit SingularMatrixError(const std::string& what)
      : NumericalError(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rrd
