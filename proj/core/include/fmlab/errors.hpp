#ifndef FMLAB_ERRORS_HPP
#define FMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fmlab {

/// Invalid configuration or malformed request (bad schema, bad parameter set).
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Mismatched grids or vector dimensions between operands.
class ShapeError : public std::invalid_argument {
public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Numerical failure (no convergence, non-invertible map on the needed range).
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Trajectory left the finite range; carries the first bad time.
class DivergenceError : public NumericError {
public:
  DivergenceError(const std::string& what, double time)
      : NumericError(what + " at t=" + std::to_string(time)), time_(time) {}
  double time() const { return time_; }

private:
  double time_;
};

}  // namespace fmlab

#endif  // FMLAB_ERRORS_HPP
