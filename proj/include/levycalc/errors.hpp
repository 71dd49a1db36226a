#pragma once

#include <stdexcept>
#include <string>

namespace levycalc {

// Document / argument problems (CLI exit code 2).
class DocumentError : public std::runtime_error {
 public:
  explicit DocumentError(const std::string& what) : std::runtime_error(what) {}
};

// A constructed object violates a model invariant (CLI exit code 3),
// e.g. a Levy measure failing the integrability check or a seed without
// the log-moment required by the exponential-horizon map.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric evaluation failed to reach its tolerance (CLI exit code 4).
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double errorEstimate)
      : std::runtime_error(what), errorEstimate(errorEstimate) {}
  double errorEstimate;
};

class DifferentiationError : public std::runtime_error {
 public:
  DifferentiationError(const std::string& what, double errorEstimate)
      : std::runtime_error(what), errorEstimate(errorEstimate) {}
  double errorEstimate;
};

class UnsupportedSeedError : public std::runtime_error {
 public:
  explicit UnsupportedSeedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace levycalc
