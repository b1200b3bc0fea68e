#pragma once

#include <stdexcept>
#include <string>

namespace torwalk {

// Inputs that violate a theorem hypothesis (asymmetric profile, missing
// covariance, degenerate walk, ...). CLI exit code 1.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine could not reach its accuracy target (series too
// slowly convergent, quadrature failure, fit window too thin). CLI exit
// code 2.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration or arguments. CLI exit code 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace torwalk
