#pragma once

#include <stdexcept>
#include <string>

namespace crancost {

/// Machine-readable error category; the CLI maps each to its own exit code.
enum class ErrorCategory { kParameter, kAssignment, kNumerical, kDomain, kConfig, kEstimation, kIo };

const char* category_name(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Invalid input value (negative intensity, probability outside [0,1], ...).
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorCategory::kParameter, what) {}
};

/// Nearest-neighbour assignment into an empty upper layer.
class AssignmentError : public Error {
 public:
  explicit AssignmentError(const std::string& what) : Error(ErrorCategory::kAssignment, what) {}
};

/// Quadrature failed to reach tolerance. Carries the achieved error estimate.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double error_estimate)
      : Error(ErrorCategory::kNumerical, what), error_estimate_(error_estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

/// Input outside the model's domain (SNR below capacity, sampler below every MCS threshold).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::kDomain, what) {}
};

/// Config parse failure or constraint violation; names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(ErrorCategory::kConfig, key + ": " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class EstimationError : public Error {
 public:
  explicit EstimationError(const std::string& what) : Error(ErrorCategory::kEstimation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::kIo, what) {}
};

}  // namespace crancost
