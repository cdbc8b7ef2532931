#pragma once

#include <stdexcept>
#include <string>

namespace melnikov {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  Success = 0,
  Config = 2,
  NumericAccuracy = 3,
  Certification = 4,
  SimulationStructure = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::Config, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ExitCode::Config, what) {}
};

/// The orbit meets the switching curve tangentially (or a ratio denominator vanishes).
class TangencyError : public Error {
 public:
  explicit TangencyError(const std::string& what) : Error(ExitCode::NumericAccuracy, what) {}
};

/// Adaptive quadrature exhausted its panel budget.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(ExitCode::NumericAccuracy, what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what) : Error(ExitCode::Certification, what) {}
};

class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& what) : Error(ExitCode::Certification, what) {}
};

class RealizationError : public Error {
 public:
  explicit RealizationError(const std::string& what) : Error(ExitCode::Certification, what) {}
};

/// Timeouts, escapes, event-location failures, sliding and changed crossing structure.
class SimulationError : public Error {
 public:
  enum class Kind { Timeout, Escape, EventLocation, Sliding, StructureChanged };
  SimulationError(Kind kind, const std::string& what)
      : Error(ExitCode::SimulationStructure, what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace melnikov
