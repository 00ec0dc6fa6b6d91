#pragma once

#include <stdexcept>
#include <string>

namespace bpsma {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent parameters (degenerate spans, non-positive sizes, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (e.g. xi outside [0,1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Stroke beyond the valid range of the pennate kinematics.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Vanishing denominator in the quasi-static stroke relation.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Failure of the time integration (non-convergent inner iteration, invalid state).
class SimulationError : public Error {
 public:
  using Error::Error;
};

/// Thermogram or failure-mode analysis could not be carried out.
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Parse errors in configuration, drive strings and CSV inputs.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Missing, unknown or dimensionally wrong unit on a configuration value.
class UnitError : public Error {
 public:
  using Error::Error;
};

/// File system failures, always carrying the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bpsma
