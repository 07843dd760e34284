#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ROTOR_DEFINE_ERROR(Name)             \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  }

ROTOR_DEFINE_ERROR(NewtonDivergence);
ROTOR_DEFINE_ERROR(NotIsotopicToIdentity);
ROTOR_DEFINE_ERROR(NotUnimodular);
ROTOR_DEFINE_ERROR(IntegerOverflow);
ROTOR_DEFINE_ERROR(NotNilpotent);
ROTOR_DEFINE_ERROR(ConditionStarStarViolated);
ROTOR_DEFINE_ERROR(DefectExceeded);
ROTOR_DEFINE_ERROR(NonIsolated);
ROTOR_DEFINE_ERROR(AmbiguousWinding);
ROTOR_DEFINE_ERROR(NotSigmaEquivariant);
ROTOR_DEFINE_ERROR(BoundaryViolation);
ROTOR_DEFINE_ERROR(InvalidArgument);

#undef ROTOR_DEFINE_ERROR

/// Scenario validation failure, carrying the offending line and field.
class ConfigError : public Error {
 public:
  ConfigError(int line, std::string field, const std::string& message)
      : Error("ConfigError: line " + std::to_string(line) + ", " + field + ": " + message),
        line_(line),
        field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace rotor
