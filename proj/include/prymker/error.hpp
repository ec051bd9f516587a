#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prymker {

/// Every failure the library reports carries one of these codes.  The CLI
/// maps them onto exit codes (input errors -> 2, identity violations -> 3).
enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  UnsupportedField,
  ParseError,
  SchemaError,
  InsufficientPrecision,
  InvalidValuation,
  NotAnNthPower,
  NonDivisibleValuation,
  SingularJacobian,
  DimensionMismatch,
  NotInMinusSpace,
  PreconditionFailed,
  IdentityViolated,
  ConsistencyViolated,
  EquivalenceViolated,
  FieldTooSmall,
  UnsupportedRamification,
  UnsupportedOrder,
  PrecisionUnreachable,
  PointsOutsideField,
  InvalidCurve,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// True for the codes that signal a violated mathematical identity rather
/// than bad input.
bool is_identity_violation(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace prymker
