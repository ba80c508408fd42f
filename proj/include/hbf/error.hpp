#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hbf {

enum class ErrorCode {
  InvalidFieldSpec,
  DegreeUnsupported,
  NonInvertibleZero,
  InvalidSubfieldDegree,
  OrderNotDividing,
  NotInSubfield,
  ContextMismatch,
  DivisionByZeroPoly,
  PatternMismatch,
  InvarianceViolated,
  UnsupportedN,
  NonIntegralLambda,
  PreconditionViolated,
  CrossCheckFailure,
  ParseError,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidFieldSpec: return "InvalidFieldSpec";
    case ErrorCode::DegreeUnsupported: return "DegreeUnsupported";
    case ErrorCode::NonInvertibleZero: return "NonInvertibleZero";
    case ErrorCode::InvalidSubfieldDegree: return "InvalidSubfieldDegree";
    case ErrorCode::OrderNotDividing: return "OrderNotDividing";
    case ErrorCode::NotInSubfield: return "NotInSubfield";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::InvarianceViolated: return "InvarianceViolated";
    case ErrorCode::UnsupportedN: return "UnsupportedN";
    case ErrorCode::NonIntegralLambda: return "NonIntegralLambda";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hbf
