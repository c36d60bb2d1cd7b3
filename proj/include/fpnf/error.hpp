#pragma once

#include <stdexcept>
#include <string>

namespace fpnf {

enum class ErrorCode {
  // Malformed input.
  MalformedDocument,
  // Precondition violations.
  ZeroConstantTerm,
  NonzeroConstantSubstituent,
  OrderExceeded,
  InvalidMap,
  NotNormalBelow,
  NotSemiHomogeneous,
  NotNormal,
  PreconditionD1,
  PreconditionOriginSlope,
  PreconditionD1D2,
  PreconditionD1D2D3,
  FlowNotWeightRaising,
  // Internal consistency failures.
  UnsolvableDefect,
  ResidualNonzero,
  MethodMismatch,
  Internal,
};

enum class ErrorCategory { Input, Precondition, Internal };

constexpr ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument:
      return ErrorCategory::Input;
    case ErrorCode::UnsolvableDefect:
    case ErrorCode::ResidualNonzero:
    case ErrorCode::MethodMismatch:
    case ErrorCode::Internal:
      return ErrorCategory::Internal;
    default:
      return ErrorCategory::Precondition;
  }
}

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fpnf
