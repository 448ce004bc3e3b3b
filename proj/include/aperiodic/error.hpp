// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aperiodic {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  BoundedProfile,
  OutOfBounds,
  UnequalRadii,
  COutOfRange,
  NoTailBound,
  BudgetExceeded,
  Exhausted,
  CertificateInvalid,
  DepthExceeded,
  PrecisionExhausted,
  WindowTooSmall,
  Condition43Violated,
  SearchBudgetExceeded,
  ParameterOrderViolated,
  Infeasible,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::BoundedProfile: return "BoundedProfile";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::UnequalRadii: return "UnequalRadii";
    case ErrorCode::COutOfRange: return "COutOfRange";
    case ErrorCode::NoTailBound: return "NoTailBound";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::CertificateInvalid: return "CertificateInvalid";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::Condition43Violated: return "Condition43Violated";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::ParameterOrderViolated: return "ParameterOrderViolated";
    case ErrorCode::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace aperiodic
