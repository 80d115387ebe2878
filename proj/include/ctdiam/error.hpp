// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctdiam {

enum class ErrorCode {
  SimplexNotContained,
  Unbounded,
  NonpositiveOffset,
  DimensionMismatch,
  EmptySpec,
  WeightLengthMismatch,
  SolverFailure,
  DegenerateWeight,
  ThetaNotInterior,
  TooManyPoints,
  InsufficientSupport,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this exception; `code()`
/// identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SimplexNotContained: return "SimplexNotContained";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NonpositiveOffset: return "NonpositiveOffset";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySpec: return "EmptySpec";
    case ErrorCode::WeightLengthMismatch: return "WeightLengthMismatch";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::ThetaNotInterior: return "ThetaNotInterior";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::InsufficientSupport: return "InsufficientSupport";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ctdiam
