// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/error.hpp"

namespace dpbw {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooFewPools: return "TooFewPools";
    case ErrorCode::kNonPositivePower: return "NonPositivePower";
    case ErrorCode::kPowerBudgetExceeded: return "PowerBudgetExceeded";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNegativeInfiltration: return "NegativeInfiltration";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kSelfInfiltration: return "SelfInfiltration";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kPreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNoCertifiedEquilibrium: return "NoCertifiedEquilibrium";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace dpbw
