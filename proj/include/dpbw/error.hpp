// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpbw {

enum class ErrorCode {
  kTooFewPools,
  kNonPositivePower,
  kPowerBudgetExceeded,
  kAlphaOutOfRange,
  kDimensionMismatch,
  kNegativeInfiltration,
  kBudgetExceeded,
  kSelfInfiltration,
  kDegenerateDenominator,
  kSingularSystem,
  kResidualTooLarge,
  kDomainError,
  kPreconditionUnmet,
  kNoConvergence,
  kNoCertifiedEquilibrium,
  kInvalidRange,
  kParseError,
  kValidationError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpbw
