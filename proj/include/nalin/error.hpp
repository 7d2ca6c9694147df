#pragma once

#include <stdexcept>
#include <string>

namespace nalin {

enum class ErrorCode {
  InvalidGroup,
  UnknownGroup,
  NotNormal,
  NonAbelian,
  Unsupported,
  InvariantFailure,
  NonIntegerMultiplicity,
  HypothesisViolated,
  NoPartner,
  BudgetExceeded,
  MeanNotZero,
  NotFolded,
  DimOne,
  TooManyDistinctVars,
  Parse,
  OutOfRange,
  ShapeMismatch,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every domain failure in the library is reported as an Error carrying a code
/// that callers (and the CLI exit-code mapping) can switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nalin
