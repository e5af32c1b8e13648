#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maskobs {

enum class ErrorCode {
  NotHermitian,
  NumericalFailure,
  DimensionMismatch,
  NotNormalized,
  NotOrthonormal,
  InconsistentDimensions,
  NotUnitTrace,
  InvalidChannel,
  InvalidState,
  NotUnitary,
  NotMaskable,
  NotUnitVector,
  EmptyDisk,
  DegenerateState,
  DegenerateLine,
  Degenerate,
  Inconsistent,
  EmptySet,
  IdenticalPoints,
  NoAffineSolution,
  BadSpectrum,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can classify it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maskobs
