#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermofit {

enum class ErrorCode {
  // dataset
  kMalformedRow,
  kNonIncreasingTime,
  kEmptySeries,
  kOutOfRange,
  // regression
  kEmptyInput,
  kInsufficientData,
  kDegenerateVariance,
  kLengthMismatch,
  kNonPositiveWeight,
  // nonlinear
  kSingularNormalMatrix,
  kInvalidInit,
  kNoConvergence,
  // thermal
  kNonPositiveResistance,
  kNegativePower,
  kInvertedTemperatures,
  // front end
  kIo,
  kUsage,
};

/// Stable, greppable name such as "E_DEGENERATE_VARIANCE".
std::string_view code_name(ErrorCode code) noexcept;

/// Every library failure is reported as an Error carrying one ErrorCode.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thermofit
