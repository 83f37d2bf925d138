#include "thermofit/error.hpp"

namespace thermofit {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kMalformedRow: return "E_MALFORMED_ROW";
    case ErrorCode::kNonIncreasingTime: return "E_NON_INCREASING_TIME";
    case ErrorCode::kEmptySeries: return "E_EMPTY_SERIES";
    case ErrorCode::kOutOfRange: return "E_OUT_OF_RANGE";
    case ErrorCode::kEmptyInput: return "E_EMPTY_INPUT";
    case ErrorCode::kInsufficientData: return "E_INSUFFICIENT_DATA";
    case ErrorCode::kDegenerateVariance: return "E_DEGENERATE_VARIANCE";
    case ErrorCode::kLengthMismatch: return "E_LENGTH_MISMATCH";
    case ErrorCode::kNonPositiveWeight: return "E_NON_POSITIVE_WEIGHT";
    case ErrorCode::kSingularNormalMatrix: return "E_SINGULAR_NORMAL_MATRIX";
    case ErrorCode::kInvalidInit: return "E_INVALID_INIT";
    case ErrorCode::kNoConvergence: return "E_NO_CONVERGENCE";
    case ErrorCode::kNonPositiveResistance: return "E_NON_POSITIVE_RESISTANCE";
    case ErrorCode::kNegativePower: return "E_NEGATIVE_POWER";
    case ErrorCode::kInvertedTemperatures: return "E_INVERTED_TEMPERATURES";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kUsage: return "E_USAGE";
  }
  return "E_UNKNOWN";
}

}  // namespace thermofit
