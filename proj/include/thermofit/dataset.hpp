#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thermofit/error.hpp"

namespace thermofit {

inline constexpr double kMinTemperatureC = -273.15;
inline constexpr double kMaxTemperatureC = 10000.0;

struct Sample {
  double time_s = 0.0;
  double temperature_c = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// A labeled temperature/time series recorded under one power load.
///
/// A Series produced by parse_csv() or builtin_table3() always satisfies
/// the invariants checked by validate(): non-empty, strictly increasing
/// time, finite values inside the temperature sanity bound.
struct Series {
  std::string label;
  std::optional<double> power_w;
  /// Free-form fan setting; recorded but never used in any computation.
  std::optional<std::string> fan_speed;
  std::vector<Sample> samples;

  friend bool operator==(const Series&, const Series&) = default;
};

struct Violation {
  std::size_t index = 0;
  ErrorCode rule = ErrorCode::kOutOfRange;
  std::string detail;
};

/// Parses the `time_s,temperature_c` CSV format.
///
/// Lines starting with `#` are comments. Before the header, the comments
/// `# label: <text>`, `# power_w: <float>` and `# fan_speed: <text>` set
/// series metadata. Blank lines are ignored. Throws Error with one of
/// kMalformedRow, kNonIncreasingTime, kEmptySeries, kOutOfRange.
Series parse_csv(std::string_view text);

/// Inverse of parse_csv(); numbers use the shortest round-trip form.
std::string to_csv(const Series& series);

/// Returns every invariant violation; empty iff the series is valid.
std::vector<Violation> validate(const Series& series);

/// The idle (85 W) and full (150 W) heat-sink series of the case study.
/// The "Initial value" row is placed at t = 1 s.
std::pair<Series, Series> builtin_table3();

}  // namespace thermofit
