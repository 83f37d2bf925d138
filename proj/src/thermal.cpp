#include "thermofit/thermal.hpp"

#include <cmath>
#include <fmt/format.h>

#include "thermofit/error.hpp"

namespace thermofit {
namespace {

void check_resistance(double theta) {
  if (!std::isfinite(theta) || theta <= 0.0) {
    throw Error(ErrorCode::kNonPositiveResistance,
                fmt::format("thermal resistance {} must be positive", theta));
  }
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kOutOfRange, fmt::format("{} must be finite", what));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::vector<PackageEntry> builtin_packages() {
  return {
      {"TO 3", 5, 60},      {"TO-39", 12, 140},   {"TO-220", 3, 62.5},
      {"TO-220FB", 3, 50},  {"TO-223", 30.6, 53}, {"TO-252", 5, 92},
      {"TO-263", 23.5, 50}, {"D2PAK", 4, 35},
  };
}

std::vector<HeatSinkEntry> builtin_heatsinks() {
  return {
      {"1 sq inch of 1 ounce PCB copper", 43},
      {"0.5 sq inch of 1 ounce PCB copper", 50},
      {"0.3 sq inch of 1 ounce PCB copper", 56},
      {"Aavid Thermally, SMT heat sink", 14},
  };
}

ProcessorSpec builtin_processor() {
  return {"Intel Pentium D Processor 915", 63.4,
          "quoted as a 63.4 C thermal coefficient without units or role; "
          "interpreted as the maximum allowed temperature"};
}

double junction_temperature(double power_w, double theta_total, double t_ambient_c) {
  check_finite(power_w, "power");
  check_finite(t_ambient_c, "ambient temperature");
  if (power_w < 0.0) {
    throw Error(ErrorCode::kNegativePower, fmt::format("power {} W is negative", power_w));
  }
  check_resistance(theta_total);
  return t_ambient_c + power_w * theta_total;
}

double max_power(double t_j_max_c, double theta_total, double t_ambient_c) {
  check_finite(t_j_max_c, "maximum junction temperature");
  check_finite(t_ambient_c, "ambient temperature");
  check_resistance(theta_total);
  if (!(t_j_max_c > t_ambient_c)) {
    throw Error(ErrorCode::kInvertedTemperatures,
                fmt::format("maximum temperature {} is not above ambient {}", t_j_max_c,
                            t_ambient_c));
  }
  return (t_j_max_c - t_ambient_c) / theta_total;
}

std::optional<HeatSinkEntry> select_heatsink(std::span<const HeatSinkEntry> catalog,
                                             double power_w, double t_j_max_c,
                                             double t_ambient_c, double theta_jc) {
  if (catalog.empty()) throw Error(ErrorCode::kEmptyInput, "heat-sink catalog is empty");
  check_resistance(theta_jc);
  check_finite(t_j_max_c, "maximum junction temperature");

  std::optional<HeatSinkEntry> best;
  for (const auto& entry : catalog) {
    const double tj = junction_temperature(power_w, theta_jc + entry.theta_sa, t_ambient_c);
    if (tj <= t_j_max_c && (!best || entry.theta_sa > best->theta_sa)) best = entry;
  }
  return best;
}

std::string packages_csv(std::span<const PackageEntry> packages) {
  std::string out = "name,theta_jc,theta_ja\n";
  for (const auto& p : packages) {
    out += fmt::format("{},{},{}\n", csv_field(p.name), p.theta_jc, p.theta_ja);
  }
  return out;
}

std::string heatsinks_csv(std::span<const HeatSinkEntry> sinks) {
  std::string out = "name,theta_sa\n";
  for (const auto& s : sinks) out += fmt::format("{},{}\n", csv_field(s.name), s.theta_sa);
  return out;
}

}  // namespace thermofit
