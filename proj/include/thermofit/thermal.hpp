#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thermofit {

/// Package thermal resistances in degrees C per watt.
struct PackageEntry {
  std::string name;
  double theta_jc = 0.0;  // junction to case
  double theta_ja = 0.0;  // junction to air
};

struct HeatSinkEntry {
  std::string name;
  double theta_sa = 0.0;  // sink to ambient
};

struct ProcessorSpec {
  std::string name;
  double t_j_max_c = 0.0;
  std::string note;
};

std::vector<PackageEntry> builtin_packages();
std::vector<HeatSinkEntry> builtin_heatsinks();

/// The processor of the heat-sink case study. Its 63.4 figure is quoted
/// without units or role; it is kept here as a maximum temperature for
/// examples and never used as a silent default.
ProcessorSpec builtin_processor();

/// T_j = T_ambient + P * theta_total.
double junction_temperature(double power_w, double theta_total, double t_ambient_c);

/// Largest dissipation keeping T_j at or below t_j_max_c.
double max_power(double t_j_max_c, double theta_total, double t_ambient_c);

/// Picks the adequate sink with the largest theta_sa (the smallest, cheapest
/// part that still keeps T_j <= t_j_max_c through theta_jc + theta_sa).
/// Ties keep catalog order. Returns nullopt when nothing qualifies.
std::optional<HeatSinkEntry> select_heatsink(std::span<const HeatSinkEntry> catalog,
                                             double power_w, double t_j_max_c,
                                             double t_ambient_c, double theta_jc);

std::string packages_csv(std::span<const PackageEntry> packages);
std::string heatsinks_csv(std::span<const HeatSinkEntry> sinks);

}  // namespace thermofit
