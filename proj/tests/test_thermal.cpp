#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "thermofit/error.hpp"
#include "thermofit/thermal.hpp"

using namespace thermofit;

namespace {

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kUsage;
}

// Exhaustive check: the choice qualifies and nothing with a larger
// theta_sa does; a nullopt means nothing qualifies at all.
void expect_best_choice(std::span<const HeatSinkEntry> catalog,
                        const std::optional<HeatSinkEntry>& chosen, double power,
                        double t_max, double ambient, double theta_jc) {
  auto fits = [&](const HeatSinkEntry& e) {
    return ambient + power * (theta_jc + e.theta_sa) <= t_max;
  };
  if (!chosen) {
    for (const auto& e : catalog) EXPECT_FALSE(fits(e)) << e.name;
    return;
  }
  EXPECT_TRUE(fits(*chosen));
  bool seen_first_equal = false;
  for (const auto& e : catalog) {
    if (e.theta_sa > chosen->theta_sa) EXPECT_FALSE(fits(e)) << e.name;
    if (e.theta_sa == chosen->theta_sa && fits(e) && !seen_first_equal) {
      seen_first_equal = true;
      EXPECT_EQ(e.name, chosen->name) << "ties keep catalog order";
    }
  }
}

}  // namespace

TEST(Catalog, PackagesGolden) {
  const auto pkgs = builtin_packages();
  struct Row {
    const char* name;
    double jc, ja;
  };
  const Row expected[] = {{"TO 3", 5, 60},      {"TO-39", 12, 140},   {"TO-220", 3, 62.5},
                          {"TO-220FB", 3, 50},  {"TO-223", 30.6, 53}, {"TO-252", 5, 92},
                          {"TO-263", 23.5, 50}, {"D2PAK", 4, 35}};
  ASSERT_EQ(pkgs.size(), 8u);
  for (std::size_t i = 0; i < pkgs.size(); ++i) {
    EXPECT_EQ(pkgs[i].name, expected[i].name);
    EXPECT_EQ(pkgs[i].theta_jc, expected[i].jc);
    EXPECT_EQ(pkgs[i].theta_ja, expected[i].ja);
    EXPECT_GT(pkgs[i].theta_jc, 0);
    EXPECT_GE(pkgs[i].theta_ja, pkgs[i].theta_jc);
  }
}

TEST(Catalog, HeatSinksGolden) {
  const auto sinks = builtin_heatsinks();
  ASSERT_EQ(sinks.size(), 4u);
  EXPECT_EQ(sinks[0].name, "1 sq inch of 1 ounce PCB copper");
  EXPECT_EQ(sinks[0].theta_sa, 43);
  EXPECT_EQ(sinks[1].name, "0.5 sq inch of 1 ounce PCB copper");
  EXPECT_EQ(sinks[1].theta_sa, 50);
  EXPECT_EQ(sinks[2].name, "0.3 sq inch of 1 ounce PCB copper");
  EXPECT_EQ(sinks[2].theta_sa, 56);
  EXPECT_EQ(sinks[3].name, "Aavid Thermally, SMT heat sink");
  EXPECT_EQ(sinks[3].theta_sa, 14);
}

TEST(Catalog, Processor) {
  const auto cpu = builtin_processor();
  EXPECT_EQ(cpu.t_j_max_c, 63.4);
  EXPECT_GT(cpu.t_j_max_c, 0);
  EXPECT_LT(cpu.t_j_max_c, 200);
  EXPECT_FALSE(cpu.note.empty());
}

TEST(Catalog, CsvExport) {
  const auto pkgs = builtin_packages();
  const auto sinks = builtin_heatsinks();
  const std::string p = packages_csv(pkgs);
  const std::string s = heatsinks_csv(sinks);
  EXPECT_TRUE(p.starts_with("name,theta_jc,theta_ja\nTO 3,5,60\n"));
  EXPECT_NE(p.find("TO-220,3,62.5\n"), std::string::npos);
  EXPECT_TRUE(s.starts_with("name,theta_sa\n1 sq inch of 1 ounce PCB copper,43\n"));
  EXPECT_NE(s.find("\"Aavid Thermally, SMT heat sink\",14\n"), std::string::npos);
}

TEST(JunctionTemperature, Examples) {
  EXPECT_EQ(junction_temperature(0, 17, 25), 25.0);
  EXPECT_DOUBLE_EQ(junction_temperature(1, 62.5, 25), 87.5);
  EXPECT_NEAR(junction_temperature(2, 43, 20.2), 106.2, 1e-12);
  EXPECT_EQ(error_of([] { junction_temperature(-1, 3, 25); }), ErrorCode::kNegativePower);
  EXPECT_EQ(error_of([] { junction_temperature(1, 0, 25); }),
            ErrorCode::kNonPositiveResistance);
  EXPECT_EQ(error_of([] { junction_temperature(1, -2, 25); }),
            ErrorCode::kNonPositiveResistance);
}

TEST(JunctionTemperature, AffineAndMonotone) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> up(0, 200), ut(0.1, 150), ua(-40, 85);
  for (int trial = 0; trial < 500; ++trial) {
    const double p = up(rng), t = ut(rng), a = ua(rng), dp = up(rng), dt = ut(rng);
    const double base = junction_temperature(p, t, a);
    EXPECT_GE(junction_temperature(p + dp, t, a), base);
    EXPECT_GE(junction_temperature(p, t + dt, a), base);
    // Affine in power: equal steps give equal rises.
    const double r1 = junction_temperature(p + dp, t, a) - base;
    const double r2 = junction_temperature(p + 2 * dp, t, a) - junction_temperature(p + dp, t, a);
    EXPECT_NEAR(r1, r2, 1e-9 * (1 + std::abs(base) + r1));
  }
}

TEST(MaxPower, Examples) {
  EXPECT_DOUBLE_EQ(max_power(87.5, 62.5, 25), 1.0);
  EXPECT_NEAR(max_power(63.4, 43, 20.2), 1.0047, 1e-4);
  EXPECT_EQ(error_of([] { max_power(25, 3, 25); }), ErrorCode::kInvertedTemperatures);
  EXPECT_EQ(error_of([] { max_power(20, 3, 25); }), ErrorCode::kInvertedTemperatures);
  EXPECT_EQ(error_of([] { max_power(90, 0, 25); }), ErrorCode::kNonPositiveResistance);
}

TEST(MaxPower, RoundTrip) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> ut(0.1, 150), ua(-40, 85), uh(0.01, 150);
  for (int trial = 0; trial < 1000; ++trial) {
    const double theta = ut(rng), a = ua(rng), tmax = a + uh(rng);
    const double back = junction_temperature(max_power(tmax, theta, a), theta, a);
    EXPECT_NEAR(back, tmax, 1e-12 * std::max(1.0, std::abs(tmax)));
  }
}

TEST(SelectHeatsink, Examples) {
  const auto sinks = builtin_heatsinks();
  const auto small = select_heatsink(sinks, 0.5, 63.4, 20.2, 3);
  ASSERT_TRUE(small);
  EXPECT_EQ(small->name, "0.3 sq inch of 1 ounce PCB copper");
  EXPECT_FALSE(select_heatsink(sinks, 10, 63.4, 20.2, 3));
  const auto idle = select_heatsink(sinks, 0, 63.4, 20.2, 3);
  ASSERT_TRUE(idle);
  EXPECT_EQ(idle->theta_sa, 56);
  // 2 W: budget (63.4 - 20.2) / 2 - 3 = 18.6 admits only the 14 C/W part.
  const auto two = select_heatsink(sinks, 2, 63.4, 20.2, 3);
  ASSERT_TRUE(two);
  EXPECT_EQ(two->theta_sa, 14);

  for (double p : {0.0, 0.25, 0.5, 0.7, 0.8, 1.0, 2.0, 2.5, 10.0}) {
    expect_best_choice(sinks, select_heatsink(sinks, p, 63.4, 20.2, 3), p, 63.4, 20.2, 3);
  }
}

TEST(SelectHeatsink, TiesKeepCatalogOrder) {
  const std::vector<HeatSinkEntry> sinks = {{"a", 10}, {"b", 20}, {"c", 20}};
  EXPECT_EQ(select_heatsink(sinks, 1, 100, 20, 1)->name, "b");
}

TEST(SelectHeatsink, RandomCatalogsAgreeWithExhaustiveCheck) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> theta(1, 80), power(0, 5), amb(0, 40), head(1, 100);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<HeatSinkEntry> sinks;
    const auto n = 1 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      sinks.push_back({"s" + std::to_string(i), std::round(theta(rng))});
    }
    const double p = power(rng), a = amb(rng), tmax = a + head(rng), jc = theta(rng) / 4;
    expect_best_choice(sinks, select_heatsink(sinks, p, tmax, a, jc), p, tmax, a, jc);
  }
}

TEST(SelectHeatsink, Errors) {
  const auto sinks = builtin_heatsinks();
  EXPECT_EQ(error_of([&] { select_heatsink(sinks, -1, 63.4, 20.2, 3); }),
            ErrorCode::kNegativePower);
  EXPECT_EQ(error_of([&] { select_heatsink(sinks, 1, 63.4, 20.2, 0); }),
            ErrorCode::kNonPositiveResistance);
  EXPECT_EQ(error_of([] { select_heatsink({}, 1, 63.4, 20.2, 3); }), ErrorCode::kEmptyInput);
}
