#include <gtest/gtest.h>

#include <cmath>

#include "beefi/error.hpp"
#include "beefi/rng.hpp"
#include "beefi/weather.hpp"
#include "support.hpp"

namespace beefi {
namespace {

std::string year_csv(double temp = 20.0, double sun = 8.0) {
  std::string csv = "day,max_temp_c,sunshine_h\n";
  for (int d = 1; d <= 365; ++d) csv += std::to_string(d) + "," + std::to_string(temp) + "," + std::to_string(sun) + "\n";
  return csv;
}

TEST(LoadWeather, FullYear) {
  const auto series = load_weather(year_csv());
  EXPECT_EQ(series.size(), 365u);
  EXPECT_DOUBLE_EQ(series.at(100).max_temp_c, 20.0);
  EXPECT_EQ(load_weather(weather_csv(series)), series);
}

TEST(LoadWeather, MissingDay) {
  std::string csv = "day,max_temp_c,sunshine_h\n";
  for (int d = 1; d <= 365; ++d) {
    if (d != 100) csv += std::to_string(d) + ",20,8\n";
  }
  try {
    load_weather(csv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "MissingDay");
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
  }
}

TEST(LoadWeather, OtherErrors) {
  std::string dup = year_csv() + "5,20,8\n";
  EXPECT_THROW_CODE(load_weather(dup), "DuplicateDay");
  std::string sun = year_csv();
  sun.replace(sun.find("\n1,") + 1, std::string("1,20.000000,8.000000").size(), "1,20,25.0");
  EXPECT_THROW_CODE(load_weather(sun), "OutOfRangeValue");
  EXPECT_THROW_CODE(load_weather("d,t,s\n"), "BadHeader");
  EXPECT_THROW_CODE(load_weather("day,max_temp_c,sunshine_h\n1,x,2\n"), "ParseError");
  EXPECT_THROW_CODE(load_weather("day,max_temp_c,sunshine_h\n400,1,2\n"), "OutOfRangeValue");
}

TEST(SynthWeather, Deterministic) {
  EXPECT_EQ(synth_weather(2009, {}), synth_weather(2009, {}));
  EXPECT_NE(synth_weather(2009, {}), synth_weather(2010, {}));
}

TEST(SynthWeather, NoiseFreeIsExactSinusoid) {
  ClimateProfile p;
  p.temp_noise_c = 0.0;
  p.sunshine_noise_h = 0.0;
  const auto s = synth_weather(1, p);
  EXPECT_DOUBLE_EQ(s.at(196).max_temp_c, 21.5);
  EXPECT_DOUBLE_EQ(s.at(196).sunshine_h, 7.0);
  EXPECT_DOUBLE_EQ(s.at(1).max_temp_c, 6.672961304171137);
  EXPECT_DOUBLE_EQ(s.at(100).sunshine_h, 4.187641372140902);
  EXPECT_DOUBLE_EQ(s.at(300).max_temp_c, 12.367075772026013);
}

TEST(SynthWeather, ColdYearNeverForages) {
  ClimateProfile p;
  p.temp_mean_c = 10.0;
  p.temp_amplitude_c = 0.0;
  p.temp_noise_c = 0.0;
  for (const auto& d : synth_weather(4, p).days()) EXPECT_EQ(foraging_hours(d, std::nullopt, 9.0), 0.0);
}

TEST(SynthWeather, SunshineClamped) {
  ClimateProfile p;
  p.sunshine_mean_h = 1.0;
  p.sunshine_noise_h = 30.0;
  for (const auto& d : synth_weather(5, p).days()) {
    EXPECT_GE(d.sunshine_h, 0.0);
    EXPECT_LE(d.sunshine_h, 24.0);
  }
}

TEST(ForagingHours, Examples) {
  EXPECT_EQ(foraging_hours({1, 14.9, 9.0}, std::nullopt, 9.0), 0.0);
  EXPECT_EQ(foraging_hours({1, 20.0, 9.0}, std::nullopt, 9.0), 9.0);
  const EnvControl ctrl{2.0, 2.0, 1, 365};
  EXPECT_EQ(foraging_hours({1, 14.0, 6.0}, ctrl, 12.0), 8.0);
}

TEST(ForagingHours, ThresholdIsInclusive) {
  EXPECT_GT(foraging_hours({1, 15.0, 5.0}, std::nullopt, 9.0), 0.0);
  EXPECT_EQ(foraging_hours({1, std::nextafter(15.0, 0.0), 5.0}, std::nullopt, 9.0), 0.0);
}

TEST(ForagingHours, ControlOutsideWindowIsIgnored) {
  const EnvControl ctrl{5.0, 5.0, 100, 200};
  EXPECT_EQ(foraging_hours({50, 12.0, 5.0}, ctrl, 16.0), 0.0);
  EXPECT_EQ(foraging_hours({150, 12.0, 5.0}, ctrl, 16.0), 10.0);
}

TEST(ForagingHours, MonotoneAndBounded) {
  CounterRng rng(12);
  for (int i = 0; i < 5000; ++i) {
    const DayWeather d{1 + static_cast<int>(rng.below(365)), rng.uniform(5.0, 25.0), rng.uniform(0.0, 14.0)};
    const EnvControl c{rng.uniform(0.0, 4.0), rng.uniform(0.0, 6.0), 1, 365};
    const double cap = rng.uniform(1.0, 16.0);
    const double h = foraging_hours(d, c, cap);
    ASSERT_GE(h, 0.0);
    ASSERT_LE(h, cap);
    const double delta = rng.uniform(0.0, 3.0);
    EXPECT_GE(foraging_hours({d.day, d.max_temp_c + delta, d.sunshine_h}, c, cap), h);
    EXPECT_GE(foraging_hours({d.day, d.max_temp_c, std::min(24.0, d.sunshine_h + delta)}, c, cap), h);
    EXPECT_GE(foraging_hours(d, EnvControl{c.temp_uplift_c + delta, c.extra_light_h, 1, 365}, cap), h);
    EXPECT_GE(foraging_hours(d, EnvControl{c.temp_uplift_c, c.extra_light_h + delta, 1, 365}, cap), h);
  }
}

TEST(HourCapsType, ControlRaisesCapOnlyInWindow) {
  const HourCaps caps;
  const EnvControl c{1.0, 1.0, 100, 200};
  EXPECT_EQ(caps.for_day(std::nullopt, 150), 9.0);
  EXPECT_EQ(caps.for_day(c, 150), 16.0);
  EXPECT_EQ(caps.for_day(c, 99), 9.0);
}

TEST(ControlBoundsCheck, Validation) {
  const ControlBounds b;
  validate_control({4.0, 6.0, 1, 365}, b);
  EXPECT_THROW_CODE(validate_control({4.5, 0.0, 1, 365}, b), "BadControl");
  EXPECT_THROW_CODE(validate_control({0.0, -1.0, 1, 365}, b), "BadControl");
  EXPECT_THROW_CODE(validate_control({0.0, 0.0, 200, 100}, b), "BadControl");
}

}  // namespace
}  // namespace beefi
