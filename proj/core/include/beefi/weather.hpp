#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace beefi {

inline constexpr double kMinForagingTempC = 15.0;
inline constexpr int kDaysPerYear = 365;

struct DayWeather {
  int day = 1;  // 1..365
  double max_temp_c = 0.0;
  double sunshine_h = 0.0;  // [0, 24]

  friend bool operator==(const DayWeather&, const DayWeather&) = default;
};

/// A complete simulated year, days 1..365 in order.
class WeatherSeries {
 public:
  /// Throws MissingDay / DuplicateDay / OutOfRangeValue.
  explicit WeatherSeries(std::vector<DayWeather> days);

  const DayWeather& at(int day) const;
  std::span<const DayWeather> days() const noexcept { return days_; }
  std::size_t size() const noexcept { return days_.size(); }

  friend bool operator==(const WeatherSeries&, const WeatherSeries&) = default;

 private:
  std::vector<DayWeather> days_;
};

/// Environmental control applied by the supervisor: temperature uplift and
/// supplementary light, active on days [start_day, end_day].
struct EnvControl {
  double temp_uplift_c = 0.0;
  double extra_light_h = 0.0;
  int start_day = 1;
  int end_day = kDaysPerYear;

  bool active_on(int day) const noexcept { return day >= start_day && day <= end_day; }
  friend bool operator==(const EnvControl&, const EnvControl&) = default;
};

struct ControlBounds {
  double max_uplift_c = 4.0;
  double max_extra_light_h = 6.0;
};

/// Throws BadControl if the control violates its bounds.
void validate_control(const EnvControl& control, const ControlBounds& bounds);

/// Daily foraging-hour caps: the uncontrolled day and the absolute maximum
/// under supplementary lighting.
struct HourCaps {
  double baseline_h = 9.0;
  double controlled_h = 16.0;

  double for_day(const std::optional<EnvControl>& control, int day) const noexcept {
    return control && control->active_on(day) ? controlled_h : baseline_h;
  }
};

/// CSV with header day,max_temp_c,sunshine_h. Errors: BadHeader, ParseError,
/// MissingDay, DuplicateDay, OutOfRangeValue.
WeatherSeries load_weather(std::string_view csv);
std::string weather_csv(const WeatherSeries& series);

/// Seasonal climate for synth_weather. Both signals follow
/// mean + amplitude * cos(2*pi*(day - peak_day) / 365) plus iid uniform
/// noise in [-noise, +noise].
struct ClimateProfile {
  double temp_mean_c = 14.0;
  double temp_amplitude_c = 7.5;
  double temp_noise_c = 4.0;
  double sunshine_mean_h = 4.4;
  double sunshine_amplitude_h = 2.6;
  double sunshine_noise_h = 2.5;
  int peak_day = 196;
};

/// Deterministic synthetic year; sunshine is clamped to [0, 24].
WeatherSeries synth_weather(std::uint64_t seed, const ClimateProfile& profile);

/// Hours of foraging on a day. The control (if active on the day) raises the
/// temperature and adds light; below 15 C nothing flies, otherwise the
/// available light is capped at `cap_h`. The threshold is inclusive.
double foraging_hours(const DayWeather& day, const std::optional<EnvControl>& control,
                      double cap_h) noexcept;

/// Temperature and light a day presents after the control overlay.
double effective_temp_c(const DayWeather& day, const std::optional<EnvControl>& control) noexcept;
double available_light_h(const DayWeather& day, const std::optional<EnvControl>& control) noexcept;

}  // namespace beefi
