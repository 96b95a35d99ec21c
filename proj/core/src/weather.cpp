#include "beefi/weather.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "beefi/error.hpp"
#include "beefi/format.hpp"
#include "beefi/rng.hpp"

namespace beefi {

namespace {

void check_day(const DayWeather& d) {
  if (d.day < 1 || d.day > kDaysPerYear) {
    throw Error("OutOfRangeValue", "day " + std::to_string(d.day) + " outside 1..365");
  }
  if (!std::isfinite(d.max_temp_c)) {
    throw Error("OutOfRangeValue", "max_temp_c not finite on day " + std::to_string(d.day));
  }
  if (!(d.sunshine_h >= 0.0 && d.sunshine_h <= 24.0)) {
    throw Error("OutOfRangeValue", "sunshine_h " + format_double(d.sunshine_h) + " on day " +
                                       std::to_string(d.day) + " outside [0, 24]");
  }
}

}  // namespace

WeatherSeries::WeatherSeries(std::vector<DayWeather> days) : days_(std::move(days)) {
  std::vector<int> seen(kDaysPerYear + 1, 0);
  for (const auto& d : days_) {
    check_day(d);
    if (seen[static_cast<std::size_t>(d.day)]++) {
      throw Error("DuplicateDay", "day " + std::to_string(d.day) + " appears twice");
    }
  }
  for (int day = 1; day <= kDaysPerYear; ++day) {
    if (!seen[static_cast<std::size_t>(day)]) {
      throw Error("MissingDay", "day " + std::to_string(day) + " is missing");
    }
  }
  std::sort(days_.begin(), days_.end(),
            [](const DayWeather& a, const DayWeather& b) { return a.day < b.day; });
}

const DayWeather& WeatherSeries::at(int day) const {
  if (day < 1 || day > kDaysPerYear) {
    throw Error("OutOfRangeValue", "day " + std::to_string(day) + " outside 1..365");
  }
  return days_[static_cast<std::size_t>(day - 1)];
}

void validate_control(const EnvControl& control, const ControlBounds& bounds) {
  if (!(control.temp_uplift_c >= 0.0 && control.temp_uplift_c <= bounds.max_uplift_c)) {
    throw Error("BadControl", "temp_uplift_c outside [0, max_uplift_c]");
  }
  if (!(control.extra_light_h >= 0.0 && control.extra_light_h <= bounds.max_extra_light_h)) {
    throw Error("BadControl", "extra_light_h outside [0, max_extra_light_h]");
  }
  if (control.start_day > control.end_day) {
    throw Error("BadControl", "control window start after end");
  }
}

WeatherSeries load_weather(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() || trim(lines.front()) != "day,max_temp_c,sunshine_h") {
    throw Error("BadHeader", "weather CSV must start with 'day,max_temp_c,sunshine_h'");
  }
  std::vector<DayWeather> days;
  days.reserve(lines.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto fields = split(lines[i], ',');
    if (fields.size() != 3) {
      throw Error("ParseError", "weather line " + std::to_string(i + 1) + " needs 3 fields");
    }
    DayWeather d;
    d.day = static_cast<int>(parse_int(fields[0]));
    d.max_temp_c = parse_double(fields[1]);
    d.sunshine_h = parse_double(fields[2]);
    days.push_back(d);
  }
  return WeatherSeries(std::move(days));
}

std::string weather_csv(const WeatherSeries& series) {
  std::string out = "day,max_temp_c,sunshine_h\n";
  for (const auto& d : series.days()) {
    out += std::to_string(d.day) + ',' + format_double(d.max_temp_c) + ',' +
           format_double(d.sunshine_h) + '\n';
  }
  return out;
}

WeatherSeries synth_weather(std::uint64_t seed, const ClimateProfile& profile) {
  CounterRng rng(derive_seed(seed, stream::kWeather));
  std::vector<DayWeather> days;
  days.reserve(kDaysPerYear);
  for (int day = 1; day <= kDaysPerYear; ++day) {
    const double phase = 2.0 * std::numbers::pi * (day - profile.peak_day) / kDaysPerYear;
    const double season = std::cos(phase);
    const double temp_noise = profile.temp_noise_c * rng.uniform(-1.0, 1.0);
    const double sun_noise = profile.sunshine_noise_h * rng.uniform(-1.0, 1.0);
    DayWeather d;
    d.day = day;
    d.max_temp_c = profile.temp_mean_c + profile.temp_amplitude_c * season + temp_noise;
    d.sunshine_h = std::clamp(
        profile.sunshine_mean_h + profile.sunshine_amplitude_h * season + sun_noise, 0.0, 24.0);
    days.push_back(d);
  }
  return WeatherSeries(std::move(days));
}

double effective_temp_c(const DayWeather& day, const std::optional<EnvControl>& control) noexcept {
  const bool on = control && control->active_on(day.day);
  return day.max_temp_c + (on ? control->temp_uplift_c : 0.0);
}

double available_light_h(const DayWeather& day, const std::optional<EnvControl>& control) noexcept {
  const bool on = control && control->active_on(day.day);
  return day.sunshine_h + (on ? control->extra_light_h : 0.0);
}

double foraging_hours(const DayWeather& day, const std::optional<EnvControl>& control,
                      double cap_h) noexcept {
  if (effective_temp_c(day, control) < kMinForagingTempC) return 0.0;
  return std::clamp(available_light_h(day, control), 0.0, cap_h);
}

}  // namespace beefi
