#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beefi/landscape.hpp"
#include "beefi/scouting.hpp"
#include "beefi/weather.hpp"

namespace beefi {

/// Colony demography is frozen: the forager count is constant all season.
struct ColonyParams {
  double initial_workers = 10000.0;
  double trips_per_forager_hour = 1.0;
  int patches_per_trip = 1;
  double forager_fraction = 1.0;
  int season_start = 91;  // 1 April
  int season_end = 243;   // 31 August
  double distance_scale_m = 1000.0;
  HourCaps caps;
};

/// Throws BadColonyParams.
void validate(const ColonyParams& colony);

struct DayRecord {
  int day = 0;
  double foraging_period_h = 0.0;
  std::vector<std::pair<int, std::uint64_t>> visits_per_patch;  // (patch id, visits), by id
  std::uint64_t completed_trips = 0;
  double trips_per_sunshine_hour = 0.0;
  double active_foragers = 0.0;
  // Conditions seen by the colony (after any control overlay).
  double effective_temp_c = 0.0;
  double light_h = 0.0;
  double sunshine_h = 0.0;
  // Scouting knowledge on this day.
  std::size_t detected_patches = 0;  // non-artificial
  double covered_area_fraction = 0.0;

  std::uint64_t total_visits() const noexcept;
  friend bool operator==(const DayRecord&, const DayRecord&) = default;
};

struct SeasonTotals {
  std::uint64_t total_visits = 0;
  std::uint64_t total_completed_trips = 0;
  double mean_foraging_period_h = 0.0;
  double mean_trips_per_sunshine_hour = 0.0;
  std::size_t detected_patches = 0;  // non-artificial, end of season
  double covered_area_fraction = 0.0;
  double covered_area_km2 = 0.0;

  friend bool operator==(const SeasonTotals&, const SeasonTotals&) = default;
};

struct SeasonRecord {
  std::vector<DayRecord> days;
  SeasonTotals totals;
  std::size_t natural_patch_count = 0;
  std::vector<int> detected_natural;  // sorted ids, end of season
  ScoutReport coverage;                // all scouting refreshes merged
  double traversable_km2 = 0.0;

  double detected_fraction() const noexcept;
  friend bool operator==(const SeasonRecord&, const SeasonRecord&) = default;
};

inline constexpr double kSunshineEpsilonH = 1e-6;

/// Visit-allocation weight nectar / (1 + distance / d0).
double visit_weight(const Patch& patch, double distance_scale_m) noexcept;

/// One day of foraging over the detected patches. Trips are
/// round(active_foragers * trips_per_forager_hour * foraging_period); each
/// trip visits patches_per_trip patches drawn independently with
/// probability proportional to visit_weight (a multinomial allocation).
DayRecord simulate_day(std::span<const Patch> detected, const DayWeather& weather,
                       const std::optional<EnvControl>& control, const ColonyParams& colony,
                       std::uint64_t seed, int day);

/// Season totals folded from day records. covered_area_km2 needs the
/// traversable area.
SeasonTotals aggregate(std::span<const DayRecord> days, double traversable_km2);

struct SeasonSetup {
  CellGrid grid;
  WeatherSeries weather;
  ColonyParams colony;
  ScoutParams scouting;
  PatchParams patches;
  int scouting_cadence_days = 7;
};

/// Seeds of the scouting refresh and the foraging draws on `day` of a season
/// run with `seed`.
std::uint64_t scouting_seed(std::uint64_t seed, int day) noexcept;
std::uint64_t foraging_seed(std::uint64_t seed, int day) noexcept;

/// Runs the season window day by day. On the first day and every
/// `scouting_cadence_days` after it, a scouting run (with that day's
/// foraging hours) refreshes the colony's knowledge; detections accumulate
/// over the season. Each day then forages over everything detected so far.
SeasonRecord run_season(const SeasonSetup& setup, const std::optional<EnvControl>& control,
                        std::uint64_t seed);

/// Columns: day,foraging_h,trips,trips_per_sun_h,total_visits,detected_patches,covered_area_frac
std::string season_csv(const SeasonRecord& season);

/// Flat JSON object of the totals.
std::string totals_json(const SeasonRecord& season);

/// One row of a parsed season.csv.
struct SeasonRow {
  int day = 0;
  double foraging_h = 0.0;
  std::uint64_t trips = 0;
  double trips_per_sun_h = 0.0;
  std::uint64_t total_visits = 0;
  std::size_t detected_patches = 0;
  double covered_area_frac = 0.0;
};

/// Parses season_csv output; throws BadHeader / ParseError.
std::vector<SeasonRow> parse_season_csv(std::string_view csv);

}  // namespace beefi
