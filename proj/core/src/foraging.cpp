#include "beefi/foraging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "beefi/error.hpp"
#include "beefi/format.hpp"
#include "beefi/rng.hpp"
#include "json.hpp"

namespace beefi {

namespace {

// Vose alias table over non-negative weights; uniform when they sum to 0.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> weights)
      : prob_(weights.size(), 1.0), alias_(weights.size(), 0) {
    const std::size_t n = weights.size();
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) {
      std::iota(alias_.begin(), alias_.end(), std::size_t{0});
      return;
    }
    std::vector<double> scaled(n);
    std::vector<std::size_t> small;
    std::vector<std::size_t> large;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = weights[i] * static_cast<double>(n) / total;
      (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
      const std::size_t s = small.back();
      small.pop_back();
      const std::size_t l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (auto i : large) prob_[i] = 1.0, alias_[i] = i;
    for (auto i : small) prob_[i] = 1.0, alias_[i] = i;
  }

  std::size_t draw(CounterRng& rng) const noexcept {
    const auto column = static_cast<std::size_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[column] ? column : alias_[column];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace

void validate(const ColonyParams& c) {
  auto fail = [](const char* what) { throw Error("BadColonyParams", what); };
  if (!(c.initial_workers >= 0.0)) fail("initial_workers must be non-negative");
  if (!(c.trips_per_forager_hour >= 0.0)) fail("trips_per_forager_hour must be non-negative");
  if (c.patches_per_trip < 1) fail("patches_per_trip must be at least 1");
  if (!(c.forager_fraction >= 0.0 && c.forager_fraction <= 1.0)) {
    fail("forager_fraction must be in [0, 1]");
  }
  if (!(c.distance_scale_m > 0.0)) fail("distance_scale_m must be positive");
  if (c.season_start < 1 || c.season_end > kDaysPerYear) fail("season outside 1..365");
  if (!(c.caps.baseline_h > 0.0 && c.caps.baseline_h <= 24.0 && c.caps.controlled_h > 0.0 &&
        c.caps.controlled_h <= 24.0)) {
    fail("hour caps must be in (0, 24]");
  }
}

std::uint64_t DayRecord::total_visits() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& [id, visits] : visits_per_patch) sum += visits;
  return sum;
}

double SeasonRecord::detected_fraction() const noexcept {
  return natural_patch_count == 0 ? 0.0
                                  : static_cast<double>(detected_natural.size()) /
                                        static_cast<double>(natural_patch_count);
}

double visit_weight(const Patch& patch, double distance_scale_m) noexcept {
  return patch.nectar_l / (1.0 + patch.distance_from_hive_m / distance_scale_m);
}

DayRecord simulate_day(std::span<const Patch> detected, const DayWeather& weather,
                       const std::optional<EnvControl>& control, const ColonyParams& colony,
                       std::uint64_t seed, int day) {
  DayRecord rec;
  rec.day = day;
  rec.effective_temp_c = effective_temp_c(weather, control);
  rec.light_h = available_light_h(weather, control);
  rec.sunshine_h = weather.sunshine_h;
  rec.active_foragers = colony.forager_fraction * colony.initial_workers;

  const double hours = foraging_hours(weather, control, colony.caps.for_day(control, day));
  if (detected.empty() || !(rec.active_foragers > 0.0) || hours <= 0.0) return rec;

  rec.foraging_period_h = hours;
  rec.completed_trips = static_cast<std::uint64_t>(
      std::llround(rec.active_foragers * colony.trips_per_forager_hour * hours));
  rec.trips_per_sunshine_hour = static_cast<double>(rec.completed_trips) /
                                std::max(weather.sunshine_h, kSunshineEpsilonH);

  std::vector<double> weights(detected.size());
  for (std::size_t i = 0; i < detected.size(); ++i) {
    weights[i] = visit_weight(detected[i], colony.distance_scale_m);
  }
  const AliasTable table(weights);
  std::vector<std::uint64_t> counts(detected.size(), 0);
  CounterRng rng(seed);
  const std::uint64_t draws =
      rec.completed_trips * static_cast<std::uint64_t>(colony.patches_per_trip);
  for (std::uint64_t k = 0; k < draws; ++k) ++counts[table.draw(rng)];

  for (std::size_t i = 0; i < detected.size(); ++i) {
    if (counts[i] > 0) rec.visits_per_patch.emplace_back(detected[i].id, counts[i]);
  }
  std::sort(rec.visits_per_patch.begin(), rec.visits_per_patch.end());
  return rec;
}

SeasonTotals aggregate(std::span<const DayRecord> days, double traversable_km2) {
  SeasonTotals t;
  if (days.empty()) return t;
  double period = 0.0;
  double rate = 0.0;
  for (const auto& d : days) {
    t.total_visits += d.total_visits();
    t.total_completed_trips += d.completed_trips;
    period += d.foraging_period_h;
    rate += d.trips_per_sunshine_hour;
  }
  const auto n = static_cast<double>(days.size());
  t.mean_foraging_period_h = period / n;
  t.mean_trips_per_sunshine_hour = rate / n;
  t.detected_patches = days.back().detected_patches;
  t.covered_area_fraction = days.back().covered_area_fraction;
  t.covered_area_km2 = t.covered_area_fraction * traversable_km2;
  return t;
}

std::uint64_t scouting_seed(std::uint64_t seed, int day) noexcept {
  return derive_seed(derive_seed(seed, stream::kScouting), static_cast<std::uint64_t>(day));
}

std::uint64_t foraging_seed(std::uint64_t seed, int day) noexcept {
  return derive_seed(derive_seed(seed, stream::kForaging), static_cast<std::uint64_t>(day));
}

SeasonRecord run_season(const SeasonSetup& setup, const std::optional<EnvControl>& control,
                        std::uint64_t seed) {
  validate(setup.colony);
  validate(setup.scouting);
  if (setup.scouting_cadence_days < 1) {
    throw Error("BadColonyParams", "scouting cadence must be at least one day");
  }
  const auto patches = derive_patches(setup.grid, setup.patches);

  SeasonRecord season;
  season.natural_patch_count = static_cast<std::size_t>(
      std::count_if(patches.begin(), patches.end(), [](const Patch& p) { return !p.artificial; }));
  season.coverage = ScoutReport::empty(setup.grid, patches.size());
  const double cell_km2 = setup.grid.cell_size() * setup.grid.cell_size() / 1e6;
  season.traversable_km2 = static_cast<double>(setup.grid.traversable_count()) * cell_km2;

  const auto& colony = setup.colony;

  std::vector<Patch> known;
  for (int day = colony.season_start; day <= colony.season_end; ++day) {
    const DayWeather& weather = setup.weather.at(day);
    if ((day - colony.season_start) % setup.scouting_cadence_days == 0) {
      const double hours = foraging_hours(weather, control, colony.caps.for_day(control, day));
      const auto report = run_scouting(setup.grid, patches, setup.scouting, hours,
                                       scouting_seed(seed, day));
      season.coverage = merge_reports(season.coverage, report);
      known.clear();
      for (int id : season.coverage.detected) known.push_back(patches[static_cast<std::size_t>(id)]);
    }
    DayRecord rec = simulate_day(known, weather, control, colony,
                                 foraging_seed(seed, day), day);
    rec.detected_patches = static_cast<std::size_t>(
        std::count_if(known.begin(), known.end(), [](const Patch& p) { return !p.artificial; }));
    rec.covered_area_fraction = season.coverage.covered_area_fraction;
    season.days.push_back(std::move(rec));
  }
  for (int id : season.coverage.detected) {
    if (!patches[static_cast<std::size_t>(id)].artificial) season.detected_natural.push_back(id);
  }
  season.totals = aggregate(season.days, season.traversable_km2);
  return season;
}

std::string season_csv(const SeasonRecord& season) {
  std::string out =
      "day,foraging_h,trips,trips_per_sun_h,total_visits,detected_patches,covered_area_frac\n";
  for (const auto& d : season.days) {
    out += std::to_string(d.day) + ',' + format_double(d.foraging_period_h) + ',' +
           std::to_string(d.completed_trips) + ',' + format_double(d.trips_per_sunshine_hour) +
           ',' + std::to_string(d.total_visits()) + ',' + std::to_string(d.detected_patches) +
           ',' + format_double(d.covered_area_fraction) + '\n';
  }
  return out;
}

std::string totals_json(const SeasonRecord& season) {
  const auto& t = season.totals;
  nlohmann::ordered_json j;
  j["days"] = season.days.size();
  j["total_visits"] = t.total_visits;
  j["total_completed_trips"] = t.total_completed_trips;
  j["mean_foraging_period_h"] = t.mean_foraging_period_h;
  j["mean_trips_per_sunshine_hour"] = t.mean_trips_per_sunshine_hour;
  j["detected_patches"] = t.detected_patches;
  j["natural_patch_count"] = season.natural_patch_count;
  j["detected_fraction"] = season.detected_fraction();
  j["covered_area_fraction"] = t.covered_area_fraction;
  j["covered_area_km2"] = t.covered_area_km2;
  return j.dump(2) + "\n";
}

std::vector<SeasonRow> parse_season_csv(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() ||
      lines.front() !=
          "day,foraging_h,trips,trips_per_sun_h,total_visits,detected_patches,covered_area_frac") {
    throw Error("BadHeader", "not a season.csv export");
  }
  std::vector<SeasonRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 7) throw Error("ParseError", "season.csv line " + std::to_string(i + 1));
    SeasonRow r;
    r.day = static_cast<int>(parse_int(f[0]));
    r.foraging_h = parse_double(f[1]);
    r.trips = static_cast<std::uint64_t>(parse_int(f[2]));
    r.trips_per_sun_h = parse_double(f[3]);
    r.total_visits = static_cast<std::uint64_t>(parse_int(f[4]));
    r.detected_patches = static_cast<std::size_t>(parse_int(f[5]));
    r.covered_area_frac = parse_double(f[6]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace beefi
