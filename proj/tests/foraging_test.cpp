#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "beefi/error.hpp"
#include "beefi/foraging.hpp"
#include "beefi/rng.hpp"
#include "support.hpp"

namespace beefi {
namespace {

using test::grid_of;

Patch patch(int id, double nectar, double dist) {
  Patch p;
  p.id = id;
  p.nectar_l = nectar;
  p.distance_from_hive_m = dist;
  return p;
}

const DayWeather kWarm{150, 22.0, 8.0};

TEST(VisitWeight, QualityOverDistance) {
  EXPECT_DOUBLE_EQ(visit_weight(patch(0, 0.6, 500.0), 1000.0), 0.39999999999999997);
  EXPECT_DOUBLE_EQ(visit_weight(patch(0, 0.6, 0.0), 1000.0), 0.6);
}

TEST(SimulateDay, ColdDayIsAllZero) {
  const std::vector<Patch> ps{patch(0, 1.0, 10.0)};
  const auto r = simulate_day(ps, {150, 14.9, 8.0}, std::nullopt, {}, 1, 150);
  EXPECT_EQ(r.foraging_period_h, 0.0);
  EXPECT_EQ(r.completed_trips, 0u);
  EXPECT_EQ(r.total_visits(), 0u);
  EXPECT_TRUE(r.visits_per_patch.empty());
}

TEST(SimulateDay, SinglePatchTakesEverything) {
  const std::vector<Patch> ps{patch(7, 1.0, 10.0)};
  ColonyParams c;
  c.initial_workers = 1000;
  c.trips_per_forager_hour = 1.5;
  const auto r = simulate_day(ps, kWarm, std::nullopt, c, 3, 150);
  EXPECT_EQ(r.foraging_period_h, 8.0);
  EXPECT_EQ(r.completed_trips, 12000u);
  ASSERT_EQ(r.visits_per_patch.size(), 1u);
  EXPECT_EQ(r.visits_per_patch[0], (std::pair<int, std::uint64_t>{7, 12000}));
  EXPECT_DOUBLE_EQ(r.trips_per_sunshine_hour, 1500.0);
  EXPECT_DOUBLE_EQ(r.active_foragers, 1000.0);
}

TEST(SimulateDay, CappedAtNineHours) {
  const std::vector<Patch> ps{patch(0, 1.0, 10.0)};
  const auto r = simulate_day(ps, {150, 22.0, 12.0}, std::nullopt, {}, 3, 150);
  EXPECT_EQ(r.foraging_period_h, 9.0);
  EXPECT_EQ(r.completed_trips, 90000u);
}

TEST(SimulateDay, NoPatchesOrNoForagers) {
  EXPECT_EQ(simulate_day({}, kWarm, std::nullopt, {}, 1, 150).completed_trips, 0u);
  ColonyParams c;
  c.forager_fraction = 0.0;
  const std::vector<Patch> ps{patch(0, 1.0, 10.0)};
  const auto r = simulate_day(ps, kWarm, std::nullopt, c, 1, 150);
  EXPECT_EQ(r.completed_trips, 0u);
  EXPECT_EQ(r.foraging_period_h, 0.0);
  EXPECT_EQ(r.trips_per_sunshine_hour, 0.0);
}

TEST(SimulateDay, ZeroSunshineUsesEpsilon) {
  const std::vector<Patch> ps{patch(0, 1.0, 10.0)};
  ColonyParams c;
  c.initial_workers = 1;
  const EnvControl ctrl{0.0, 2.0, 1, 365};
  const auto r = simulate_day(ps, {150, 20.0, 0.0}, ctrl, c, 1, 150);
  EXPECT_EQ(r.completed_trips, 2u);
  EXPECT_DOUBLE_EQ(r.trips_per_sunshine_hour, 2.0 / kSunshineEpsilonH);
}

TEST(SimulateDay, SymmetricPatchesSplitEvenly) {
  const std::vector<Patch> ps{patch(0, 1.0, 300.0), patch(1, 1.0, 300.0)};
  ColonyParams c;
  c.initial_workers = 200;
  double share = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto r = simulate_day(ps, kWarm, std::nullopt, c, seed, 150);
    std::map<int, std::uint64_t> v(r.visits_per_patch.begin(), r.visits_per_patch.end());
    share += static_cast<double>(v[0]) / static_cast<double>(r.total_visits());
  }
  EXPECT_NEAR(100.0 * share / 50.0, 50.0, 5.0);
}

TEST(SimulateDay, AllocationFollowsWeights) {
  // Weights 0.3 : 0.1 : 0.6 after the distance discount.
  const std::vector<Patch> ps{patch(0, 0.6, 1000.0), patch(1, 0.1, 0.0), patch(2, 0.6, 0.0)};
  ColonyParams c;
  c.initial_workers = 20000;
  const auto r = simulate_day(ps, kWarm, std::nullopt, c, 9, 150);
  std::map<int, std::uint64_t> v(r.visits_per_patch.begin(), r.visits_per_patch.end());
  const double n = static_cast<double>(r.total_visits());
  EXPECT_NEAR(v[0] / n, 0.3, 0.01);
  EXPECT_NEAR(v[1] / n, 0.1, 0.01);
  EXPECT_NEAR(v[2] / n, 0.6, 0.01);
}

TEST(SimulateDay, ConservationOverRandomDays) {
  CounterRng rng(77);
  for (int i = 0; i < 300; ++i) {
    std::vector<Patch> ps;
    const auto n = 1 + rng.below(12);
    for (std::uint64_t k = 0; k < n; ++k) ps.push_back(patch(static_cast<int>(k), rng.uniform(0.0, 2.0), rng.uniform(0.0, 5000.0)));
    ColonyParams c;
    c.initial_workers = rng.uniform(0.0, 3000.0);
    c.patches_per_trip = 1 + static_cast<int>(rng.below(4));
    c.forager_fraction = rng.uniform();
    const DayWeather w{1 + static_cast<int>(rng.below(365)), rng.uniform(10.0, 25.0), rng.uniform(0.0, 12.0)};
    const auto r = simulate_day(ps, w, std::nullopt, c, rng(), w.day);
    EXPECT_EQ(r.total_visits(), r.completed_trips * static_cast<std::uint64_t>(c.patches_per_trip));
    EXPECT_GE(r.foraging_period_h, 0.0);
  }
}

TEST(Aggregate, IndependentFold) {
  CounterRng rng(4);
  std::vector<DayRecord> days;
  for (int d = 0; d < 40; ++d) {
    DayRecord r;
    r.day = 100 + d;
    r.foraging_period_h = rng.uniform(0.0, 9.0);
    r.completed_trips = rng.below(10000);
    r.visits_per_patch = {{0, r.completed_trips / 2}, {3, r.completed_trips - r.completed_trips / 2}};
    r.trips_per_sunshine_hour = rng.uniform(0.0, 5000.0);
    r.detected_patches = static_cast<std::size_t>(d);
    r.covered_area_fraction = d / 100.0;
    days.push_back(r);
  }
  const auto t = aggregate(days, 2.0);
  std::uint64_t visits = 0;
  std::uint64_t trips = 0;
  long double hours = 0.0L;
  long double rate = 0.0L;
  for (const auto& d : days) {
    for (const auto& pv : d.visits_per_patch) visits += pv.second;
    trips += d.completed_trips;
    hours += d.foraging_period_h;
    rate += d.trips_per_sunshine_hour;
  }
  EXPECT_EQ(t.total_visits, visits);
  EXPECT_EQ(t.total_completed_trips, trips);
  EXPECT_NEAR(t.mean_foraging_period_h, static_cast<double>(hours / 40), 1e-12);
  EXPECT_NEAR(t.mean_trips_per_sunshine_hour, static_cast<double>(rate / 40), 1e-9);
  EXPECT_EQ(t.detected_patches, 39u);
  EXPECT_DOUBLE_EQ(t.covered_area_km2, 0.39 * 2.0);
  EXPECT_EQ(aggregate({}, 1.0), SeasonTotals{});
}

SeasonSetup small_setup() {
  return SeasonSetup{grid_of({"Y...Y....", "...#.....", "Y..H...YY", ".........", "YY.....Y."}, 50.0),
                     synth_weather(2009, {}), {}, {}, {}, 7};
}

TEST(RunSeason, EmptyWindow) {
  auto s = small_setup();
  s.colony.season_start = 150;
  s.colony.season_end = 149;
  const auto r = run_season(s, std::nullopt, 1);
  EXPECT_TRUE(r.days.empty());
  EXPECT_EQ(r.totals, SeasonTotals{});
}

TEST(RunSeason, ColdYearIsZero) {
  auto s = small_setup();
  ClimateProfile p;
  p.temp_mean_c = 5.0;
  p.temp_amplitude_c = 0.0;
  p.temp_noise_c = 0.0;
  s.weather = synth_weather(1, p);
  const auto r = run_season(s, std::nullopt, 1);
  EXPECT_EQ(r.totals.total_visits, 0u);
  EXPECT_EQ(r.totals.total_completed_trips, 0u);
  EXPECT_EQ(r.totals.covered_area_fraction, 0.0);
  EXPECT_EQ(r.days.size(), 153u);
}

TEST(RunSeason, DeterministicAndConsistent) {
  const auto s = small_setup();
  const auto a = run_season(s, std::nullopt, 5);
  EXPECT_EQ(a, run_season(s, std::nullopt, 5));
  EXPECT_EQ(a.totals, aggregate(a.days, a.traversable_km2));
  for (const auto& d : a.days) EXPECT_EQ(d.total_visits(), d.completed_trips);
  // Knowledge only grows through the season.
  for (std::size_t i = 1; i < a.days.size(); ++i) {
    EXPECT_GE(a.days[i].detected_patches, a.days[i - 1].detected_patches);
    EXPECT_GE(a.days[i].covered_area_fraction, a.days[i - 1].covered_area_fraction);
  }
  EXPECT_EQ(a.natural_patch_count, 6u);
}

TEST(RunSeason, WarmerSunnierNeverFewerTrips) {
  const auto s = small_setup();
  auto warm = s;
  std::vector<DayWeather> days(s.weather.days().begin(), s.weather.days().end());
  for (auto& d : days) {
    d.max_temp_c += 2.0;
    d.sunshine_h = std::min(24.0, d.sunshine_h + 1.0);
  }
  warm.weather = WeatherSeries(days);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    EXPECT_GE(run_season(warm, std::nullopt, seed).totals.total_completed_trips,
              run_season(s, std::nullopt, seed).totals.total_completed_trips);
  }
}

TEST(RunSeason, ZeroForagersZeroMetrics) {
  auto s = small_setup();
  s.colony.forager_fraction = 0.0;
  const auto r = run_season(s, std::nullopt, 1);
  EXPECT_EQ(r.totals.total_visits, 0u);
  EXPECT_EQ(r.totals.mean_foraging_period_h, 0.0);
  EXPECT_EQ(r.totals.mean_trips_per_sunshine_hour, 0.0);
}

TEST(RunSeason, InvalidColony) {
  auto s = small_setup();
  s.colony.forager_fraction = 1.5;
  EXPECT_THROW_CODE(run_season(s, std::nullopt, 1), "BadColonyParams");
  s = small_setup();
  s.scouting_cadence_days = 0;
  EXPECT_THROW_CODE(run_season(s, std::nullopt, 1), "BadColonyParams");
}

TEST(SeasonCsv, RoundTripAndHeader) {
  const auto r = run_season(small_setup(), std::nullopt, 2);
  const std::string csv = season_csv(r);
  const auto rows = parse_season_csv(csv);
  ASSERT_EQ(rows.size(), r.days.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].day, r.days[i].day);
    EXPECT_EQ(rows[i].foraging_h, r.days[i].foraging_period_h);
    EXPECT_EQ(rows[i].total_visits, r.days[i].total_visits());
    EXPECT_EQ(rows[i].covered_area_frac, r.days[i].covered_area_fraction);
  }
  EXPECT_THROW_CODE(parse_season_csv("day,x\n"), "BadHeader");
}

// Golden run of the bundled scenario. The committed totals were checked
// against scripts/oracles/reaggregate.py, a separate fold over season.csv.
TEST(RunSeason, DeskGolden) {
  SeasonSetup s{parse_map(test::slurp(test::data_path("field_desk.map"))), synth_weather(2009, {}), {}, {}, {}, 7};
  const auto r = run_season(s, std::nullopt, 1);
  const std::string dir = std::string(BEEFI_TEST_DIR) + "/golden/desk_seed1/";
  EXPECT_EQ(season_csv(r), test::slurp(dir + "season.csv"));
  EXPECT_EQ(totals_json(r), test::slurp(dir + "totals.json"));
  EXPECT_EQ(coverage_csv(r.coverage), test::slurp(dir + "coverage.csv"));
}

}  // namespace
}  // namespace beefi
