#include "beefi/supervisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "beefi/error.hpp"
#include "beefi/format.hpp"
#include "beefi/rng.hpp"

namespace beefi {

namespace {

std::vector<double> axis(double max_value, int steps) {
  if (steps <= 1 || max_value <= 0.0) return {0.0};
  std::vector<double> values;
  for (int i = 0; i < steps; ++i) values.push_back(max_value * i / (steps - 1));
  return values;
}

// Regions whose observed label falls short of the requirement, with their
// observed label (the placement step only acts on Low ones).
RegionLabels deficits(const RegionLabels& observed, const RegionLabels& required) {
  RegionLabels out;
  for (const auto& [region, label] : observed) {
    auto it = required.find(region);
    if (it != required.end() && rank(it->second) > rank(label)) out[region] = label;
  }
  return out;
}

std::optional<EnvControl> as_control(const EnvControl& c) {
  if (c.temp_uplift_c == 0.0 && c.extra_light_h == 0.0) return std::nullopt;
  return c;
}

struct Evaluation {
  std::vector<RegionFeatures> features;
  RegionLabels labels;
  double loss = 0.0;
};

Evaluation evaluate(const SeasonRecord& season, const CellGrid& grid, const RegionTiling& tiling,
                    const Classifier& classifier, const UserConfig& config) {
  Evaluation e;
  e.features = extract_features(season.coverage, tiling, grid);
  e.labels = classify_all(classifier, e.features);
  e.loss = coverage_loss(e.labels, required_labels(e.features, config.required_label));
  return e;
}

LoopIteration trace_row(int iteration, const Evaluation& e, const SeasonRecord& season,
                        std::size_t patches, bool accepted) {
  return {iteration,
          e.loss,
          season.totals.covered_area_fraction,
          season.detected_fraction(),
          season.totals.total_visits,
          patches,
          accepted};
}

}  // namespace

void validate(const UserConfig& c) {
  auto fail = [](const char* what) { throw Error("BadConfig", what); };
  if (!(c.w1 >= 0.0 && c.w2 >= 0.0) || std::abs(c.w1 + c.w2 - 1.0) > 1e-9) {
    fail("weights must be non-negative and sum to 1");
  }
  if (c.max_iterations < 1) fail("max_iterations must be at least 1");
  if (!(c.loss_tolerance >= 0.0)) fail("loss_tolerance must be non-negative");
  if (c.control_grid_steps < 1) fail("control_grid_steps must be at least 1");
  if (!(c.bounds.max_uplift_c >= 0.0 && c.bounds.max_extra_light_h >= 0.0)) {
    fail("control bounds must be non-negative");
  }
  if (!(c.placement.waypoint_t >= 0.0 && c.placement.waypoint_t <= 1.0)) {
    fail("waypoint_t must be in [0, 1]");
  }
}

RegionLabels required_labels(std::span<const RegionFeatures> features, CoverageLabel required) {
  RegionLabels out;
  for (const auto& f : features) out[f.region] = f.crop_cells > 0 ? required : CoverageLabel::Low;
  return out;
}

double coverage_loss(const RegionLabels& observed, const RegionLabels& required) {
  if (observed.size() != required.size() ||
      !std::equal(observed.begin(), observed.end(), required.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw Error("RegionSetMismatch", "observed and required labels cover different regions");
  }
  double loss = 0.0;
  auto req = required.begin();
  for (const auto& [region, label] : observed) {
    loss += std::max(0, rank(req->second) - rank(label));
    ++req;
  }
  return loss;
}

EnvControl optimize_env_control(const LinearModel& model, const WeatherSeries& weather,
                                int start_day, int end_day, const ControlBounds& bounds,
                                int grid_steps) {
  EnvControl best{0.0, 0.0, start_day, end_day};
  double best_value = -std::numeric_limits<double>::infinity();
  for (double uplift : axis(bounds.max_uplift_c, grid_steps)) {
    for (double light : axis(bounds.max_extra_light_h, grid_steps)) {
      double total = 0.0;
      for (int day = start_day; day <= end_day; ++day) {
        const auto& w = weather.at(day);
        const auto x = daily_features(w.max_temp_c + uplift, w.sunshine_h + light, day);
        total += std::max(0.0, predict(model, x));
      }
      if (total > best_value) {
        best_value = total;
        best.temp_uplift_c = uplift;
        best.extra_light_h = light;
      }
    }
  }
  return best;
}

FiOutcome run_fi_loop(const SeasonSetup& setup, const Classifier& classifier,
                      const UserConfig& config, std::uint64_t seed) {
  validate(config);
  const RegionTiling tiling = tile_regions(setup.grid, config.region_rows, config.region_cols);
  const int start = setup.colony.season_start;
  const int end = setup.colony.season_end;

  FiOutcome out(setup.grid);
  out.baseline = run_season(setup, std::nullopt, seed);

  const auto samples = season_samples(out.baseline);
  const auto split = split_train_test(samples, seed);
  out.monitor = fit(split.train, daily_feature_names());
  try {
    out.monitor_test_r2 = r_squared(out.monitor, split.test);
  } catch (const Error&) {
    out.monitor_test_r2.reset();
  }

  Evaluation current = evaluate(out.baseline, setup.grid, tiling, classifier, config);
  out.trace.push_back(trace_row(0, current, out.baseline, 0, true));
  out.final_season = out.baseline;

  SeasonSetup trial = setup;
  LinearModel model = out.monitor;
  const double mean_nectar = mean_crop_nectar(derive_patches(setup.grid, setup.patches));

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    if (current.loss <= config.loss_tolerance) break;

    const std::size_t placed = out.plan.placed_patches.size();
    const std::size_t budget =
        std::min(config.patches_per_iteration,
                 config.max_artificial_patches - std::min(placed, config.max_artificial_patches));
    const auto required = required_labels(current.features, config.required_label);
    const auto proposals =
        propose_patches(current.features, deficits(current.labels, required), out.final_grid,
                        budget, config.placement, mean_nectar);

    if (config.refit_monitor && iteration > 1) {
      model = fit(season_samples(out.final_season), daily_feature_names());
    }
    const auto control = as_control(
        optimize_env_control(model, setup.weather, start, end, config.bounds, config.control_grid_steps));
    if (proposals.empty() && control == out.plan.env_control) break;

    trial.grid = apply_proposals(out.final_grid, proposals);
    SeasonRecord season = run_season(trial, control, seed);
    Evaluation next = evaluate(season, trial.grid, tiling, classifier, config);
    const bool accepted =
        next.loss < current.loss && season.totals.total_visits >= out.baseline.totals.total_visits;
    out.trace.push_back(trace_row(iteration, next, season, placed + proposals.size(), accepted));
    if (!accepted) break;

    out.final_grid = trial.grid;
    out.final_season = std::move(season);
    out.plan.placed_patches.insert(out.plan.placed_patches.end(), proposals.begin(),
                                   proposals.end());
    out.plan.env_control = control;
    current = std::move(next);
  }

  out.plan.iterations_used = out.trace.size();
  out.plan.final_loss = current.loss;
  out.final_features = std::move(current.features);
  out.final_labels = std::move(current.labels);
  return out;
}

std::string loop_trace_csv(std::span<const LoopIteration> trace) {
  std::string out = "iteration,loss,covered_area_frac,detected_frac,total_visits,patches,accepted\n";
  for (const auto& t : trace) {
    out += std::to_string(t.iteration) + ',' + format_double(t.loss) + ',' +
           format_double(t.covered_area_fraction) + ',' + format_double(t.detected_fraction) + ',' +
           std::to_string(t.total_visits) + ',' + std::to_string(t.patches_placed) + ',' +
           (t.accepted ? "1" : "0") + '\n';
  }
  return out;
}

std::string fi_control_csv(const FiPlan& plan) {
  const EnvControl c = plan.env_control.value_or(EnvControl{});
  std::string out = "key,value\n";
  out += "temp_uplift_c," + format_double(plan.env_control ? c.temp_uplift_c : 0.0) + '\n';
  out += "extra_light_h," + format_double(plan.env_control ? c.extra_light_h : 0.0) + '\n';
  out += "start_day," + std::to_string(plan.env_control ? c.start_day : 0) + '\n';
  out += "end_day," + std::to_string(plan.env_control ? c.end_day : 0) + '\n';
  out += "patches," + std::to_string(plan.placed_patches.size()) + '\n';
  out += "iterations_used," + std::to_string(plan.iterations_used) + '\n';
  out += "final_loss," + format_double(plan.final_loss) + '\n';
  return out;
}

}  // namespace beefi
