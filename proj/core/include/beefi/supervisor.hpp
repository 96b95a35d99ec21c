#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beefi/control.hpp"
#include "beefi/foraging.hpp"
#include "beefi/monitor.hpp"

namespace beefi {

struct UserConfig {
  CoverageLabel required_label = CoverageLabel::Normal;  // for regions holding crops
  std::size_t max_artificial_patches = 92;
  int max_iterations = 40;
  double loss_tolerance = 0.0;
  double w1 = 0.5;
  double w2 = 0.5;
  std::size_t patches_per_iteration = 3;
  ControlBounds bounds;
  int control_grid_steps = 9;
  bool refit_monitor = false;
  PlacementPolicy placement;
  int region_rows = 8;
  int region_cols = 8;
};

/// Throws BadConfig.
void validate(const UserConfig& config);

/// required_label for every region with at least one crop cell; Low (never
/// in deficit) elsewhere.
RegionLabels required_labels(std::span<const RegionFeatures> features, CoverageLabel required);

/// Sum over regions of max(0, rank(required) - rank(observed)). Throws
/// RegionSetMismatch when the two maps cover different regions.
double coverage_loss(const RegionLabels& observed, const RegionLabels& required);

/// Exhaustive grid search over (temp_uplift, extra_light) with grid_steps
/// evenly spaced values per axis in [0, max]. The objective is the sum over
/// the window's days of the model's prediction, each clamped at zero.
/// Ties go to the smaller uplift, then the smaller extra light.
EnvControl optimize_env_control(const LinearModel& model, const WeatherSeries& weather,
                                int start_day, int end_day, const ControlBounds& bounds,
                                int grid_steps);

struct FiPlan {
  std::vector<PatchProposal> placed_patches;
  std::optional<EnvControl> env_control;
  std::size_t iterations_used = 0;
  double final_loss = 0.0;

  friend bool operator==(const FiPlan&, const FiPlan&) = default;
};

/// One evaluated configuration. Row 0 is the baseline.
struct LoopIteration {
  int iteration = 0;
  double loss = 0.0;
  double covered_area_fraction = 0.0;
  double detected_fraction = 0.0;
  std::uint64_t total_visits = 0;
  std::size_t patches_placed = 0;
  bool accepted = false;

  friend bool operator==(const LoopIteration&, const LoopIteration&) = default;
};

struct FiOutcome {
  explicit FiOutcome(CellGrid grid) : final_grid(std::move(grid)) {}

  FiPlan plan;
  std::vector<LoopIteration> trace;
  SeasonRecord baseline;
  SeasonRecord final_season;
  LinearModel monitor;
  std::optional<double> monitor_test_r2;
  CellGrid final_grid;
  std::vector<RegionFeatures> final_features;
  RegionLabels final_labels;
};

/// The closed loop. Baseline season without controls, monitor fit on its
/// days (80/20 split), then per iteration: classify regions from the
/// latest coverage, stop if the loss is within tolerance or nothing is left
/// to try, otherwise add up to patches_per_iteration stepping-stone patches
/// and the monitor's best environmental control and re-run the season.
/// An iteration is kept only if the loss strictly drops and total visits do
/// not fall below the baseline; otherwise it is rolled back and the loop
/// stops.
FiOutcome run_fi_loop(const SeasonSetup& setup, const Classifier& classifier,
                      const UserConfig& config, std::uint64_t seed);

/// iteration,loss,covered_area_frac,detected_frac,total_visits,patches,accepted
std::string loop_trace_csv(std::span<const LoopIteration> trace);

/// key,value rows: temp_uplift_c, extra_light_h, start_day, end_day,
/// patches, iterations_used, final_loss.
std::string fi_control_csv(const FiPlan& plan);

}  // namespace beefi
