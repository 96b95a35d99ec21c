#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "beefi/landscape.hpp"

namespace beefi {

/// Scout movement and sensing. Scouts perform a correlated random walk
/// from the hive; a successful detection makes the scout fly to the patch,
/// dwell there, and then carry on exploring with the heading it arrived on.
/// Artificial patches act as relays instead: after the dwell the scout
/// leaves along the hive -> patch direction.
struct ScoutParams {
  int n_scouts = 200;
  int steps_per_hour = 4;
  double step_length = 1.0;       // cells per step
  double turn_sigma = 0.5;        // radians, per-step heading noise
  double max_range_m = 6000.0;    // leash around the hive
  int detection_radius = 1;       // cells (Euclidean)
  int dwell_steps = 10;
  int max_retries = 8;            // re-sampled headings before reflecting
  bool attraction = true;         // bias-and-dwell toward detected patches
  double attraction_noise = 0.15; // radians of heading jitter while approaching
};

/// Throws BadScoutParams when a field is out of range.
void validate(const ScoutParams& params);

struct ScoutReport {
  int width = 0;
  int height = 0;
  std::size_t traversable_cells = 0;
  std::size_t patch_count = 0;
  std::vector<std::uint32_t> coverage;  // cell entries per cell
  std::vector<int> detected;            // sorted patch ids
  double covered_area_fraction = 0.0;
  double detected_patch_fraction = 0.0;
  std::vector<std::vector<Point>> trajectories;  // meters, one polyline per scout

  /// Zero coverage and no detections on `grid`.
  static ScoutReport empty(const CellGrid& grid, std::size_t patch_count);

  std::size_t covered_cells() const noexcept;
  void recompute_fractions() noexcept;

  friend bool operator==(const ScoutReport&, const ScoutReport&) = default;
};

/// Runs every scout for floor(hours * steps_per_hour) steps. Scout i draws
/// from the substream derive_seed(seed, i), so a run is bitwise
/// reproducible and each scout's path prefix does not depend on `hours`.
/// A patch is detected on an encounter (the scout enters its detection
/// radius from outside) with probability patch.detection_probability; one
/// draw per encounter.
ScoutReport run_scouting(const CellGrid& grid, std::span<const Patch> patches,
                         const ScoutParams& params, double hours, std::uint64_t seed,
                         bool record_paths = false);

/// Cellwise coverage sum, union of detections, fractions recomputed,
/// trajectories concatenated. Throws DimensionMismatch.
ScoutReport merge_reports(const ScoutReport& a, const ScoutReport& b);

/// Coverage grid as a CSV matrix (one row per grid row, no header).
std::string coverage_csv(const ScoutReport& report);

/// scout_id,step,x,y rows in meters; step 0 is the hive.
std::string trajectories_csv(const ScoutReport& report);

}  // namespace beefi
