#include "beefi/scouting.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>

#include "beefi/error.hpp"
#include "beefi/format.hpp"
#include "beefi/rng.hpp"

namespace beefi {

namespace {

constexpr double kPi = std::numbers::pi;

// For every cell, the indices (into the patch span) of patches with a member
// cell within `radius` cells. Stored CSR-style.
struct SensingIndex {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> patch_index;

  std::span<const std::uint32_t> at(std::size_t cell) const noexcept {
    return {patch_index.data() + offsets[cell], offsets[cell + 1] - offsets[cell]};
  }
};

SensingIndex build_sensing_index(const CellGrid& grid, std::span<const Patch> patches,
                                 int radius) {
  std::vector<std::vector<std::uint32_t>> lists(grid.size());
  const int r2 = radius * radius;
  for (std::size_t p = 0; p < patches.size(); ++p) {
    for (auto member : patches[p].cell_members) {
      const int mx = grid.column(member);
      const int my = grid.row(member);
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          if (dx * dx + dy * dy > r2 || !grid.in_bounds(mx + dx, my + dy)) continue;
          auto& list = lists[grid.index(mx + dx, my + dy)];
          if (list.empty() || list.back() != p) list.push_back(static_cast<std::uint32_t>(p));
        }
      }
    }
  }
  SensingIndex index;
  index.offsets.reserve(grid.size() + 1);
  index.offsets.push_back(0);
  for (auto& list : lists) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    index.patch_index.insert(index.patch_index.end(), list.begin(), list.end());
    index.offsets.push_back(static_cast<std::uint32_t>(index.patch_index.size()));
  }
  return index;
}

double wrap_angle(double a) noexcept { return std::remainder(a, 2.0 * kPi); }

struct Scout {
  double x = 0.0;  // cell units
  double y = 0.0;
  double heading = 0.0;
  std::size_t cell = 0;
  bool has_target = false;
  double tx = 0.0;
  double ty = 0.0;
  bool waypoint = false;  // target is an artificial patch
  std::uint32_t target = 0;
  int approach_left = 0;
  int dwell_left = 0;
  std::vector<std::uint32_t> relayed;  // waypoints already passed; never re-targeted
};

class ScoutRun {
 public:
  ScoutRun(const CellGrid& grid, std::span<const Patch> patches, const ScoutParams& params,
           const SensingIndex& sensing, ScoutReport& report, std::vector<char>& detected)
      : grid_(grid),
        patches_(patches),
        params_(params),
        sensing_(sensing),
        report_(report),
        detected_(detected),
        range_cells_(params.max_range_m / grid.cell_size()),
        hive_x_(grid.column(grid.hive_index()) + 0.5),
        hive_y_(grid.row(grid.hive_index()) + 0.5) {}

  void fly(std::uint64_t seed, long steps, std::vector<Point>* path) {
    CounterRng rng(seed);
    Scout s;
    s.x = hive_x_;
    s.y = hive_y_;
    s.cell = grid_.hive_index();
    s.heading = rng.uniform(-kPi, kPi);
    ++report_.coverage[s.cell];
    if (path) path->push_back(to_meters(s.x, s.y));
    encounter(s, {}, sensing_.at(s.cell), rng);

    for (long step = 0; step < steps; ++step) {
      if (s.dwell_left > 0) {
        --s.dwell_left;
      } else {
        if (choose_heading(s, rng)) move(s, rng);
      }
      if (path) path->push_back(to_meters(s.x, s.y));
    }
  }

 private:
  Point to_meters(double x, double y) const {
    return {x * grid_.cell_size(), y * grid_.cell_size()};
  }

  // False when the scout has just landed on its target and stays put.
  bool choose_heading(Scout& s, CounterRng& rng) {
    const double from_hive = std::hypot(s.x - hive_x_, s.y - hive_y_);
    if (from_hive > range_cells_) {
      s.has_target = false;
      s.heading = std::atan2(hive_y_ - s.y, hive_x_ - s.x) + params_.turn_sigma * rng.normal();
      return true;
    }
    if (s.has_target) {
      const double dx = s.tx - s.x;
      const double dy = s.ty - s.y;
      if (std::hypot(dx, dy) <= 0.5 * params_.step_length || s.approach_left <= 0) {
        const bool arrived = s.approach_left > 0;
        s.has_target = false;
        if (arrived && s.waypoint) {
          // Artificial patches are passed through: the scout leaves at once,
          // heading away from the hive.
          s.heading = std::atan2(s.ty - hive_y_, s.tx - hive_x_);
          s.relayed.push_back(s.target);
          return true;
        }
        if (arrived) {
          s.dwell_left = params_.dwell_steps;
          return false;
        }
      } else {
        --s.approach_left;
        s.heading = std::atan2(dy, dx) + params_.attraction_noise * rng.normal();
        return true;
      }
    }
    s.heading = wrap_angle(s.heading + params_.turn_sigma * rng.normal());
    return true;
  }

  // Checks the straight path in half-cell samples; fills `cells` with the
  // cells entered along the way.
  bool path_clear(const Scout& s, double heading, std::vector<std::size_t>& cells,
                  double& nx, double& ny) const {
    cells.clear();
    const int samples = std::max(1, static_cast<int>(std::ceil(params_.step_length / 0.5)));
    const double dx = std::cos(heading) * params_.step_length;
    const double dy = std::sin(heading) * params_.step_length;
    std::size_t last = s.cell;
    for (int k = 1; k <= samples; ++k) {
      const double px = s.x + dx * k / samples;
      const double py = s.y + dy * k / samples;
      const int cx = static_cast<int>(std::floor(px));
      const int cy = static_cast<int>(std::floor(py));
      if (!grid_.in_bounds(cx, cy)) return false;
      const std::size_t cell = grid_.index(cx, cy);
      if (!grid_.traversable(cell)) return false;
      if (cell != last) {
        cells.push_back(cell);
        last = cell;
      }
    }
    nx = s.x + dx;
    ny = s.y + dy;
    return true;
  }

  void move(Scout& s, CounterRng& rng) {
    double heading = s.heading;
    double nx = 0.0;
    double ny = 0.0;
    bool ok = path_clear(s, heading, entered_, nx, ny);
    for (int retry = 0; !ok && retry < params_.max_retries; ++retry) {
      heading = s.heading + 0.5 * kPi * rng.normal();
      ok = path_clear(s, heading, entered_, nx, ny);
    }
    if (!ok) {
      s.heading = wrap_angle(s.heading + kPi);
      return;
    }
    s.heading = wrap_angle(heading);
    s.x = nx;
    s.y = ny;
    for (auto cell : entered_) {
      ++report_.coverage[cell];
      encounter(s, sensing_.at(s.cell), sensing_.at(cell), rng);
      s.cell = cell;
    }
  }

  // Patches in `now` but not in `before` are fresh encounters.
  void encounter(Scout& s, std::span<const std::uint32_t> before,
                 std::span<const std::uint32_t> now, CounterRng& rng) {
    auto b = before.begin();
    for (auto p : now) {
      while (b != before.end() && *b < p) ++b;
      if (b != before.end() && *b == p) continue;
      const Patch& patch = patches_[p];
      if (rng.uniform() >= patch.detection_probability) continue;
      detected_[p] = 1;
      if (params_.attraction && !s.has_target && s.dwell_left == 0 &&
          std::find(s.relayed.begin(), s.relayed.end(), p) == s.relayed.end()) {
        aim_at(s, patch, p);
      }
    }
  }

  void aim_at(Scout& s, const Patch& patch, std::uint32_t id) {
    double best = std::numeric_limits<double>::infinity();
    for (auto member : patch.cell_members) {
      const double cx = grid_.column(member) + 0.5;
      const double cy = grid_.row(member) + 0.5;
      const double d = std::hypot(cx - s.x, cy - s.y);
      if (d < best) {
        best = d;
        s.tx = cx;
        s.ty = cy;
      }
    }
    s.has_target = true;
    s.waypoint = patch.artificial;
    s.target = id;
    s.approach_left =
        static_cast<int>(std::ceil(4.0 * (best + 1.0) / params_.step_length)) + 10;
  }

  const CellGrid& grid_;
  std::span<const Patch> patches_;
  const ScoutParams& params_;
  const SensingIndex& sensing_;
  ScoutReport& report_;
  std::vector<char>& detected_;
  double range_cells_;
  double hive_x_;
  double hive_y_;
  std::vector<std::size_t> entered_;
};

}  // namespace

void validate(const ScoutParams& p) {
  auto fail = [](const char* what) { throw Error("BadScoutParams", what); };
  if (p.n_scouts <= 0) fail("n_scouts must be positive");
  if (p.steps_per_hour <= 0) fail("steps_per_hour must be positive");
  if (!(p.step_length > 0.0)) fail("step_length must be positive");
  if (!(p.turn_sigma > 0.0 && p.turn_sigma <= kPi)) fail("turn_sigma must be in (0, pi]");
  if (!(p.max_range_m > 0.0)) fail("max_range_m must be positive");
  if (p.detection_radius <= 0) fail("detection_radius must be positive");
  if (p.dwell_steps < 0) fail("dwell_steps must be non-negative");
  if (p.max_retries < 0) fail("max_retries must be non-negative");
  if (!(p.attraction_noise >= 0.0)) fail("attraction_noise must be non-negative");
}

ScoutReport ScoutReport::empty(const CellGrid& grid, std::size_t patch_count) {
  ScoutReport r;
  r.width = grid.width();
  r.height = grid.height();
  r.traversable_cells = grid.traversable_count();
  r.patch_count = patch_count;
  r.coverage.assign(grid.size(), 0);
  return r;
}

std::size_t ScoutReport::covered_cells() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coverage.begin(), coverage.end(), [](std::uint32_t c) { return c > 0; }));
}

void ScoutReport::recompute_fractions() noexcept {
  covered_area_fraction =
      traversable_cells == 0
          ? 0.0
          : static_cast<double>(covered_cells()) / static_cast<double>(traversable_cells);
  detected_patch_fraction =
      patch_count == 0 ? 0.0
                       : static_cast<double>(detected.size()) / static_cast<double>(patch_count);
}

ScoutReport run_scouting(const CellGrid& grid, std::span<const Patch> patches,
                         const ScoutParams& params, double hours, std::uint64_t seed,
                         bool record_paths) {
  validate(params);
  ScoutReport report = ScoutReport::empty(grid, patches.size());
  const long steps =
      hours > 0.0 ? static_cast<long>(std::floor(hours * params.steps_per_hour + 1e-9)) : 0;
  if (steps > 0) {
    const SensingIndex sensing = build_sensing_index(grid, patches, params.detection_radius);
    std::vector<char> detected(patches.size(), 0);
    ScoutRun run(grid, patches, params, sensing, report, detected);
    if (record_paths) report.trajectories.resize(static_cast<std::size_t>(params.n_scouts));
    for (int i = 0; i < params.n_scouts; ++i) {
      auto* path = record_paths ? &report.trajectories[static_cast<std::size_t>(i)] : nullptr;
      run.fly(derive_seed(seed, static_cast<std::uint64_t>(i)), steps, path);
    }
    for (std::size_t p = 0; p < patches.size(); ++p) {
      if (detected[p]) report.detected.push_back(patches[p].id);
    }
    std::sort(report.detected.begin(), report.detected.end());
  }
  report.recompute_fractions();
  return report;
}

ScoutReport merge_reports(const ScoutReport& a, const ScoutReport& b) {
  if (a.width != b.width || a.height != b.height || a.traversable_cells != b.traversable_cells ||
      a.patch_count != b.patch_count || a.coverage.size() != b.coverage.size()) {
    throw Error("DimensionMismatch", "reports come from different grids or patch sets");
  }
  ScoutReport out = a;
  for (std::size_t i = 0; i < out.coverage.size(); ++i) out.coverage[i] += b.coverage[i];
  out.detected.clear();
  std::set_union(a.detected.begin(), a.detected.end(), b.detected.begin(), b.detected.end(),
                 std::back_inserter(out.detected));
  out.trajectories.insert(out.trajectories.end(), b.trajectories.begin(), b.trajectories.end());
  out.recompute_fractions();
  return out;
}

std::string coverage_csv(const ScoutReport& report) {
  std::string out;
  for (int y = 0; y < report.height; ++y) {
    for (int x = 0; x < report.width; ++x) {
      if (x) out += ',';
      out += std::to_string(report.coverage[static_cast<std::size_t>(y) * report.width + x]);
    }
    out += '\n';
  }
  return out;
}

std::string trajectories_csv(const ScoutReport& report) {
  std::string out = "scout_id,step,x,y\n";
  for (std::size_t s = 0; s < report.trajectories.size(); ++s) {
    const auto& path = report.trajectories[s];
    for (std::size_t k = 0; k < path.size(); ++k) {
      out += std::to_string(s) + ',' + std::to_string(k) + ',' + format_double(path[k].x) + ',' +
             format_double(path[k].y) + '\n';
    }
  }
  return out;
}

}  // namespace beefi
