#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace beefi {

enum class CellKind : std::uint8_t { Empty, Crop, Obstacle, Hive, ArtificialFood };

/// Map symbol for a cell kind ('.', 'Y', '#', 'H', 'A').
char cell_symbol(CellKind kind) noexcept;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b) noexcept;

/// Rectangular field map. Cell (x, y) has row-major index y * width + x and
/// its center sits at ((x + 0.5) * cell_size, (y + 0.5) * cell_size) meters.
class CellGrid {
 public:
  /// Validates the invariants (positive size, exactly one hive, matching
  /// cell count); throws Error otherwise.
  CellGrid(int width, int height, double cell_size_m, std::vector<CellKind> cells);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double cell_size() const noexcept { return cell_size_; }
  std::size_t size() const noexcept { return cells_.size(); }
  std::span<const CellKind> cells() const noexcept { return cells_; }

  CellKind kind(std::size_t index) const { return cells_.at(index); }
  CellKind kind(int x, int y) const { return cells_.at(index(x, y)); }

  bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  int column(std::size_t index) const noexcept { return static_cast<int>(index % width_); }
  int row(std::size_t index) const noexcept { return static_cast<int>(index / width_); }

  bool traversable(std::size_t index) const { return kind(index) != CellKind::Obstacle; }
  std::size_t traversable_count() const noexcept { return size() - count(CellKind::Obstacle); }
  std::size_t count(CellKind kind) const noexcept;

  std::size_t hive_index() const noexcept { return hive_; }
  Point hive_position() const noexcept { return cell_center(hive_); }
  Point cell_center(std::size_t index) const noexcept;

  /// Copy of this grid with one cell changed. Keeps the single-hive invariant.
  CellGrid with_cell(std::size_t index, CellKind kind) const;

  friend bool operator==(const CellGrid&, const CellGrid&) = default;

 private:
  int width_;
  int height_;
  double cell_size_;
  std::vector<CellKind> cells_;
  std::size_t hive_ = 0;
};

/// Parses the ASCII map format: one row per line using . Y # H A, preceded
/// by optional header lines. A header line starts with '#' and contains '='
/// or a space (grid rows never do), e.g. "# cell_size_m=125". The only
/// recognised key is cell_size_m (default 1). Errors: NoHive, MultipleHives,
/// RaggedRows, UnknownSymbol, EmptyMap, BadHeader.
CellGrid parse_map(std::string_view text);

/// Inverse of parse_map; parse_map(serialize_map(g)) == g.
std::string serialize_map(const CellGrid& grid);

struct PatchParams {
  double kappa = 0.05;                  // detection saturation per cell
  double nectar_l_per_m2 = 0.002;
  double pollen_g_per_m2 = 0.1;
  double artificial_detection_probability = 0.95;
  double artificial_nectar_fraction = 0.1;  // of mean crop patch nectar
};

struct Patch {
  int id = 0;
  Point centroid;
  double area_m2 = 0.0;
  std::vector<std::size_t> cell_members;
  double distance_from_hive_m = 0.0;
  double nectar_l = 0.0;
  double pollen_g = 0.0;
  double detection_probability = 0.0;
  bool artificial = false;
};

/// 1 - exp(-kappa * area_cells).
double detection_probability(std::size_t area_cells, double kappa) noexcept;

/// One patch per 4-connected component of Crop cells, then one per
/// 4-connected cluster of ArtificialFood cells. Crop patches come first and
/// are numbered in row-major order of their first cell, so adding
/// artificial food never renumbers crops.
///
/// Artificial clusters use the configured detection probability and a
/// nectar load of artificial_nectar_fraction times the mean crop patch
/// nectar (zero when there are no crops); they carry no pollen.
std::vector<Patch> derive_patches(const CellGrid& grid, const PatchParams& params);

/// Mean nectar over non-artificial patches; 0 for none.
double mean_crop_nectar(std::span<const Patch> patches) noexcept;

/// CSV with header id,x_m,y_m,size_m2,dist_m,nectar_l,pollen_g,detect_prob,artificial.
std::string foodflow_csv(std::span<const Patch> patches);

struct RegionTiling {
  int rows = 0;
  int cols = 0;
  std::vector<int> region_of_cell;

  int region_count() const noexcept { return rows * cols; }
};

/// Splits the grid into rows x cols rectangles. Each axis uses the floor
/// split: band i spans [i * (n / k), (i + 1) * (n / k)), and the last band
/// also takes the remainder. Throws ZeroRegions for rows or cols < 1 and
/// TooManyRegions when a band would be empty.
RegionTiling tile_regions(const CellGrid& grid, int rows, int cols);

}  // namespace beefi
