#include "beefi/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "beefi/error.hpp"
#include "beefi/format.hpp"

namespace beefi {

namespace {

bool symbol_kind(char c, CellKind& out) {
  switch (c) {
    case '.': out = CellKind::Empty; return true;
    case 'Y': out = CellKind::Crop; return true;
    case '#': out = CellKind::Obstacle; return true;
    case 'H': out = CellKind::Hive; return true;
    case 'A': out = CellKind::ArtificialFood; return true;
    default: return false;
  }
}

bool is_header(std::string_view line) {
  return !line.empty() && line.front() == '#' &&
         line.find_first_of("= \t") != std::string_view::npos;
}

std::string where(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

// 4-connected components of cells with the given kind, in row-major order
// of each component's first cell.
std::vector<std::vector<std::size_t>> components(const CellGrid& grid, CellKind kind) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<char> seen(grid.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < grid.size(); ++start) {
    if (seen[start] || grid.kind(start) != kind) continue;
    std::vector<std::size_t> members;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t cell = stack.back();
      stack.pop_back();
      members.push_back(cell);
      const int x = grid.column(cell);
      const int y = grid.row(cell);
      constexpr int dx[] = {1, -1, 0, 0};
      constexpr int dy[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        if (!grid.in_bounds(nx, ny)) continue;
        const std::size_t next = grid.index(nx, ny);
        if (!seen[next] && grid.kind(next) == kind) {
          seen[next] = 1;
          stack.push_back(next);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

char cell_symbol(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Empty: return '.';
    case CellKind::Crop: return 'Y';
    case CellKind::Obstacle: return '#';
    case CellKind::Hive: return 'H';
    case CellKind::ArtificialFood: return 'A';
  }
  return '?';
}

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

CellGrid::CellGrid(int width, int height, double cell_size_m, std::vector<CellKind> cells)
    : width_(width), height_(height), cell_size_(cell_size_m), cells_(std::move(cells)) {
  if (width_ <= 0 || height_ <= 0) throw Error("EmptyMap", "grid has no cells");
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
    throw Error("BadHeader", "cell_size_m must be positive");
  }
  if (cells_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
    throw Error("RaggedRows", "cell count does not match width * height");
  }
  const auto hives = count(CellKind::Hive);
  if (hives == 0) throw Error("NoHive", "map has no 'H' cell");
  if (hives > 1) throw Error("MultipleHives", "map has " + std::to_string(hives) + " 'H' cells");
  hive_ = static_cast<std::size_t>(
      std::find(cells_.begin(), cells_.end(), CellKind::Hive) - cells_.begin());
}

std::size_t CellGrid::count(CellKind kind) const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), kind));
}

Point CellGrid::cell_center(std::size_t index) const noexcept {
  return {(column(index) + 0.5) * cell_size_, (row(index) + 0.5) * cell_size_};
}

CellGrid CellGrid::with_cell(std::size_t index, CellKind kind) const {
  auto cells = cells_;
  cells.at(index) = kind;
  return CellGrid(width_, height_, cell_size_, std::move(cells));
}

CellGrid parse_map(std::string_view text) {
  double cell_size = 1.0;
  std::vector<CellKind> cells;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t hive_line = 0;
  std::size_t hive_column = 0;

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (height == 0 && is_header(line)) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) continue;  // plain comment
      const auto key = trim(line.substr(1, eq - 1));
      const auto value = trim(line.substr(eq + 1));
      if (key == "cell_size_m") {
        try {
          cell_size = parse_double(value);
        } catch (const Error&) {
          throw Error("BadHeader", "cell_size_m is not a number at " + where(line_no, eq + 2));
        }
        if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
          throw Error("BadHeader", "cell_size_m must be positive at " + where(line_no, eq + 2));
        }
      }
      continue;
    }
    if (line.empty()) {
      // Blank lines are only tolerated at the end of the file.
      const bool rest_blank = std::all_of(lines.begin() + static_cast<std::ptrdiff_t>(i),
                                          lines.end(), [](std::string_view l) { return l.empty(); });
      if (rest_blank) break;
      throw Error("RaggedRows", "blank row at " + where(line_no, 1));
    }
    if (height == 0) {
      width = line.size();
    } else if (line.size() != width) {
      throw Error("RaggedRows", "row of length " + std::to_string(line.size()) + " (expected " +
                                    std::to_string(width) + ") at " + where(line_no, 1));
    }
    for (std::size_t col = 0; col < line.size(); ++col) {
      CellKind kind{};
      if (!symbol_kind(line[col], kind)) {
        throw Error("UnknownSymbol",
                    std::string("symbol '") + line[col] + "' at " + where(line_no, col + 1));
      }
      if (kind == CellKind::Hive) {
        if (hive_line != 0) {
          throw Error("MultipleHives", "second 'H' at " + where(line_no, col + 1) +
                                           " (first at " + where(hive_line, hive_column) + ")");
        }
        hive_line = line_no;
        hive_column = col + 1;
      }
      cells.push_back(kind);
    }
    ++height;
  }
  if (height == 0) throw Error("EmptyMap", "map has no grid rows");
  if (hive_line == 0) throw Error("NoHive", "map has no 'H' cell");
  return CellGrid(static_cast<int>(width), static_cast<int>(height), cell_size, std::move(cells));
}

std::string serialize_map(const CellGrid& grid) {
  std::string out = "# cell_size_m=" + format_double(grid.cell_size()) + "\n";
  out.reserve(out.size() + grid.size() + static_cast<std::size_t>(grid.height()));
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) out += cell_symbol(grid.kind(x, y));
    out += '\n';
  }
  return out;
}

double detection_probability(std::size_t area_cells, double kappa) noexcept {
  return -std::expm1(-kappa * static_cast<double>(area_cells));
}

std::vector<Patch> derive_patches(const CellGrid& grid, const PatchParams& params) {
  const double cell_area = grid.cell_size() * grid.cell_size();
  const Point hive = grid.hive_position();

  auto make_patch = [&](int id, std::vector<std::size_t> members, bool artificial) {
    Patch patch;
    patch.id = id;
    patch.artificial = artificial;
    double sx = 0.0;
    double sy = 0.0;
    for (auto cell : members) {
      const Point c = grid.cell_center(cell);
      sx += c.x;
      sy += c.y;
    }
    const auto n = static_cast<double>(members.size());
    patch.centroid = {sx / n, sy / n};
    patch.area_m2 = n * cell_area;
    patch.distance_from_hive_m = distance(patch.centroid, hive);
    patch.cell_members = std::move(members);
    return patch;
  };

  std::vector<Patch> patches;
  int next_id = 0;
  for (auto& members : components(grid, CellKind::Crop)) {
    Patch patch = make_patch(next_id++, std::move(members), false);
    patch.nectar_l = patch.area_m2 * params.nectar_l_per_m2;
    patch.pollen_g = patch.area_m2 * params.pollen_g_per_m2;
    patch.detection_probability = detection_probability(patch.cell_members.size(), params.kappa);
    patches.push_back(std::move(patch));
  }
  const double artificial_nectar = params.artificial_nectar_fraction * mean_crop_nectar(patches);
  for (auto& members : components(grid, CellKind::ArtificialFood)) {
    Patch patch = make_patch(next_id++, std::move(members), true);
    patch.nectar_l = artificial_nectar;
    patch.pollen_g = 0.0;
    patch.detection_probability = std::clamp(params.artificial_detection_probability, 0.0, 1.0);
    patches.push_back(std::move(patch));
  }
  return patches;
}

double mean_crop_nectar(std::span<const Patch> patches) noexcept {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : patches) {
    if (p.artificial) continue;
    sum += p.nectar_l;
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

std::string foodflow_csv(std::span<const Patch> patches) {
  std::string out = "id,x_m,y_m,size_m2,dist_m,nectar_l,pollen_g,detect_prob,artificial\n";
  for (const auto& p : patches) {
    out += std::to_string(p.id) + ',' + format_double(p.centroid.x) + ',' +
           format_double(p.centroid.y) + ',' + format_double(p.area_m2) + ',' +
           format_double(p.distance_from_hive_m) + ',' + format_double(p.nectar_l) + ',' +
           format_double(p.pollen_g) + ',' + format_double(p.detection_probability) + ',' +
           (p.artificial ? "1" : "0") + '\n';
  }
  return out;
}

RegionTiling tile_regions(const CellGrid& grid, int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error("ZeroRegions", "tiling needs at least one row and column");
  if (rows > grid.height() || cols > grid.width()) {
    throw Error("TooManyRegions", "tiling finer than the grid");
  }
  const int band_h = grid.height() / rows;
  const int band_w = grid.width() / cols;
  RegionTiling tiling{rows, cols, std::vector<int>(grid.size())};
  for (int y = 0; y < grid.height(); ++y) {
    const int r = std::min(y / band_h, rows - 1);
    for (int x = 0; x < grid.width(); ++x) {
      const int c = std::min(x / band_w, cols - 1);
      tiling.region_of_cell[grid.index(x, y)] = r * cols + c;
    }
  }
  return tiling;
}

}  // namespace beefi
