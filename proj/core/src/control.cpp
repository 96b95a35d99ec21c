#include "beefi/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "beefi/error.hpp"
#include "beefi/format.hpp"
#include "beefi/rng.hpp"

namespace beefi {

const char* label_name(CoverageLabel label) noexcept {
  switch (label) {
    case CoverageLabel::Low: return "low";
    case CoverageLabel::Normal: return "normal";
    case CoverageLabel::High: return "high";
  }
  return "?";
}

std::vector<RegionFeatures> extract_features(const ScoutReport& report, const RegionTiling& tiling,
                                             const CellGrid& grid) {
  if (tiling.region_of_cell.size() != grid.size() || report.coverage.size() != grid.size() ||
      report.width != grid.width() || report.height != grid.height()) {
    throw Error("TilingMismatch", "tiling, report and grid sizes differ");
  }
  struct Acc {
    std::size_t traversable = 0;
    std::size_t visited = 0;
    std::size_t crops = 0;
    double visits = 0.0;
    double sx = 0.0;
    double sy = 0.0;
  };
  std::vector<Acc> acc(static_cast<std::size_t>(tiling.region_count()));
  for (std::size_t cell = 0; cell < grid.size(); ++cell) {
    if (!grid.traversable(cell)) continue;
    auto& a = acc.at(static_cast<std::size_t>(tiling.region_of_cell[cell]));
    ++a.traversable;
    if (report.coverage[cell] > 0) ++a.visited;
    if (grid.kind(cell) == CellKind::Crop) ++a.crops;
    a.visits += report.coverage[cell];
    const Point c = grid.cell_center(cell);
    a.sx += c.x;
    a.sy += c.y;
  }
  std::vector<RegionFeatures> out;
  const Point hive = grid.hive_position();
  for (std::size_t r = 0; r < acc.size(); ++r) {
    const auto& a = acc[r];
    if (a.traversable == 0) continue;
    const auto n = static_cast<double>(a.traversable);
    RegionFeatures f;
    f.region = static_cast<int>(r);
    f.visit_density = a.visits / n;
    f.coverage_fraction = static_cast<double>(a.visited) / n;
    f.centroid = {a.sx / n, a.sy / n};
    f.distance_to_hive_m = distance(f.centroid, hive);
    f.traversable_cells = a.traversable;
    f.crop_cells = a.crops;
    out.push_back(f);
  }
  return out;
}

std::array<double, kSoftmaxFeatures> softmax_inputs(const RegionFeatures& f) noexcept {
  return {f.visit_density, f.coverage_fraction, f.distance_to_hive_m};
}

Classifier Classifier::threshold(double low_cut, double high_cut) {
  if (!(low_cut < high_cut)) throw Error("BadClassifier", "low_cut must be below high_cut");
  Classifier c;
  c.kind_ = Kind::Threshold;
  c.low_cut_ = low_cut;
  c.high_cut_ = high_cut;
  return c;
}

Classifier Classifier::softmax(const Weights& weights, const std::array<double, kLabelCount>& bias) {
  Classifier c;
  c.kind_ = Kind::Softmax;
  c.weights_ = weights;
  c.bias_ = bias;
  return c;
}

std::array<double, kLabelCount> Classifier::scores(const RegionFeatures& features) const noexcept {
  const auto x = softmax_inputs(features);
  std::array<double, kLabelCount> s{};
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    s[k] = bias_[k];
    for (std::size_t j = 0; j < kSoftmaxFeatures; ++j) s[k] += weights_[k][j] * x[j];
  }
  return s;
}

CoverageLabel Classifier::classify(const RegionFeatures& features) const noexcept {
  if (kind_ == Kind::Threshold) {
    if (features.coverage_fraction < low_cut_) return CoverageLabel::Low;
    if (features.coverage_fraction > high_cut_) return CoverageLabel::High;
    return CoverageLabel::Normal;
  }
  const auto s = scores(features);
  std::size_t best = 0;
  for (std::size_t k = 1; k < kLabelCount; ++k) {
    if (s[k] > s[best]) best = k;
  }
  return static_cast<CoverageLabel>(best);
}

RegionLabels classify_all(const Classifier& classifier, std::span<const RegionFeatures> features) {
  RegionLabels labels;
  for (const auto& f : features) labels[f.region] = classifier.classify(f);
  return labels;
}

double accuracy(const Classifier& classifier, std::span<const LabeledRegion> labeled) {
  if (labeled.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : labeled) hits += classifier.classify(s.features) == s.label ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(labeled.size());
}

std::vector<LabeledRegion> synthetic_regions(std::size_t n, std::uint64_t seed,
                                             const Classifier& rule, double max_distance_m) {
  CounterRng rng(derive_seed(seed, stream::kRegions));
  std::vector<LabeledRegion> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RegionFeatures f;
    f.region = static_cast<int>(i);
    f.coverage_fraction = rng.uniform();
    f.visit_density = f.coverage_fraction * rng.uniform(1.0, 6.0);
    f.distance_to_hive_m = rng.uniform(0.0, max_distance_m);
    out.push_back({f, rule.classify(f)});
  }
  return out;
}

TrainedClassifier train_softmax(std::span<const LabeledRegion> labeled, std::uint64_t seed,
                                const SoftmaxOptions& options) {
  std::array<std::size_t, kLabelCount> per_class{};
  for (const auto& s : labeled) ++per_class[static_cast<std::size_t>(rank(s.label))];
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    if (per_class[k] < options.min_per_class) {
      throw Error("ClassImbalance", std::string("class '") +
                                        label_name(static_cast<CoverageLabel>(k)) + "' has " +
                                        std::to_string(per_class[k]) + " samples, need " +
                                        std::to_string(options.min_per_class));
    }
  }

  const std::size_t n = labeled.size();
  std::vector<std::array<double, kSoftmaxFeatures>> x(n);
  std::array<double, kSoftmaxFeatures> mean{};
  std::array<double, kSoftmaxFeatures> sd{};
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = softmax_inputs(labeled[i].features);
    for (std::size_t j = 0; j < kSoftmaxFeatures; ++j) mean[j] += x[i][j];
  }
  for (auto& m : mean) m /= static_cast<double>(n);
  for (const auto& row : x) {
    for (std::size_t j = 0; j < kSoftmaxFeatures; ++j) sd[j] += (row[j] - mean[j]) * (row[j] - mean[j]);
  }
  for (auto& s : sd) {
    s = std::sqrt(s / static_cast<double>(n));
    if (!(s > 0.0)) s = 1.0;
  }
  for (auto& row : x) {
    for (std::size_t j = 0; j < kSoftmaxFeatures; ++j) row[j] = (row[j] - mean[j]) / sd[j];
  }

  CounterRng rng(derive_seed(seed, stream::kClassifier));
  Classifier::Weights w{};
  std::array<double, kLabelCount> b{};
  for (auto& row : w) {
    for (auto& v : row) v = 0.01 * rng.normal();
  }

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    Classifier::Weights gw{};
    std::array<double, kLabelCount> gb{};
    for (std::size_t i = 0; i < n; ++i) {
      std::array<double, kLabelCount> z{};
      double zmax = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < kLabelCount; ++k) {
        z[k] = b[k];
        for (std::size_t j = 0; j < kSoftmaxFeatures; ++j) z[k] += w[k][j] * x[i][j];
        zmax = std::max(zmax, z[k]);
      }
      double denom = 0.0;
      for (auto& v : z) denom += (v = std::exp(v - zmax));
      const auto target = static_cast<std::size_t>(rank(labeled[i].label));
      for (std::size_t k = 0; k < kLabelCount; ++k) {
        const double err = z[k] / denom - (k == target ? 1.0 : 0.0);
        gb[k] += err;
        for (std::size_t j = 0; j < kSoftmaxFeatures; ++j) gw[k][j] += err * x[i][j];
      }
    }
    const double step = options.learning_rate / static_cast<double>(n);
    for (std::size_t k = 0; k < kLabelCount; ++k) {
      b[k] -= step * gb[k];
      for (std::size_t j = 0; j < kSoftmaxFeatures; ++j) w[k][j] -= step * gw[k][j];
    }
  }

  // Fold the standardization into raw-unit weights.
  Classifier::Weights raw_w{};
  std::array<double, kLabelCount> raw_b = b;
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    for (std::size_t j = 0; j < kSoftmaxFeatures; ++j) {
      raw_w[k][j] = w[k][j] / sd[j];
      raw_b[k] -= raw_w[k][j] * mean[j];
    }
  }
  TrainedClassifier out{Classifier::softmax(raw_w, raw_b), 0.0};
  out.training_accuracy = accuracy(out.classifier, labeled);
  return out;
}

std::vector<PatchProposal> propose_patches(std::span<const RegionFeatures> features,
                                           const RegionLabels& labels, const CellGrid& grid,
                                           std::size_t k, const PlacementPolicy& policy,
                                           double mean_crop_nectar_l) {
  std::vector<PatchProposal> out;
  if (k == 0) return out;

  std::vector<const RegionFeatures*> low;
  for (const auto& f : features) {
    auto it = labels.find(f.region);
    if (it != labels.end() && it->second == CoverageLabel::Low) low.push_back(&f);
  }
  std::sort(low.begin(), low.end(), [](const RegionFeatures* a, const RegionFeatures* b) {
    if (a->coverage_fraction != b->coverage_fraction) {
      return a->coverage_fraction < b->coverage_fraction;
    }
    if (a->distance_to_hive_m != b->distance_to_hive_m) {
      return a->distance_to_hive_m < b->distance_to_hive_m;
    }
    return a->region < b->region;
  });

  const Point hive = grid.hive_position();
  const double cs = grid.cell_size();
  std::vector<char> taken(grid.size(), 0);
  for (const auto* region : low) {
    if (out.size() >= k) break;
    const Point target{hive.x + policy.waypoint_t * (region->centroid.x - hive.x),
                       hive.y + policy.waypoint_t * (region->centroid.y - hive.y)};
    const int tx = static_cast<int>(std::floor(target.x / cs));
    const int ty = static_cast<int>(std::floor(target.y / cs));
    const int reach = static_cast<int>(std::ceil(policy.search_radius)) + 1;
    std::size_t best_cell = grid.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (int y = ty - reach; y <= ty + reach; ++y) {
      for (int x = tx - reach; x <= tx + reach; ++x) {
        if (!grid.in_bounds(x, y)) continue;
        const std::size_t cell = grid.index(x, y);
        if (grid.kind(cell) != CellKind::Empty || taken[cell]) continue;
        const double d = distance(grid.cell_center(cell), target) / cs;
        if (d > policy.search_radius) continue;
        if (d < best_d || (d == best_d && cell < best_cell)) {
          best_d = d;
          best_cell = cell;
        }
      }
    }
    if (best_cell == grid.size()) continue;
    taken[best_cell] = 1;
    out.push_back({best_cell, region->region, std::clamp(policy.detection_probability, 0.0, 1.0),
                   policy.nectar_fraction * mean_crop_nectar_l});
  }
  return out;
}

CellGrid apply_proposals(const CellGrid& grid, std::span<const PatchProposal> proposals) {
  std::vector<CellKind> cells(grid.cells().begin(), grid.cells().end());
  for (const auto& p : proposals) {
    if (p.cell >= cells.size() || cells[p.cell] != CellKind::Empty) {
      throw Error("IllegalPlacement", "proposal on a non-empty cell " + std::to_string(p.cell));
    }
    cells[p.cell] = CellKind::ArtificialFood;
  }
  return CellGrid(grid.width(), grid.height(), grid.cell_size(), std::move(cells));
}

std::string proposals_csv(const CellGrid& grid, std::span<const PatchProposal> proposals) {
  std::string out = "cell_x,cell_y,region_id,detect_prob,nectar_l\n";
  for (const auto& p : proposals) {
    out += std::to_string(grid.column(p.cell)) + ',' + std::to_string(grid.row(p.cell)) + ',' +
           std::to_string(p.region) + ',' + format_double(p.detection_probability) + ',' +
           format_double(p.nectar_l) + '\n';
  }
  return out;
}

std::string regions_csv(std::span<const RegionFeatures> features, const RegionLabels& labels) {
  std::string out = "region_id,visit_density,coverage_fraction,distance_m,crop_cells,label\n";
  for (const auto& f : features) {
    auto it = labels.find(f.region);
    out += std::to_string(f.region) + ',' + format_double(f.visit_density) + ',' +
           format_double(f.coverage_fraction) + ',' + format_double(f.distance_to_hive_m) + ',' +
           std::to_string(f.crop_cells) + ',' +
           (it == labels.end() ? std::string("none") : label_name(it->second)) + '\n';
  }
  return out;
}

}  // namespace beefi
