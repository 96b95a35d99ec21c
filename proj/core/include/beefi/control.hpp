#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "beefi/landscape.hpp"
#include "beefi/scouting.hpp"

namespace beefi {

struct RegionFeatures {
  int region = 0;
  double visit_density = 0.0;      // scout cell entries per traversable cell
  double coverage_fraction = 0.0;  // visited / traversable cells
  double distance_to_hive_m = 0.0;
  Point centroid;                  // mean of the region's traversable cell centers
  std::size_t traversable_cells = 0;
  std::size_t crop_cells = 0;
};

enum class CoverageLabel : std::uint8_t { Low = 0, Normal = 1, High = 2 };

inline constexpr int rank(CoverageLabel label) noexcept { return static_cast<int>(label); }
const char* label_name(CoverageLabel label) noexcept;

using RegionLabels = std::map<int, CoverageLabel>;

/// Per-region aggregation of a coverage grid. Obstacle cells are excluded
/// from every denominator and all-obstacle regions are left out. Throws
/// TilingMismatch when tiling, grid and report disagree on size.
std::vector<RegionFeatures> extract_features(const ScoutReport& report, const RegionTiling& tiling,
                                             const CellGrid& grid);

inline constexpr std::size_t kSoftmaxFeatures = 3;  // visit_density, coverage, distance
inline constexpr std::size_t kLabelCount = 3;

std::array<double, kSoftmaxFeatures> softmax_inputs(const RegionFeatures& f) noexcept;

/// Region classifier: either the coverage threshold rule or an affine
/// softmax over (visit_density, coverage_fraction, distance_to_hive_m).
class Classifier {
 public:
  enum class Kind : std::uint8_t { Threshold, Softmax };
  using Weights = std::array<std::array<double, kSoftmaxFeatures>, kLabelCount>;

  /// Throws BadClassifier unless low_cut < high_cut.
  static Classifier threshold(double low_cut = 0.2, double high_cut = 0.8);
  static Classifier softmax(const Weights& weights, const std::array<double, kLabelCount>& bias);

  Kind kind() const noexcept { return kind_; }
  double low_cut() const noexcept { return low_cut_; }
  double high_cut() const noexcept { return high_cut_; }
  const Weights& weights() const noexcept { return weights_; }
  const std::array<double, kLabelCount>& bias() const noexcept { return bias_; }

  /// Threshold: Low below low_cut, High above high_cut, else Normal.
  /// Softmax: argmax of the class scores, ties going to the lower label.
  CoverageLabel classify(const RegionFeatures& features) const noexcept;
  std::array<double, kLabelCount> scores(const RegionFeatures& features) const noexcept;

 private:
  Classifier() = default;
  Kind kind_ = Kind::Threshold;
  double low_cut_ = 0.2;
  double high_cut_ = 0.8;
  Weights weights_{};
  std::array<double, kLabelCount> bias_{};
};

RegionLabels classify_all(const Classifier& classifier, std::span<const RegionFeatures> features);

struct LabeledRegion {
  RegionFeatures features;
  CoverageLabel label = CoverageLabel::Low;
};

struct SoftmaxOptions {
  int epochs = 500;
  double learning_rate = 0.1;
  std::size_t min_per_class = 10;
};

struct TrainedClassifier {
  Classifier classifier;
  double training_accuracy = 0.0;
};

/// Multinomial logistic regression by full-batch gradient descent on
/// standardized inputs; the learned weights are folded back to raw feature
/// units. Initial weights are N(0, 0.01^2) from `seed`. Throws
/// ClassImbalance when a label has fewer than min_per_class samples.
TrainedClassifier train_softmax(std::span<const LabeledRegion> labeled, std::uint64_t seed,
                                const SoftmaxOptions& options = {});

double accuracy(const Classifier& classifier, std::span<const LabeledRegion> labeled);

/// Random regions labeled by a threshold rule. coverage_fraction is uniform
/// in [0, 1], visit_density is coverage times a uniform factor in [1, 6],
/// distance is uniform in [0, max_distance_m].
std::vector<LabeledRegion> synthetic_regions(std::size_t n, std::uint64_t seed,
                                             const Classifier& rule,
                                             double max_distance_m = 5000.0);

struct PlacementPolicy {
  double waypoint_t = 0.7;      // fraction of the hive -> region corridor
  double search_radius = 5.0;   // cells around the waypoint
  double detection_probability = 0.95;
  double nectar_fraction = 0.1; // of mean crop patch nectar
};

struct PatchProposal {
  std::size_t cell = 0;
  int region = 0;
  double detection_probability = 0.0;
  double nectar_l = 0.0;

  friend bool operator==(const PatchProposal&, const PatchProposal&) = default;
};

/// Greedy stepping-stone placement. Low regions are taken in order of
/// (coverage_fraction, distance_to_hive, region id), ascending. Each gets
/// one proposal on the Empty cell closest to the point waypoint_t of the way
/// from the hive to the region centroid, searched within search_radius
/// cells (ties to the lower cell index); a region with no such cell is
/// skipped. Stops after k proposals.
std::vector<PatchProposal> propose_patches(std::span<const RegionFeatures> features,
                                           const RegionLabels& labels, const CellGrid& grid,
                                           std::size_t k, const PlacementPolicy& policy,
                                           double mean_crop_nectar_l);

/// Grid with every proposed cell turned into ArtificialFood. Throws
/// IllegalPlacement if a proposal targets a non-Empty cell.
CellGrid apply_proposals(const CellGrid& grid, std::span<const PatchProposal> proposals);

/// cell_x,cell_y,region_id,detect_prob,nectar_l
std::string proposals_csv(const CellGrid& grid, std::span<const PatchProposal> proposals);

/// region_id,visit_density,coverage_fraction,distance_m,crop_cells,label
std::string regions_csv(std::span<const RegionFeatures> features, const RegionLabels& labels);

}  // namespace beefi
