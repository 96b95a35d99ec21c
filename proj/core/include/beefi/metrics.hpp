#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beefi/foraging.hpp"

namespace beefi {

/// 100 * (detected_fi - detected_baseline), fractions over non-artificial
/// patches only. Throws PatchUniverseMismatch when the two seasons count a
/// different number of natural patches.
double delta_pd(const SeasonRecord& baseline, const SeasonRecord& fi);

/// 100 * (visits_fi - visits_baseline) / visits_baseline. Throws
/// ZeroBaselineVisits.
double delta_dv(const SeasonRecord& baseline, const SeasonRecord& fi);

/// Pollination Improvement Index w1 * delta_pd + w2 * delta_dv. Throws
/// BadWeights unless both weights are non-negative and sum to 1 (1e-9).
double pii(double delta_pd, double delta_dv, double w1, double w2);

/// PII as displayed: two decimals, truncated.
std::string format_pii(double value);

struct MetricRow {
  std::string name;
  double baseline = 0.0;
  double fi = 0.0;
  std::optional<double> delta;  // nullopt when undefined (zero baseline)
  std::string convention;       // "percentage_points" or "relative_percent"
};

struct ComparisonReport {
  std::optional<double> delta_pd;
  std::optional<double> delta_dv;
  std::optional<double> pii;
  double w1 = 0.5;
  double w2 = 0.5;
  std::vector<MetricRow> rows;
};

/// Both framings for each compared metric: percentage-point differences of
/// fractions and relative percent changes. Undefined deltas stay empty
/// instead of becoming infinities.
ComparisonReport compare(const SeasonRecord& baseline, const SeasonRecord& fi, double w1 = 0.5,
                         double w2 = 0.5);

/// name,baseline,fi,delta,convention; the last row is the PII.
std::string comparison_csv(const ComparisonReport& report);

}  // namespace beefi
