#include "beefi/metrics.hpp"

#include <cmath>

#include "beefi/error.hpp"
#include "beefi/format.hpp"

namespace beefi {

namespace {

std::optional<double> relative_percent(double baseline, double fi) {
  if (baseline == 0.0) return std::nullopt;
  return 100.0 * (fi - baseline) / baseline;
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : "undefined"; }

}  // namespace

double delta_pd(const SeasonRecord& baseline, const SeasonRecord& fi) {
  if (baseline.natural_patch_count != fi.natural_patch_count) {
    throw Error("PatchUniverseMismatch",
                "baseline has " + std::to_string(baseline.natural_patch_count) +
                    " natural patches, FI has " + std::to_string(fi.natural_patch_count));
  }
  return 100.0 * (fi.detected_fraction() - baseline.detected_fraction());
}

double delta_dv(const SeasonRecord& baseline, const SeasonRecord& fi) {
  const auto b = static_cast<double>(baseline.totals.total_visits);
  if (b == 0.0) throw Error("ZeroBaselineVisits", "baseline season has no visits");
  return 100.0 * (static_cast<double>(fi.totals.total_visits) - b) / b;
}

double pii(double delta_pd, double delta_dv, double w1, double w2) {
  if (!(w1 >= 0.0 && w2 >= 0.0) || std::abs(w1 + w2 - 1.0) > 1e-9) {
    throw Error("BadWeights", "weights must be non-negative and sum to 1");
  }
  return w1 * delta_pd + w2 * delta_dv;
}

std::string format_pii(double value) { return format_truncated(value, 2); }

ComparisonReport compare(const SeasonRecord& baseline, const SeasonRecord& fi, double w1,
                         double w2) {
  ComparisonReport r;
  r.w1 = w1;
  r.w2 = w2;
  r.delta_pd = delta_pd(baseline, fi);
  try {
    r.delta_dv = delta_dv(baseline, fi);
  } catch (const Error&) {
    r.delta_dv.reset();
  }
  if (r.delta_dv) r.pii = pii(*r.delta_pd, *r.delta_dv, w1, w2);

  const auto& b = baseline.totals;
  const auto& f = fi.totals;
  auto both = [&r](const std::string& name, double bv, double fv) {
    r.rows.push_back({name, bv, fv, 100.0 * (fv - bv), "percentage_points"});
    r.rows.push_back({name, bv, fv, relative_percent(bv, fv), "relative_percent"});
  };
  auto relative = [&r](const std::string& name, double bv, double fv) {
    r.rows.push_back({name, bv, fv, relative_percent(bv, fv), "relative_percent"});
  };
  both("covered_area_fraction", b.covered_area_fraction, f.covered_area_fraction);
  both("detected_fraction", baseline.detected_fraction(), fi.detected_fraction());
  relative("mean_foraging_period_h", b.mean_foraging_period_h, f.mean_foraging_period_h);
  relative("mean_trips_per_sunshine_hour", b.mean_trips_per_sunshine_hour,
           f.mean_trips_per_sunshine_hour);
  relative("total_completed_trips", static_cast<double>(b.total_completed_trips),
           static_cast<double>(f.total_completed_trips));
  relative("total_visits", static_cast<double>(b.total_visits), static_cast<double>(f.total_visits));
  return r;
}

std::string comparison_csv(const ComparisonReport& report) {
  std::string out = "name,baseline,fi,delta,convention\n";
  for (const auto& row : report.rows) {
    out += row.name + ',' + format_double(row.baseline) + ',' + format_double(row.fi) + ',' +
           cell(row.delta) + ',' + row.convention + '\n';
  }
  out += "pii," + format_double(report.w1) + ',' + format_double(report.w2) + ',' +
         cell(report.pii) + ",weighted_sum w1*delta_pd+w2*delta_dv display=" +
         (report.pii ? format_pii(*report.pii) : std::string("undefined")) + '\n';
  return out;
}

}  // namespace beefi
