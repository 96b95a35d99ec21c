#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beefi/foraging.hpp"

namespace beefi {

struct MonitorSample {
  std::vector<double> features;
  double target = 0.0;
};

/// Ordinary least-squares model: prediction = intercept + coefficients . x.
struct LinearModel {
  std::vector<std::string> feature_names;
  std::vector<double> coefficients;
  double intercept = 0.0;
  double r_squared_train = 0.0;

  std::size_t arity() const noexcept { return coefficients.size(); }
  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

/// Names of the daily features used by the supervisor's monitor.
std::vector<std::string> daily_feature_names();

/// (max_temp_c, light_h, sin(2 pi d / 365), cos(2 pi d / 365)).
std::vector<double> daily_features(double max_temp_c, double light_h, int day);

/// One sample per season day: features from the conditions the colony saw,
/// target = total visits that day.
std::vector<MonitorSample> season_samples(const SeasonRecord& season);

inline constexpr double kRidgeLambda = 1e-8;

/// Fits by the normal equations on centred and scaled features. A singular
/// system is retried with ridge lambda = 1e-8. Errors: InsufficientSamples
/// (fewer than arity + 1), ArityMismatch, NonFiniteValue, DegenerateDesign
/// (a constant feature column, or still singular after ridge).
LinearModel fit(std::span<const MonitorSample> samples,
                std::vector<std::string> feature_names = {});

/// Affine evaluation, no clamping. Throws ArityMismatch.
double predict(const LinearModel& model, std::span<const double> features);
std::vector<double> predict_batch(const LinearModel& model,
                                  std::span<const MonitorSample> samples);

/// 1 - SS_res / SS_tot. Errors: InsufficientSamples (< 2), ZeroVariance.
double r_squared(const LinearModel& model, std::span<const MonitorSample> samples);

struct TrainTestSplit {
  std::vector<MonitorSample> train;
  std::vector<MonitorSample> test;
};

/// Deterministic Fisher-Yates shuffle seeded by `seed`, then the last
/// round(test_fraction * n) samples form the test set.
TrainTestSplit split_train_test(std::span<const MonitorSample> samples, std::uint64_t seed,
                                double test_fraction = 0.2);

/// Flat text, one `key=value` per line: features, coefficients, intercept,
/// r_squared. parse_model(serialize_model(m)) == m, and re-serializing the
/// parsed model reproduces the same bytes.
std::string serialize_model(const LinearModel& model);
LinearModel parse_model(std::string_view text);

}  // namespace beefi
