#include "beefi/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "beefi/error.hpp"
#include "beefi/format.hpp"
#include "beefi/rng.hpp"

namespace beefi {

namespace {

using Matrix = std::vector<std::vector<double>>;

// In-place Cholesky solve of a symmetric system. Returns nullopt when a
// pivot falls below `tolerance` (unit-diagonal scale, so relative).
std::optional<std::vector<double>> cholesky_solve(Matrix a, std::vector<double> b,
                                                  double tolerance) {
  const std::size_t n = b.size();
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
    if (!(d > tolerance)) return std::nullopt;
    a[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
      a[i][j] = s / a[j][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * b[k];
    b[i] = s / a[i][i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[k][i] * b[k];
    b[i] = s / a[i][i];
  }
  return b;
}

void check_finite(std::span<const MonitorSample> samples, std::size_t arity) {
  for (const auto& s : samples) {
    if (s.features.size() != arity) {
      throw Error("ArityMismatch", "samples have differing feature counts");
    }
    if (!std::isfinite(s.target) ||
        !std::all_of(s.features.begin(), s.features.end(), [](double v) { return std::isfinite(v); })) {
      throw Error("NonFiniteValue", "sample contains a non-finite value");
    }
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

}  // namespace

std::vector<std::string> daily_feature_names() {
  return {"max_temp_c", "light_h", "season_sin", "season_cos"};
}

std::vector<double> daily_features(double max_temp_c, double light_h, int day) {
  const double phase = 2.0 * std::numbers::pi * day / kDaysPerYear;
  return {max_temp_c, light_h, std::sin(phase), std::cos(phase)};
}

std::vector<MonitorSample> season_samples(const SeasonRecord& season) {
  std::vector<MonitorSample> out;
  out.reserve(season.days.size());
  for (const auto& d : season.days) {
    out.push_back({daily_features(d.effective_temp_c, d.light_h, d.day),
                   static_cast<double>(d.total_visits())});
  }
  return out;
}

LinearModel fit(std::span<const MonitorSample> samples, std::vector<std::string> feature_names) {
  if (samples.empty()) throw Error("InsufficientSamples", "no samples");
  const std::size_t p = samples.front().features.size();
  if (samples.size() < p + 1) {
    throw Error("InsufficientSamples", "need at least " + std::to_string(p + 1) + " samples, got " +
                                           std::to_string(samples.size()));
  }
  check_finite(samples, p);
  if (!feature_names.empty() && feature_names.size() != p) {
    throw Error("ArityMismatch", "feature name count differs from feature count");
  }
  if (feature_names.empty()) {
    for (std::size_t j = 0; j < p; ++j) feature_names.push_back("x" + std::to_string(j));
  }

  const auto n = static_cast<double>(samples.size());
  std::vector<double> mean(p, 0.0);
  double y_mean = 0.0;
  for (const auto& s : samples) {
    for (std::size_t j = 0; j < p; ++j) mean[j] += s.features[j];
    y_mean += s.target;
  }
  for (auto& m : mean) m /= n;
  y_mean /= n;

  std::vector<double> scale(p, 0.0);
  for (const auto& s : samples) {
    for (std::size_t j = 0; j < p; ++j) scale[j] += (s.features[j] - mean[j]) * (s.features[j] - mean[j]);
  }
  for (std::size_t j = 0; j < p; ++j) {
    scale[j] = std::sqrt(scale[j]);
    if (!(scale[j] > 1e-12 * std::max(1.0, std::abs(mean[j])))) {
      throw Error("DegenerateDesign", "feature '" + feature_names[j] + "' is constant");
    }
  }

  // Correlation-scaled normal equations: unit diagonal.
  Matrix gram(p, std::vector<double>(p, 0.0));
  std::vector<double> rhs(p, 0.0);
  for (const auto& s : samples) {
    const double yc = s.target - y_mean;
    for (std::size_t i = 0; i < p; ++i) {
      const double zi = (s.features[i] - mean[i]) / scale[i];
      rhs[i] += zi * yc;
      for (std::size_t j = 0; j <= i; ++j) gram[i][j] += zi * (s.features[j] - mean[j]) / scale[j];
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < i; ++j) gram[j][i] = gram[i][j];
  }

  constexpr double kPivotTolerance = 1e-12;
  auto beta = cholesky_solve(gram, rhs, kPivotTolerance);
  if (!beta) {
    for (std::size_t i = 0; i < p; ++i) gram[i][i] += kRidgeLambda;
    beta = cholesky_solve(gram, rhs, kPivotTolerance);
    if (!beta) throw Error("DegenerateDesign", "design is singular even with ridge");
  }

  LinearModel model;
  model.feature_names = std::move(feature_names);
  model.coefficients.resize(p);
  model.intercept = y_mean;
  for (std::size_t j = 0; j < p; ++j) {
    model.coefficients[j] = (*beta)[j] / scale[j];
    model.intercept -= model.coefficients[j] * mean[j];
  }
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const auto& s : samples) {
    const double r = s.target - predict(model, s.features);
    ss_res += r * r;
    ss_tot += (s.target - y_mean) * (s.target - y_mean);
  }
  model.r_squared_train = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return model;
}

double predict(const LinearModel& model, std::span<const double> features) {
  if (features.size() != model.arity()) {
    throw Error("ArityMismatch", "model takes " + std::to_string(model.arity()) +
                                     " features, got " + std::to_string(features.size()));
  }
  double y = model.intercept;
  for (std::size_t j = 0; j < features.size(); ++j) y += model.coefficients[j] * features[j];
  return y;
}

std::vector<double> predict_batch(const LinearModel& model, std::span<const MonitorSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(predict(model, s.features));
  return out;
}

double r_squared(const LinearModel& model, std::span<const MonitorSample> samples) {
  if (samples.size() < 2) throw Error("InsufficientSamples", "r_squared needs 2 samples");
  double y_mean = 0.0;
  for (const auto& s : samples) y_mean += s.target;
  y_mean /= static_cast<double>(samples.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const auto& s : samples) {
    const double r = s.target - predict(model, s.features);
    ss_res += r * r;
    ss_tot += (s.target - y_mean) * (s.target - y_mean);
  }
  if (!(ss_tot > 0.0)) throw Error("ZeroVariance", "targets have zero variance");
  return 1.0 - ss_res / ss_tot;
}

TrainTestSplit split_train_test(std::span<const MonitorSample> samples, std::uint64_t seed,
                                double test_fraction) {
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  CounterRng rng(derive_seed(seed, stream::kSplit));
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  const auto n_test = static_cast<std::size_t>(
      std::llround(std::clamp(test_fraction, 0.0, 1.0) * static_cast<double>(samples.size())));
  TrainTestSplit split;
  for (std::size_t k = 0; k < order.size(); ++k) {
    (k + n_test < order.size() ? split.train : split.test).push_back(samples[order[k]]);
  }
  return split;
}

std::string serialize_model(const LinearModel& model) {
  std::vector<std::string> coefs;
  for (double c : model.coefficients) coefs.push_back(format_double(c));
  return "features=" + join(model.feature_names) + "\ncoefficients=" + join(coefs) +
         "\nintercept=" + format_double(model.intercept) +
         "\nr_squared=" + format_double(model.r_squared_train) + "\n";
}

LinearModel parse_model(std::string_view text) {
  LinearModel model;
  bool seen[4] = {false, false, false, false};
  for (auto line : split_lines(text)) {
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error("ParseError", "model line without '='");
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 1);
    if (key == "features") {
      if (!value.empty()) {
        for (auto name : split(value, ',')) model.feature_names.emplace_back(name);
      }
      seen[0] = true;
    } else if (key == "coefficients") {
      if (!value.empty()) {
        for (auto c : split(value, ',')) model.coefficients.push_back(parse_double(c));
      }
      seen[1] = true;
    } else if (key == "intercept") {
      model.intercept = parse_double(value);
      seen[2] = true;
    } else if (key == "r_squared") {
      model.r_squared_train = parse_double(value);
      seen[3] = true;
    } else {
      throw Error("ParseError", "unknown model key '" + std::string(key) + "'");
    }
  }
  if (!(seen[0] && seen[1] && seen[2] && seen[3])) {
    throw Error("ParseError", "model text is missing a key");
  }
  if (model.feature_names.size() != model.coefficients.size()) {
    throw Error("ArityMismatch", "feature names and coefficients differ in count");
  }
  return model;
}

}  // namespace beefi
