#include "scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "beefi/error.hpp"
#include "beefi/format.hpp"

namespace beefi::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error("BadConfig", what); }

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw Error("ParseError", "not a 64-bit unsigned value: '" + std::string(text) + "'");
  return v;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error("ParseError", "not a boolean: '" + std::string(text) + "'");
}

CoverageLabel parse_label(std::string_view text) {
  if (text == "low") return CoverageLabel::Low;
  if (text == "normal") return CoverageLabel::Normal;
  if (text == "high") return CoverageLabel::High;
  bad("unknown coverage label '" + std::string(text) + "'");
}

int to_int(std::string_view v) { return static_cast<int>(parse_int(v)); }
std::size_t to_size(std::string_view v) {
  const long long n = parse_int(v);
  if (n < 0) throw Error("ParseError", "negative count '" + std::string(v) + "'");
  return static_cast<std::size_t>(n);
}

using Setter = std::function<void(Scenario&, std::string_view)>;

std::map<std::string, Setter> setters(const std::filesystem::path& base) {
  auto path = [base](std::string_view v) {
    std::filesystem::path p{std::string(v)};
    return p.is_absolute() ? p : base / p;
  };
  return {
      {"scenario.map", [path](Scenario& s, std::string_view v) { s.map_path = path(v); }},
      {"scenario.seed", [](Scenario& s, std::string_view v) { s.seed = parse_u64(v); }},
      {"scenario.out", [path](Scenario& s, std::string_view v) { s.out_dir = path(v); }},
      {"scenario.scouting_cadence_days",
       [](Scenario& s, std::string_view v) { s.scouting_cadence_days = to_int(v); }},

      {"weather.source",
       [](Scenario& s, std::string_view v) {
         if (v == "synth") s.weather_source = WeatherSource::Synth;
         else if (v == "file") s.weather_source = WeatherSource::File;
         else bad("weather.source must be synth or file");
       }},
      {"weather.file",
       [path](Scenario& s, std::string_view v) { s.weather_path = path(v); }},
      {"weather.seed", [](Scenario& s, std::string_view v) { s.weather_seed = parse_u64(v); }},
      {"weather.temp_mean_c", [](Scenario& s, std::string_view v) { s.climate.temp_mean_c = parse_double(v); }},
      {"weather.temp_amplitude_c", [](Scenario& s, std::string_view v) { s.climate.temp_amplitude_c = parse_double(v); }},
      {"weather.temp_noise_c", [](Scenario& s, std::string_view v) { s.climate.temp_noise_c = parse_double(v); }},
      {"weather.sunshine_mean_h", [](Scenario& s, std::string_view v) { s.climate.sunshine_mean_h = parse_double(v); }},
      {"weather.sunshine_amplitude_h", [](Scenario& s, std::string_view v) { s.climate.sunshine_amplitude_h = parse_double(v); }},
      {"weather.sunshine_noise_h", [](Scenario& s, std::string_view v) { s.climate.sunshine_noise_h = parse_double(v); }},
      {"weather.peak_day", [](Scenario& s, std::string_view v) { s.climate.peak_day = to_int(v); }},

      {"colony.initial_workers", [](Scenario& s, std::string_view v) { s.colony.initial_workers = parse_double(v); }},
      {"colony.trips_per_forager_hour", [](Scenario& s, std::string_view v) { s.colony.trips_per_forager_hour = parse_double(v); }},
      {"colony.patches_per_trip", [](Scenario& s, std::string_view v) { s.colony.patches_per_trip = to_int(v); }},
      {"colony.forager_fraction", [](Scenario& s, std::string_view v) { s.colony.forager_fraction = parse_double(v); }},
      {"colony.season_start", [](Scenario& s, std::string_view v) { s.colony.season_start = to_int(v); }},
      {"colony.season_end", [](Scenario& s, std::string_view v) { s.colony.season_end = to_int(v); }},
      {"colony.distance_scale_m", [](Scenario& s, std::string_view v) { s.colony.distance_scale_m = parse_double(v); }},
      {"colony.cap_h", [](Scenario& s, std::string_view v) { s.colony.caps.baseline_h = parse_double(v); }},
      {"colony.controlled_cap_h", [](Scenario& s, std::string_view v) { s.colony.caps.controlled_h = parse_double(v); }},

      {"patches.kappa", [](Scenario& s, std::string_view v) { s.patches.kappa = parse_double(v); }},
      {"patches.nectar_l_per_m2", [](Scenario& s, std::string_view v) { s.patches.nectar_l_per_m2 = parse_double(v); }},
      {"patches.pollen_g_per_m2", [](Scenario& s, std::string_view v) { s.patches.pollen_g_per_m2 = parse_double(v); }},
      {"patches.artificial_detection_probability",
       [](Scenario& s, std::string_view v) {
         s.patches.artificial_detection_probability = parse_double(v);
         s.supervisor.placement.detection_probability = s.patches.artificial_detection_probability;
       }},
      {"patches.artificial_nectar_fraction",
       [](Scenario& s, std::string_view v) {
         s.patches.artificial_nectar_fraction = parse_double(v);
         s.supervisor.placement.nectar_fraction = s.patches.artificial_nectar_fraction;
       }},

      {"scouting.n_scouts", [](Scenario& s, std::string_view v) { s.scouting.n_scouts = to_int(v); }},
      {"scouting.steps_per_hour", [](Scenario& s, std::string_view v) { s.scouting.steps_per_hour = to_int(v); }},
      {"scouting.step_length", [](Scenario& s, std::string_view v) { s.scouting.step_length = parse_double(v); }},
      {"scouting.turn_sigma", [](Scenario& s, std::string_view v) { s.scouting.turn_sigma = parse_double(v); }},
      {"scouting.max_range_m", [](Scenario& s, std::string_view v) { s.scouting.max_range_m = parse_double(v); }},
      {"scouting.detection_radius", [](Scenario& s, std::string_view v) { s.scouting.detection_radius = to_int(v); }},
      {"scouting.dwell_steps", [](Scenario& s, std::string_view v) { s.scouting.dwell_steps = to_int(v); }},
      {"scouting.max_retries", [](Scenario& s, std::string_view v) { s.scouting.max_retries = to_int(v); }},
      {"scouting.attraction", [](Scenario& s, std::string_view v) { s.scouting.attraction = parse_bool(v); }},
      {"scouting.attraction_noise", [](Scenario& s, std::string_view v) { s.scouting.attraction_noise = parse_double(v); }},

      {"classifier.kind",
       [](Scenario& s, std::string_view v) {
         if (v == "threshold") s.classifier.kind = ClassifierKind::Threshold;
         else if (v == "softmax") s.classifier.kind = ClassifierKind::Softmax;
         else bad("classifier.kind must be threshold or softmax");
       }},
      {"classifier.low_cut", [](Scenario& s, std::string_view v) { s.classifier.low_cut = parse_double(v); }},
      {"classifier.high_cut", [](Scenario& s, std::string_view v) { s.classifier.high_cut = parse_double(v); }},
      {"classifier.training_regions", [](Scenario& s, std::string_view v) { s.classifier.training_regions = to_size(v); }},
      {"classifier.training_seed", [](Scenario& s, std::string_view v) { s.classifier.training_seed = parse_u64(v); }},

      {"supervisor.required_label", [](Scenario& s, std::string_view v) { s.supervisor.required_label = parse_label(v); }},
      {"supervisor.max_artificial_patches", [](Scenario& s, std::string_view v) { s.supervisor.max_artificial_patches = to_size(v); }},
      {"supervisor.max_iterations", [](Scenario& s, std::string_view v) { s.supervisor.max_iterations = to_int(v); }},
      {"supervisor.loss_tolerance", [](Scenario& s, std::string_view v) { s.supervisor.loss_tolerance = parse_double(v); }},
      {"supervisor.w1", [](Scenario& s, std::string_view v) { s.supervisor.w1 = parse_double(v); }},
      {"supervisor.w2", [](Scenario& s, std::string_view v) { s.supervisor.w2 = parse_double(v); }},
      {"supervisor.patches_per_iteration", [](Scenario& s, std::string_view v) { s.supervisor.patches_per_iteration = to_size(v); }},
      {"supervisor.max_uplift_c", [](Scenario& s, std::string_view v) { s.supervisor.bounds.max_uplift_c = parse_double(v); }},
      {"supervisor.max_extra_light_h", [](Scenario& s, std::string_view v) { s.supervisor.bounds.max_extra_light_h = parse_double(v); }},
      {"supervisor.control_grid_steps", [](Scenario& s, std::string_view v) { s.supervisor.control_grid_steps = to_int(v); }},
      {"supervisor.refit_monitor", [](Scenario& s, std::string_view v) { s.supervisor.refit_monitor = parse_bool(v); }},
      {"supervisor.region_rows", [](Scenario& s, std::string_view v) { s.supervisor.region_rows = to_int(v); }},
      {"supervisor.region_cols", [](Scenario& s, std::string_view v) { s.supervisor.region_cols = to_int(v); }},
      {"supervisor.waypoint_t", [](Scenario& s, std::string_view v) { s.supervisor.placement.waypoint_t = parse_double(v); }},
      {"supervisor.search_radius", [](Scenario& s, std::string_view v) { s.supervisor.placement.search_radius = parse_double(v); }},
  };
}

}  // namespace

Ini Ini::parse(std::string_view text) {
  Ini ini;
  std::string section;
  int line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') bad(where + ": unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) bad(where + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(where + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) bad(where + ": empty key");
    const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    if (!ini.values_.emplace(full, std::string(value)).second) bad(where + ": duplicate key '" + full + "'");
  }
  return ini;
}

std::optional<std::string> Ini::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  const Ini ini = Ini::parse(text);
  const auto table = setters(base_dir);
  Scenario s;
  s.out_dir = base_dir / "out";
  for (const auto& [key, value] : ini.values()) {
    auto it = table.find(key);
    if (it == table.end()) bad("unknown key '" + key + "'");
    try {
      it->second(s, value);
    } catch (const Error& e) {
      if (e.code() == "ParseError") bad("'" + key + "': " + e.what());
      throw;
    }
  }
  if (s.map_path.empty()) bad("scenario.map is required");
  if (s.weather_source == WeatherSource::File && s.weather_path.empty()) {
    bad("weather.file is required when weather.source = file");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& config_path) {
  const std::string text = read_file(config_path, "ConfigNotFound");
  return parse_scenario(text, config_path.parent_path());
}

SeasonSetup load_setup(const Scenario& s) {
  CellGrid grid = parse_map(read_file(s.map_path, "MapNotFound"));
  WeatherSeries weather = s.weather_source == WeatherSource::File
                              ? load_weather(read_file(s.weather_path, "WeatherNotFound"))
                              : synth_weather(s.weather_seed, s.climate);
  SeasonSetup setup{std::move(grid), std::move(weather), s.colony, s.scouting, s.patches,
                    s.scouting_cadence_days};
  validate(setup.colony);
  validate(setup.scouting);
  validate(s.supervisor);
  if (setup.scouting_cadence_days < 1) bad("scouting_cadence_days must be at least 1");
  return setup;
}

Classifier make_classifier(const ClassifierChoice& c) {
  const Classifier rule = Classifier::threshold(c.low_cut, c.high_cut);
  if (c.kind == ClassifierKind::Threshold) return rule;
  const auto labeled = synthetic_regions(c.training_regions, c.training_seed, rule);
  return train_softmax(labeled, c.training_seed).classifier;
}

std::string read_file(const std::filesystem::path& path, const char* missing_code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(missing_code, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("WriteFailed", "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("WriteFailed", "cannot write '" + path.string() + "'");
}

}  // namespace beefi::cli
