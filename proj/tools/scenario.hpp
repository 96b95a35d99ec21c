#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "beefi/control.hpp"
#include "beefi/foraging.hpp"
#include "beefi/supervisor.hpp"

namespace beefi::cli {

/// `[section]` headers followed by `key = value` lines. '#' and ';' start a
/// comment line. Keys are stored as "section.key". Throws BadConfig on
/// malformed lines or repeated keys.
class Ini {
 public:
  static Ini parse(std::string_view text);

  bool has(const std::string& key) const { return values_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

enum class WeatherSource { Synth, File };
enum class ClassifierKind { Threshold, Softmax };

struct ClassifierChoice {
  ClassifierKind kind = ClassifierKind::Threshold;
  double low_cut = 0.2;
  double high_cut = 0.8;
  std::size_t training_regions = 600;  // softmax: synthetic regions labeled by the cutoffs
  std::uint64_t training_seed = 1;
};

struct Scenario {
  std::filesystem::path map_path;
  WeatherSource weather_source = WeatherSource::Synth;
  std::filesystem::path weather_path;
  std::uint64_t weather_seed = 2009;
  ClimateProfile climate;
  ColonyParams colony;
  ScoutParams scouting;
  PatchParams patches;
  int scouting_cadence_days = 7;
  ClassifierChoice classifier;
  UserConfig supervisor;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
};

/// Builds a scenario from config text. Relative paths are resolved against
/// `base_dir`. Unknown keys are rejected (BadConfig) so typos cannot be
/// silently ignored.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir);

/// Reads and parses a config file. Throws ConfigNotFound.
Scenario load_scenario(const std::filesystem::path& config_path);

/// Loads map and weather and validates every parameter block. Throws
/// MapNotFound / WeatherNotFound plus the component errors.
SeasonSetup load_setup(const Scenario& scenario);

Classifier make_classifier(const ClassifierChoice& choice);

std::string read_file(const std::filesystem::path& path, const char* missing_code);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace beefi::cli
