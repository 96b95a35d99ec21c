#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beefi/foraging.hpp"
#include "scenario.hpp"

namespace beefi::cli {

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  bool dump_paths = false;
};

void cmd_baseline(const Scenario& scenario, const RunOptions& options, std::ostream& log);
void cmd_fi(const Scenario& scenario, const RunOptions& options, std::ostream& log);
/// Reads <run_dir>/baseline/season.csv and <run_dir>/fi/season.csv and
/// writes <run_dir>/report.csv. Throws MissingArtifacts.
void cmd_report(const std::filesystem::path& run_dir, std::ostream& log);
/// Fits the monitor on a season export joined with the scenario weather
/// (plus the control from an fi_control.csv, if given) and prints it.
void cmd_train_monitor(const Scenario& scenario, const std::filesystem::path& season_csv,
                       const std::optional<std::filesystem::path>& control_csv,
                       const RunOptions& options, std::ostream& out);

/// Long format metric,scenario,day,value over the six season.csv metrics.
std::string report_csv(const std::vector<SeasonRow>& baseline, const std::vector<SeasonRow>& fi);

/// Reads fi_control.csv back; nullopt when no control was applied.
std::optional<EnvControl> parse_fi_control(std::string_view csv);

/// Entry point shared by the executable and the tests. Errors are reported
/// on `err` as "error: <Code>: <detail>" and yield a nonzero status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace beefi::cli
