#include "commands.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "beefi/error.hpp"
#include "beefi/format.hpp"
#include "beefi/metrics.hpp"
#include "beefi/monitor.hpp"
#include "beefi/supervisor.hpp"

namespace beefi::cli {

namespace fs = std::filesystem;

namespace {

std::uint64_t seed_of(const Scenario& s, const RunOptions& o) { return o.seed.value_or(s.seed); }
fs::path out_of(const Scenario& s, const RunOptions& o) { return o.out_dir.value_or(s.out_dir); }

void write_season(const fs::path& dir, const SeasonRecord& season, const CellGrid& grid,
                  const PatchParams& params) {
  write_file(dir / "season.csv", season_csv(season));
  write_file(dir / "totals.json", totals_json(season));
  write_file(dir / "foodflow.csv", foodflow_csv(derive_patches(grid, params)));
  write_file(dir / "coverage.csv", coverage_csv(season.coverage));
}

// Trajectories of the first scouting refresh that flies at all.
std::optional<ScoutReport> first_flight(const SeasonSetup& setup, std::uint64_t seed) {
  const auto& colony = setup.colony;
  const auto patches = derive_patches(setup.grid, setup.patches);
  for (int day = colony.season_start; day <= colony.season_end;
       day += setup.scouting_cadence_days) {
    const double hours =
        foraging_hours(setup.weather.at(day), std::nullopt, colony.caps.for_day(std::nullopt, day));
    if (hours > 0.0) {
      return run_scouting(setup.grid, patches, setup.scouting, hours, scouting_seed(seed, day), true);
    }
  }
  return std::nullopt;
}

std::string monitor_eval_csv(const FiOutcome& o) {
  std::string out = "key,value\n";
  out += "train_r2," + format_double(o.monitor.r_squared_train) + '\n';
  out += "test_r2," + (o.monitor_test_r2 ? format_double(*o.monitor_test_r2) : "undefined") + '\n';
  return out;
}

std::string pct(double fraction) { return format_truncated(100.0 * fraction, 1); }

}  // namespace

void cmd_baseline(const Scenario& scenario, const RunOptions& options, std::ostream& log) {
  const SeasonSetup setup = load_setup(scenario);
  const std::uint64_t seed = seed_of(scenario, options);
  const fs::path out = out_of(scenario, options);
  const SeasonRecord season = run_season(setup, std::nullopt, seed);
  write_season(out, season, setup.grid, setup.patches);
  if (options.dump_paths) {
    const auto flight = first_flight(setup, seed);
    write_file(out / "paths.csv", flight ? trajectories_csv(*flight) : "scout_id,step,x,y\n");
  }
  log << "baseline seed=" << seed << " covered_area=" << pct(season.totals.covered_area_fraction)
      << "% detected=" << pct(season.detected_fraction())
      << "% visits=" << season.totals.total_visits << '\n';
}

void cmd_fi(const Scenario& scenario, const RunOptions& options, std::ostream& log) {
  const SeasonSetup setup = load_setup(scenario);
  const std::uint64_t seed = seed_of(scenario, options);
  const fs::path out = out_of(scenario, options);
  const Classifier classifier = make_classifier(scenario.classifier);
  const FiOutcome o = run_fi_loop(setup, classifier, scenario.supervisor, seed);

  write_season(out / "baseline", o.baseline, setup.grid, setup.patches);
  write_season(out / "fi", o.final_season, o.final_grid, setup.patches);
  write_file(out / "fi" / "field.map", serialize_map(o.final_grid));
  write_file(out / "fi_plan.csv", proposals_csv(o.final_grid, o.plan.placed_patches));
  write_file(out / "fi_control.csv", fi_control_csv(o.plan));
  write_file(out / "loop_trace.csv", loop_trace_csv(o.trace));
  write_file(out / "regions.csv", regions_csv(o.final_features, o.final_labels));
  write_file(out / "monitor.txt", serialize_model(o.monitor));
  write_file(out / "monitor_eval.csv", monitor_eval_csv(o));

  const ComparisonReport report =
      compare(o.baseline, o.final_season, scenario.supervisor.w1, scenario.supervisor.w2);
  write_file(out / "comparison.csv", comparison_csv(report));

  log << "fi seed=" << seed << " iterations=" << o.plan.iterations_used
      << " patches=" << o.plan.placed_patches.size()
      << " covered_area=" << pct(o.baseline.totals.covered_area_fraction) << "% -> "
      << pct(o.final_season.totals.covered_area_fraction)
      << "% detected=" << pct(o.baseline.detected_fraction()) << "% -> "
      << pct(o.final_season.detected_fraction()) << "% PII="
      << (report.pii ? format_pii(*report.pii) : std::string("undefined")) << '\n';
}

std::string report_csv(const std::vector<SeasonRow>& baseline, const std::vector<SeasonRow>& fi) {
  struct Metric {
    const char* name;
    double (*get)(const SeasonRow&);
  };
  static constexpr Metric kMetrics[] = {
      {"covered_area_frac", [](const SeasonRow& r) { return r.covered_area_frac; }},
      {"detected_patches", [](const SeasonRow& r) { return static_cast<double>(r.detected_patches); }},
      {"foraging_h", [](const SeasonRow& r) { return r.foraging_h; }},
      {"trips_per_sun_h", [](const SeasonRow& r) { return r.trips_per_sun_h; }},
      {"completed_trips", [](const SeasonRow& r) { return static_cast<double>(r.trips); }},
      {"daily_visits", [](const SeasonRow& r) { return static_cast<double>(r.total_visits); }},
  };
  std::string out = "metric,scenario,day,value\n";
  for (const auto& m : kMetrics) {
    for (const auto& [label, rows] : {std::pair{"baseline", &baseline}, std::pair{"fi", &fi}}) {
      for (const auto& r : *rows) {
        out += std::string(m.name) + ',' + label + ',' + std::to_string(r.day) + ',' +
               format_double(m.get(r)) + '\n';
      }
    }
  }
  return out;
}

void cmd_report(const fs::path& run_dir, std::ostream& log) {
  auto load = [&](const char* scenario) {
    const fs::path p = run_dir / scenario / "season.csv";
    return parse_season_csv(read_file(p, "MissingArtifacts"));
  };
  const auto baseline = load("baseline");
  const auto fi = load("fi");
  write_file(run_dir / "report.csv", report_csv(baseline, fi));
  log << "report " << (run_dir / "report.csv").string() << '\n';
}

std::optional<EnvControl> parse_fi_control(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() || lines.front() != "key,value") throw Error("BadHeader", "not an fi_control.csv");
  EnvControl c;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 2) throw Error("ParseError", "fi_control.csv line " + std::to_string(i + 1));
    if (f[0] == "temp_uplift_c") c.temp_uplift_c = parse_double(f[1]);
    else if (f[0] == "extra_light_h") c.extra_light_h = parse_double(f[1]);
    else if (f[0] == "start_day") c.start_day = static_cast<int>(parse_int(f[1]));
    else if (f[0] == "end_day") c.end_day = static_cast<int>(parse_int(f[1]));
  }
  if (c.temp_uplift_c == 0.0 && c.extra_light_h == 0.0) return std::nullopt;
  return c;
}

void cmd_train_monitor(const Scenario& scenario, const fs::path& season_path,
                       const std::optional<fs::path>& control_path, const RunOptions& options,
                       std::ostream& out) {
  const SeasonSetup setup = load_setup(scenario);
  const auto rows = parse_season_csv(read_file(season_path, "MissingArtifacts"));
  std::optional<EnvControl> control;
  if (control_path) control = parse_fi_control(read_file(*control_path, "MissingArtifacts"));

  std::vector<MonitorSample> samples;
  samples.reserve(rows.size());
  for (const auto& r : rows) {
    const DayWeather& w = setup.weather.at(r.day);
    samples.push_back({daily_features(effective_temp_c(w, control), available_light_h(w, control), r.day),
                       static_cast<double>(r.total_visits)});
  }
  const LinearModel model = fit(samples, daily_feature_names());
  const std::string text = serialize_model(model);
  out << text;
  if (options.out_dir) write_file(*options.out_dir / "monitor.txt", text);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-loop pollination simulator", "beefi"};
  app.require_subcommand(1);

  std::string config;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool dump_paths = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "scenario config file")->required();
    cmd->add_option("--seed", seed, "run seed (overrides the config)");
    cmd->add_option("--out", out_dir, "output directory (overrides the config)");
  };
  auto* baseline = app.add_subcommand("baseline", "season without intervention");
  add_common(baseline);
  baseline->add_flag("--dump-paths", dump_paths, "also write paths.csv from the first scouting run");
  auto* fi = app.add_subcommand("fi", "closed feedback loop against the baseline");
  add_common(fi);

  std::string run_dir;
  auto* report = app.add_subcommand("report", "long-format comparison of a finished fi run");
  report->add_option("run_dir", run_dir, "directory written by the fi command");
  report->add_option("--out", out_dir, "same as run_dir");

  std::string season_path;
  std::string control_path;
  auto* train = app.add_subcommand("train-monitor", "fit the monitor on a season export");
  add_common(train);
  train->add_option("--season", season_path, "season.csv export")->required();
  train->add_option("--control", control_path, "fi_control.csv the season ran under");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: UsageError: " << e.what() << '\n';
    return 2;
  }

  RunOptions options;
  if (app.got_subcommand(baseline) || app.got_subcommand(fi) || app.got_subcommand(train)) {
    auto* cmd = app.get_subcommands().front();
    if (cmd->count("--seed") > 0) options.seed = seed;
  }
  if (!out_dir.empty()) options.out_dir = fs::path(out_dir);
  options.dump_paths = dump_paths;

  try {
    if (app.got_subcommand(baseline)) {
      cmd_baseline(load_scenario(config), options, out);
    } else if (app.got_subcommand(fi)) {
      cmd_fi(load_scenario(config), options, out);
    } else if (app.got_subcommand(report)) {
      const std::string dir = run_dir.empty() ? out_dir : run_dir;
      if (dir.empty()) throw Error("MissingArtifacts", "no run directory given");
      cmd_report(dir, out);
    } else {
      cmd_train_monitor(load_scenario(config), season_path,
                        control_path.empty() ? std::nullopt : std::optional<fs::path>(control_path),
                        options, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace beefi::cli
