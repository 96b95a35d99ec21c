#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "beefi/error.hpp"
#include "beefi/monitor.hpp"
#include "commands.hpp"
#include "scenario.hpp"
#include "support.hpp"

namespace beefi::cli {
namespace {

namespace fs = std::filesystem;

const char* kMap =
    "# cell_size_m=125\n"
    "YY......#.......YY..\n"
    "YY......#.......YY..\n"
    "........#...........\n"
    "....................\n"
    "........#.....Y.....\n"
    "...H....#.....Y.....\n"
    "........#...........\n"
    "####.####.####..####\n"
    "........#...........\n"
    "..YY....#......YYY..\n"
    "..YY................\n"
    "........#......YYY..\n";

const char* kIni =
    "[scenario]\n"
    "map = small.map\n"
    "seed = 4\n"
    "\n"
    "[scouting]\n"
    "n_scouts = 12\n"
    "\n"
    "[colony]\n"
    "initial_workers = 2000\n"
    "\n"
    "[supervisor]\n"
    "region_rows = 2\n"
    "region_cols = 4\n"
    "max_iterations = 4\n";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::path(::testing::TempDir()) /
          ("beefi_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    write_file(dir / "small.map", kMap);
    write_file(dir / "s.ini", kIni);
  }
  void TearDown() override { fs::remove_all(dir); }

  int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "beefi");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out.str("");
    err.str("");
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
  }

  std::string config() const { return (dir / "s.ini").string(); }

  fs::path dir;
  std::ostringstream out;
  std::ostringstream err;
};

TEST(IniFormat, SectionsCommentsAndErrors) {
  const auto ini = Ini::parse("# top\n[a]\nx = 1\n; note\ny=two words \n[b]\nx=3\n");
  EXPECT_EQ(ini.get("a.x"), "1");
  EXPECT_EQ(ini.get("a.y"), "two words");
  EXPECT_EQ(ini.get("b.x"), "3");
  EXPECT_FALSE(ini.get("c.x").has_value());
  EXPECT_THROW_CODE(Ini::parse("[a]\nx=1\nx=2\n"), "BadConfig");
  EXPECT_THROW_CODE(Ini::parse("[a]\njust text\n"), "BadConfig");
  EXPECT_THROW_CODE(Ini::parse("[a\n"), "BadConfig");
}

TEST(ScenarioParsing, KeysAndPaths) {
  const auto s = parse_scenario(kIni, "/base");
  EXPECT_EQ(s.map_path, fs::path("/base/small.map"));
  EXPECT_EQ(s.seed, 4u);
  EXPECT_EQ(s.scouting.n_scouts, 12);
  EXPECT_EQ(s.colony.initial_workers, 2000.0);
  EXPECT_EQ(s.supervisor.region_cols, 4);
  EXPECT_EQ(s.out_dir, fs::path("/base/out"));
  EXPECT_THROW_CODE(parse_scenario("[scouting]\nn_scout = 3\n", "/"), "BadConfig");
  EXPECT_THROW_CODE(parse_scenario("[scenario]\nseed = x\n", "/"), "BadConfig");
}

TEST(ScenarioParsing, BundledDeskScenario) {
  const auto s = load_scenario(test::data_path("desk.ini"));
  EXPECT_EQ(s.scouting.n_scouts, 200);
  EXPECT_EQ(s.classifier.kind, ClassifierKind::Threshold);
  EXPECT_EQ(s.supervisor.required_label, CoverageLabel::Normal);
  EXPECT_THROW_CODE(load_scenario("/nonexistent/x.ini"), "ConfigNotFound");
}

TEST_F(CliTest, MapNotFound) {
  std::string ini = kIni;
  ini.replace(ini.find("small.map"), 9, "gone.map");
  write_file(dir / "s.ini", ini);
  EXPECT_EQ(invoke({"baseline", "--config", config()}), 1);
  EXPECT_NE(err.str().find("error: MapNotFound:"), std::string::npos) << err.str();
}

TEST_F(CliTest, CorruptWeatherNamesTheDay) {
  std::string csv = "day,max_temp_c,sunshine_h\n";
  for (int d = 1; d <= 365; ++d) {
    if (d != 212) csv += std::to_string(d) + ",20,8\n";
  }
  write_file(dir / "w.csv", csv);
  write_file(dir / "s.ini", std::string(kIni) + "\n[weather]\nsource = file\nfile = w.csv\n");
  EXPECT_EQ(invoke({"baseline", "--config", config()}), 1);
  EXPECT_NE(err.str().find("error: MissingDay:"), std::string::npos) << err.str();
  EXPECT_NE(err.str().find("212"), std::string::npos) << err.str();
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}), 2);
  EXPECT_EQ(invoke({"baseline"}), 2);
  EXPECT_EQ(invoke({"bogus"}), 2);
}

TEST_F(CliTest, ReportWithoutArtifacts) {
  EXPECT_EQ(invoke({"report", (dir / "nothing").string()}), 1);
  EXPECT_NE(err.str().find("error: MissingArtifacts:"), std::string::npos) << err.str();
}

TEST_F(CliTest, BaselineWritesItsFiles) {
  const fs::path o = dir / "b";
  ASSERT_EQ(invoke({"baseline", "--config", config(), "--out", o.string(), "--dump-paths"}), 0) << err.str();
  for (const char* f : {"season.csv", "totals.json", "foodflow.csv", "coverage.csv", "paths.csv"}) {
    EXPECT_TRUE(fs::exists(o / f)) << f;
  }
  const auto rows = parse_season_csv(test::slurp((o / "season.csv").string()));
  EXPECT_EQ(rows.size(), 153u);
  EXPECT_NE(out.str().find("baseline seed=4"), std::string::npos);
}

TEST_F(CliTest, SeedOverrideChangesRun) {
  ASSERT_EQ(invoke({"baseline", "--config", config(), "--out", (dir / "a").string()}), 0);
  ASSERT_EQ(invoke({"baseline", "--config", config(), "--out", (dir / "b").string(), "--seed", "5"}), 0);
  ASSERT_EQ(invoke({"baseline", "--config", config(), "--out", (dir / "c").string(), "--seed", "4"}), 0);
  EXPECT_NE(test::slurp((dir / "a/season.csv").string()), test::slurp((dir / "b/season.csv").string()));
  EXPECT_EQ(test::slurp((dir / "a/season.csv").string()), test::slurp((dir / "c/season.csv").string()));
}

TEST_F(CliTest, FiThenReport) {
  const fs::path o = dir / "run";
  ASSERT_EQ(invoke({"fi", "--config", config(), "--out", o.string()}), 0) << err.str();
  EXPECT_NE(out.str().find("PII="), std::string::npos);
  for (const char* f : {"baseline/season.csv", "fi/season.csv", "fi/field.map", "fi_plan.csv", "fi_control.csv",
                        "loop_trace.csv", "regions.csv", "monitor.txt", "monitor_eval.csv", "comparison.csv"}) {
    EXPECT_TRUE(fs::exists(o / f)) << f;
  }
  const std::string cmp = test::slurp((o / "comparison.csv").string());
  EXPECT_NE(cmp.find("\npii,0.5,0.5,"), std::string::npos);
  EXPECT_NO_THROW(parse_model(test::slurp((o / "monitor.txt").string())));

  ASSERT_EQ(invoke({"report", o.string()}), 0) << err.str();
  const std::string first = test::slurp((o / "report.csv").string());
  for (const char* m : {"covered_area_frac,", "detected_patches,", "foraging_h,", "trips_per_sun_h,",
                        "completed_trips,", "daily_visits,"}) {
    EXPECT_NE(first.find(std::string("\n") + m + "baseline,"), std::string::npos) << m;
    EXPECT_NE(first.find(std::string("\n") + m + "fi,"), std::string::npos) << m;
  }
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 1 + 6 * 2 * 153);
  ASSERT_EQ(invoke({"report", "--out", o.string()}), 0);
  EXPECT_EQ(test::slurp((o / "report.csv").string()), first);

  ASSERT_EQ(invoke({"train-monitor", "--config", config(), "--season", (o / "fi/season.csv").string(),
                    "--control", (o / "fi_control.csv").string()}),
            0)
      << err.str();
  EXPECT_NO_THROW(parse_model(out.str()));
}

TEST_F(CliTest, FiIsReproducible) {
  ASSERT_EQ(invoke({"fi", "--config", config(), "--out", (dir / "x").string()}), 0);
  ASSERT_EQ(invoke({"fi", "--config", config(), "--out", (dir / "y").string()}), 0);
  for (const auto& e : fs::recursive_directory_iterator(dir / "x")) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir / "x");
    EXPECT_EQ(test::slurp(e.path().string()), test::slurp((dir / "y" / rel).string())) << rel;
  }
}

TEST(FiControlText, RoundTrip) {
  EXPECT_FALSE(parse_fi_control("key,value\ntemp_uplift_c,0\nextra_light_h,0\n").has_value());
  const auto c = parse_fi_control("key,value\ntemp_uplift_c,4\nextra_light_h,1.5\nstart_day,91\nend_day,243\n");
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->extra_light_h, 1.5);
  EXPECT_EQ(c->end_day, 243);
  EXPECT_THROW_CODE(parse_fi_control("nope\n"), "BadHeader");
}

}  // namespace
}  // namespace beefi::cli
