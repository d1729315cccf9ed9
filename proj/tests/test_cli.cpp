// Copyright 2026 The AvertSim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "avertsim/cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace
{

namespace fs = std::filesystem;
using avertsim::cli::run_cli;

struct Result
{
  int code{0};
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<std::string> args)
{
  std::vector<std::string> storage{"avertsim"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto & a : storage) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string & text)
{
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    unsetenv("AVERTSIM_OUT");
    dir_ = fs::temp_directory_path() /
           ("avertsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override
  {
    unsetenv("AVERTSIM_OUT");
    fs::remove_all(dir_);
  }

  void write(const std::string & name, const std::string & text)
  {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, help_and_usage)
{
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"run", "--help"}).code, 0);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({"run", "--workers", "0"}).code, 2);
}

TEST_F(Cli, catalogue_listing_and_export)
{
  const auto all = invoke({"catalogue"});
  ASSERT_EQ(all.code, 0) << all.err;
  EXPECT_EQ(line_count(all.out), 35U);

  const auto some = invoke({"catalogue", "--scenario", "1,34", "--export", (dir_ / "cat.csv").string()});
  ASSERT_EQ(some.code, 0) << some.err;
  EXPECT_EQ(line_count(some.out), 2U);
  EXPECT_EQ(
    slurp(dir_ / "cat.csv"),
    "id,use_case,obstruction,d_ego,d_opp,opponent_type\n"
    "1,SCP_RD_PC,parked_cars,1.925,5.425,car\n"
    "34,SCP_LD_B_ONEWAY,building,3.25,2.125,bike\n");

  const auto reread = invoke({"catalogue", "--scenario-file", (dir_ / "cat.csv").string()});
  EXPECT_EQ(reread.code, 0);
  EXPECT_EQ(line_count(reread.out), 2U);
}

TEST_F(Cli, bad_scenario_selection)
{
  EXPECT_EQ(invoke({"catalogue", "--scenario", "99"}).code, 2);
  EXPECT_EQ(invoke({"catalogue", "--scenario", "x"}).code, 2);
  EXPECT_EQ(invoke({"run", "--scenario", ",", "--out", dir_.string()}).code, 2);
  write("broken.csv", "id,use_case\n1,SCP_RD_PC\n");
  EXPECT_EQ(invoke({"catalogue", "--scenario-file", (dir_ / "broken.csv").string()}).code, 2);
  EXPECT_EQ(invoke({"catalogue", "--scenario-file", (dir_ / "missing.csv").string()}).code, 2);
}

TEST_F(Cli, run_writes_kpi_tables)
{
  const auto r = invoke(
    {"run", "--scenario", "34", "--sensors", "mid", "--out", dir_.string(), "--trace", "34-7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("75 cases x 4 configs = 300 runs"), std::string::npos) << r.out;
  EXPECT_EQ(line_count(slurp(dir_ / "kpi_global.csv")), 5U);
  EXPECT_EQ(line_count(slurp(dir_ / "kpi_per_scenario.csv")), 5U);
  EXPECT_EQ(line_count(slurp(dir_ / "case_results.csv")), 301U);
  EXPECT_TRUE(fs::exists(dir_ / "trace_34-7_mid_-_AEB.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "trace_34-7_mid_-_1.25_s.csv"));
}

TEST_F(Cli, environment_overrides_out)
{
  const auto target = dir_ / "from_env";
  setenv("AVERTSIM_OUT", target.c_str(), 1);
  const auto r = invoke({"run", "--scenario", "33", "--system", "aeb", "--sensors", "min", "--out",
                         (dir_ / "from_flag").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(target / "kpi_global.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "from_flag"));
}

TEST_F(Cli, trace_subcommand)
{
  const auto r = invoke({"trace", "--trace", "21-120", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(r.out), 2U);
  const auto csv = slurp(dir_ / "trace_21-120_mid_-_2_s.csv");
  EXPECT_EQ(csv.rfind("t,ego_x,", 0), 0U);
  EXPECT_EQ(invoke({"trace", "--trace", "21-125", "--out", dir_.string()}).code, 2);
  EXPECT_EQ(invoke({"trace", "--trace", "21", "--out", dir_.string()}).code, 2);
}

TEST_F(Cli, manifest)
{
  write(
    "run.json",
    R"({"scenarios": [31], "systems": [{"system": "two-stage", "sensors": "prem", "ttc": 1.5}],
        "stages": {"aeb": {"ttc_threshold": 1.0}},
        "bike_grid": {"ego_kph": [40], "opp_kph": [10, 20], "fractions": [0.5]},
        "out": ")" + (dir_ / "m").string() + R"("})");
  const auto r = invoke({"run", "--config", (dir_ / "run.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("2 cases x 1 configs"), std::string::npos) << r.out;
  EXPECT_NE(slurp(dir_ / "m" / "kpi_global.csv").find("prem - 1.5 s"), std::string::npos);

  const auto m = avertsim::cli::manifest_from_json(slurp(dir_ / "run.json"));
  ASSERT_TRUE(m.scenario_ids.has_value());
  EXPECT_EQ(*m.scenario_ids, std::vector<int>{31});
  EXPECT_EQ(m.aeb.ttc_threshold, 1.0);
  const auto configs = avertsim::cli::build_configs(m);
  ASSERT_EQ(configs.size(), 1U);
  EXPECT_EQ(configs[0].partial.ttc_threshold, 1.5);
  EXPECT_EQ(configs[0].aeb.ttc_threshold, 1.0);
}

TEST_F(Cli, manifest_rejects_unknown_or_invalid_fields)
{
  using avertsim::ConfigError;
  using avertsim::cli::manifest_from_json;
  EXPECT_THROW(manifest_from_json(R"({"scenarioz": "all"})"), ConfigError);
  EXPECT_THROW(manifest_from_json(R"({"scenarios": "some"})"), ConfigError);
  EXPECT_THROW(manifest_from_json(R"({"systems": [{"system": "abs", "sensors": "mid"}]})"), ConfigError);
  EXPECT_THROW(manifest_from_json(R"({"stages": {"aeb": {"color": 1}}})"), ConfigError);
  EXPECT_THROW(manifest_from_json("{"), ConfigError);
  EXPECT_NO_THROW(manifest_from_json(R"({"scenarios": "all"})"));

  auto m = manifest_from_json(R"({"stages": {"partial": {"target_decel": 6.0}}})");
  EXPECT_THROW(avertsim::cli::build_configs(m), ConfigError);
  m = manifest_from_json(R"({"systems": []})");
  EXPECT_THROW(avertsim::cli::build_configs(m), ConfigError);

  write("bad.json", R"({"workers": 2, "extra": true})");
  EXPECT_EQ(invoke({"run", "--config", (dir_ / "bad.json").string()}).code, 2);
}

TEST_F(Cli, defaults_cover_the_standard_grid)
{
  const auto sel = avertsim::cli::default_selections();
  EXPECT_EQ(sel.size(), 12U);
  const auto configs = avertsim::cli::build_configs(avertsim::cli::RunManifest{});
  EXPECT_EQ(configs.size(), 12U);
}

TEST_F(Cli, fit_synthetic)
{
  const auto model = dir_ / "bike.json";
  const auto r = invoke(
    {"fit", "--target", "opponent_bike", "--synthetic", "4000", "--seed", "3", "--output",
     model.string(), "--write-data", (dir_ / "bike.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n = 4000"), std::string::npos);
  EXPECT_NE(slurp(model).find("\"target\""), std::string::npos);

  // Refit from the written records gives the same model.
  const auto again = invoke(
    {"fit", (dir_ / "bike.csv").string(), "--target", "opponent_bike", "--output",
     (dir_ / "again.json").string()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(slurp(model), slurp(dir_ / "again.json"));

  // The fitted model can drive a run.
  const auto run = invoke(
    {"run", "--scenario", "32", "--system", "aeb", "--sensors", "mid", "--models", model.string(),
     "--out", dir_.string()});
  EXPECT_EQ(run.code, 0) << run.err;
}

TEST_F(Cli, fit_errors)
{
  write(
    "separated.csv",
    "impact_velocity_kph,severe,zone,opponent_type\n10,0,,bike\n20,0,,bike\n30,1,,bike\n40,1,,bike\n");
  EXPECT_EQ(invoke({"fit", (dir_ / "separated.csv").string(), "--target", "opponent_bike", "--out", dir_.string()}).code, 2);
  write("tiny.csv", "impact_velocity_kph,severe,zone,opponent_type\n10,0,,bike\n");
  EXPECT_EQ(invoke({"fit", (dir_ / "tiny.csv").string(), "--target", "opponent_bike", "--out", dir_.string()}).code, 2);
  EXPECT_EQ(invoke({"fit", "--target", "nonsense", "--synthetic", "100"}).code, 2);
  EXPECT_EQ(invoke({"fit", "--target", "opponent_bike"}).code, 2);
  write("garbage.csv", "speed,severe\n1,2\n");
  EXPECT_EQ(invoke({"fit", (dir_ / "garbage.csv").string(), "--target", "opponent_bike"}).code, 2);
}
