/*
 * Copyright 2026 The Soilcast Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <unistd.h>

#include "fixtures.hpp"
#include "soilcast/config.hpp"
#include "soilcast/error.hpp"
#include "soilcast/file_io.hpp"
#include "soilcast/pipeline.hpp"

namespace soilcast {
namespace {

namespace fs = std::filesystem;

TEST(ConfigText, SectionsArraysComments) {
  const auto table = parse_config_text(
      "seed = 7  # top level\n"
      "[knn]\nk = 3\nhour_of_day = false\n"
      "[schedule]\nblackouts = [\"02:00-02:30\", \"03:00-03:10\"]\n"
      "[paths]\ndataset = \"a # b.csv\"\n");
  EXPECT_EQ(std::get<double>(table.at("").at("seed").value), 7.0);
  EXPECT_EQ(std::get<bool>(table.at("knn").at("hour_of_day").value), false);
  EXPECT_EQ(std::get<std::vector<std::string>>(table.at("schedule").at("blackouts").value).size(), 2u);
  EXPECT_EQ(std::get<std::string>(table.at("paths").at("dataset").value), "a # b.csv");
}

TEST(ConfigText, MalformedLinesAreParseErrors) {
  try {
    parse_config_text("[knn\nk == 3\n");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kParse);
  }
}

TEST(Config, DefaultsAreValid) {
  const PipelineConfig c = load_config("");
  EXPECT_EQ(c.knn.k, 5u);
  EXPECT_EQ(c.ksg.k_neighbours, 4u);
  EXPECT_TRUE(validate_config(c, false).size() <= 1u);  // only the unset dataset
}

TEST(Config, ExampleFileLoads) {
  const PipelineConfig c = load_config(fixtures::example_config_dir() + "/park.toml");
  EXPECT_EQ(c.zones.size(), 5u);
  EXPECT_EQ(c.blackouts.size(), 2u);
  EXPECT_EQ(c.seed, 42u);
  // Every tuning value in the example equals the default.
  PipelineConfig d = load_config("");
  d.zones = c.zones;
  d.blackouts = c.blackouts;
  d.blackout_texts = c.blackout_texts;
  EXPECT_EQ(canonical_config(c), canonical_config(d));
}

TEST(Config, OverridesAndRejections) {
  PipelineConfig c = load_config("", {"knn.k=9", "detectors.flag_fraction=0.25"});
  EXPECT_EQ(c.knn.k, 9u);
  EXPECT_DOUBLE_EQ(c.detectors.flag_fraction, 0.25);
  EXPECT_THROW(load_config("", {"knn.nope=1"}), Error);
  EXPECT_FALSE(validate_config(load_config("", {"detectors.flag_fraction=1.5"}), false).empty());
  EXPECT_THROW(load_config("", {"knn.k=\"five\""}), Error);
  EXPECT_FALSE(
      validate_config(load_config("", {"rules.min_vwc=50", "rules.max_vwc=10"}), false).empty());
  EXPECT_THROW(load_config("", {"noequals"}), Error);
}

TEST(Config, HashIgnoresPathsButNotTuning) {
  const PipelineConfig a = load_config("", {"paths.dataset=a.csv"});
  const PipelineConfig b = load_config("", {"paths.dataset=b.csv", "paths.out_dir=elsewhere"});
  const PipelineConfig c = load_config("", {"knn.k=6"});
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 16u);
  EXPECT_EQ(config_hash(a), config_hash(load_config("", {"paths.dataset=a.csv"})));
}

TEST(Injection, Parse) {
  const auto inj = parse_injection("SENS0021:2023-01-02T16:00:00:96");
  ASSERT_TRUE(inj);
  EXPECT_EQ(inj->sensor_id, "SENS0021");
  EXPECT_EQ(format_instant(inj->start), "2023-01-02T16:00:00");
  EXPECT_EQ(inj->hours, 96u);
  EXPECT_FALSE(parse_injection("SENS0021:2023-01-02T16:00:00"));
  EXPECT_FALSE(parse_injection("SENS0021:yesterday:4"));
  EXPECT_FALSE(parse_injection("SENS0021:2023-01-02T16:00:00:-1"));
}

class DailyRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = (fs::temp_directory_path() / ("soilcast_daily_" + std::to_string(::getpid()))).string();
    fs::remove_all(root_);
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }

  static PipelineConfig workspace(const std::string& name) {
    const auto dir = fs::path(root_) / "corpus";
    PipelineConfig c = fixtures::corpus_workspace(dir.string());
    c.paths.out_dir = (fs::path(root_) / name).string();
    return c;
  }

  static std::map<std::string, std::string> read_tree(const std::string& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
      if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = read_file(e.path().string());
    }
    return files;
  }

  static void expect_same(const std::map<std::string, std::string>& got,
                          const std::map<std::string, std::string>& want) {
    ASSERT_EQ(got.size(), want.size());
    for (const auto& [name, content] : want) {
      const auto it = got.find(name);
      ASSERT_NE(it, got.end()) << name;
      EXPECT_TRUE(it->second == content) << name << " differs";
    }
  }

  static inline std::string root_;
};

TEST_F(DailyRun, CleanDay) {
  const PipelineConfig c = workspace("clean");
  const DailyResult r = run_daily(c, "2023-01-05");
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_TRUE(r.faults.empty());
  EXPECT_TRUE(r.events.empty());
  EXPECT_EQ(r.proposals.size(), 5u);
  ASSERT_EQ(r.stages.size(), kStageCount);
  for (std::size_t i = 0; i < kStageCount; ++i) {
    EXPECT_EQ(r.stages[i].name, kStageNames[i]);
    EXPECT_TRUE(r.stages[i].ok) << r.stages[i].name << ": " << r.stages[i].detail;
  }
  for (const char* f : {"proposals.jsonl", "faults.jsonl", "forecasts.csv", "matrix.csv",
                        "virtual_state.json", "trace.log", "manifest.json"}) {
    EXPECT_TRUE(fs::is_regular_file(fs::path(r.directory) / f)) << f;
  }
  // Only the header line when nothing is faulty.
  const std::string faults = read_file((fs::path(r.directory) / "faults.jsonl").string());
  EXPECT_EQ(std::count(faults.begin(), faults.end(), '\n'), 1);
  for (const auto& p : r.proposals) {
    EXPECT_GE(p.runtime_minutes, 0);
    if (p.window_start) {
      EXPECT_GE(*p.window_start, c.night.start_on("2023-01-05"));
      EXPECT_LE(*p.window_end, c.night.end_on("2023-01-05"));
    }
  }
}

TEST_F(DailyRun, RerunIsByteIdentical) {
  const PipelineConfig a = workspace("det-a");
  const PipelineConfig b = workspace("det-b");
  run_daily(a, "2023-01-05");
  const auto first = read_tree(a.paths.out_dir);
  run_daily(a, "2023-01-05");
  expect_same(read_tree(a.paths.out_dir), first);
  run_daily(b, "2023-01-05");
  expect_same(read_tree(b.paths.out_dir), first);
}

TEST_F(DailyRun, InjectedOutageActivatesBackup) {
  const PipelineConfig c = workspace("inject");
  DailyOptions o;
  o.injections.push_back(*parse_injection("SENS0021:2023-01-02T16:00:00:96"));
  const DailyResult r = run_daily(c, "2023-01-06", o);
  EXPECT_EQ(r.exit_code(), 0);
  ASSERT_FALSE(r.faults.empty());
  bool target_faulty = false;
  for (const auto& v : r.faults) target_faulty |= v.sensor_id == "SENS0021";
  EXPECT_TRUE(target_faulty);
  bool activated = false;
  for (const auto& e : r.events) {
    if (e.kind == VirtualEventKind::kActivated && e.target_id == "SENS0021") {
      activated = true;
      EXPECT_EQ(e.neighbour_id, "SENS0012");
    }
  }
  EXPECT_TRUE(activated);
  EXPECT_EQ(r.proposals.size(), 5u);
  EXPECT_TRUE(r.virtual_states.contains("SENS0021"));
}

TEST_F(DailyRun, OutOfRangeDateFailsIngest) {
  const PipelineConfig c = workspace("outside");
  const DailyResult r = run_daily(c, "2024-06-01");
  EXPECT_EQ(r.exit_code(), 10);
  EXPECT_TRUE(r.partial);
  EXPECT_THROW(run_daily(c, "June 1st"), Error);
}

}  // namespace
}  // namespace soilcast
