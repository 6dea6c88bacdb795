/* Copyright 2026 The Spotflow Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

int Cli(const std::string& args) {
  std::string cmd = std::string(SPOTFLOW_BIN) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

size_t CountLines(const fs::path& p) {
  std::ifstream in(p);
  size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spotflow_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path Write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, RunWritesThreeOutputs) {
  fs::path conf = Write("small.conf",
                        "camera_count = 50\nduration = 60s\n"
                        "drops_enabled = true\n");
  fs::path out = dir_ / "out";
  ASSERT_EQ(Cli("run --config " + conf.string() + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "events.csv"));
  EXPECT_TRUE(fs::exists(out / "summary.json"));
  EXPECT_TRUE(fs::exists(out / "timeline.csv"));
  EXPECT_GT(CountLines(out / "events.csv"), 1u);
  EXPECT_EQ(CountLines(out / "timeline.csv"), 61u);
}

TEST_F(CliTest, MissingConfigExitsTwo) {
  EXPECT_EQ(Cli("run --config " + (dir_ / "nope.conf").string() + " --out " +
                (dir_ / "o").string()),
            2);
}

TEST_F(CliTest, BadConfigExitsTwo) {
  fs::path conf = Write("bad.conf", "camera_count = -3\n");
  EXPECT_EQ(Cli("run --config " + conf.string() + " --out " +
                (dir_ / "o").string()),
            2);
  fs::path unknown = Write("unknown.conf", "cameras = 3\n");
  EXPECT_EQ(Cli("run --config " + unknown.string() + " --out " +
                (dir_ / "o").string()),
            2);
}

TEST_F(CliTest, MissingGraphFileExitsTwo) {
  fs::path conf = Write("g.conf", "graph_file = missing.txt\n");
  EXPECT_EQ(Cli("run --config " + conf.string() + " --out " +
                (dir_ / "o").string()),
            2);
}

TEST_F(CliTest, UsageErrorExitsTwo) {
  EXPECT_EQ(Cli("run --out x"), 2);
  EXPECT_EQ(Cli("calibrate --xi 100 --gamma 2000 --out x"), 2);
}

TEST_F(CliTest, CalibrateWrites101Entries) {
  fs::path out = dir_ / "nob.csv";
  ASSERT_EQ(Cli("calibrate --xi 54,67 --gamma 3650 --out " + out.string()), 0);
  EXPECT_EQ(CountLines(out), 102u);
}

TEST_F(CliTest, GenGraphThenRunOnIt) {
  fs::path graph = dir_ / "g.txt";
  ASSERT_EQ(Cli("gen-graph --vertices 300 --edges 840 --seed 4 --out " +
                graph.string()),
            0);
  EXPECT_EQ(CountLines(graph), 840u);
  fs::path conf = Write("on_graph.conf",
                        "graph_file = g.txt\ncamera_count = 40\n"
                        "duration = 30s\n");
  EXPECT_EQ(Cli("run --config " + conf.string() + " --out " +
                (dir_ / "o").string()),
            0);
}

}  // namespace
