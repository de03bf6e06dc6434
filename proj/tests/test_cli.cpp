// Copyright 2026 The wincc Authors
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wincc/cli.hpp"

namespace wincc {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wincc");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wincc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  const std::string example_ = testing::data_path("example.game.json");
  fs::path dir_;
};

TEST_F(Cli, SolveExample) {
  const auto r = run({"solve", "--game", example_, "--constraint", "min:a:1:7", "--iterate-over", "0",
                      "--stats-out", path("stats.json"), "--strategy-out", path("strategy.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "verdict win window 3\n");
  const auto stats = slurp(path("stats.json"));
  EXPECT_NE(stats.find("\"final_window\": 3"), std::string::npos);
  EXPECT_NE(r.err.find("iteration c=3"), std::string::npos);
  EXPECT_NE(r.err.find("strategy verified"), std::string::npos);
  EXPECT_FALSE(slurp(path("strategy.json")).empty());
}

TEST_F(Cli, DirectLoses) {
  const auto r = run({"direct", "--game", example_, "--constraint", "min:a:1:1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "verdict lose window 1\n");
}

TEST_F(Cli, Inconclusive) {
  const auto r = run({"solve", "--game", example_, "--constraint", "min:a:1:7", "--iterate-over", "0",
                      "--max-iterations", "2", "-q"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.err.empty());
}

TEST_F(Cli, ExportDot) {
  const auto r = run({"export-dot", "--game", example_, "--constraint", "min:a:1:2",
                      "--iteration-length", "2", "-o", path("it2.dot")});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream dot(slurp(path("it2.dot")));
  std::size_t nodes = 0;
  for (std::string line; std::getline(dot, line);)
    nodes += line.starts_with("  s") && line.find("->") == std::string::npos;
  EXPECT_EQ(nodes, 14U);
}

TEST_F(Cli, OracleCheck) {
  const auto r = run({"oracle-check", "--game", example_, "--constraint", "min:a:1:3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("agree"), std::string::npos);
  const auto flag = run({"solve", "--game", example_, "--constraint", "min:a:1:4", "--iterate-over",
                         "0", "--oracle-check", "-q"});
  EXPECT_EQ(flag.code, 0) << flag.err;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({"solve", "--game", example_, "--constraint", "min:a:1:7"}).code, 64);
  EXPECT_EQ(run({"solve", "--game", example_, "--constraint", "min:a:1:7", "--iterate-over", "3"}).code, 64);
  EXPECT_EQ(run({"direct", "--game", example_, "--constraint", "min:q:1:7"}).code, 64);
  EXPECT_EQ(run({"direct", "--game", example_, "--constraint", "min:a:1:7", "--bogus"}).code, 64);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, IoAndDataErrors) {
  EXPECT_EQ(run({"direct", "--game", path("missing.json"), "--constraint", "min:a:1:2"}).code, 74);
  std::ofstream(path("bad.json")) << "{ not json";
  EXPECT_EQ(run({"direct", "--game", path("bad.json"), "--constraint", "min:a:1:2"}).code, 65);
  EXPECT_EQ(run({"direct", "--game", example_, "--constraint", "min:a:1:2", "--stats-out",
                 path("no/such/dir/stats.json")}).code,
            74);
}

TEST_F(Cli, SituationBudget) {
  ::setenv("SOLVER_MAX_SITUATIONS", "5", 1);
  const auto r = run({"direct", "--game", example_, "--constraint", "min:a:1:2"});
  ::unsetenv("SOLVER_MAX_SITUATIONS");
  EXPECT_EQ(r.code, 75);
}

TEST_F(Cli, BenchGenerateAndCompare) {
  auto g = run({"bench", "generate", "--family", "grid", "--width", "6", "--height", "6",
                "--charger-spacing", "3", "--seed", "1", "-o", path("floor.json")});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(load_game(path("floor.json")).state_count(), 72U);
  const auto c = run({"bench", "compare", "--game", path("floor.json"), "--constraint",
                      "min:charge:2:8", "--iterate-over", "0", "--report", path("report.json")});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_NE(slurp(path("report.json")).find("\"verdicts_agree\": true"), std::string::npos);
  EXPECT_EQ(run({"bench", "generate", "--family", "torus"}).code, 64);
  EXPECT_EQ(run({"bench"}).code, 64);
}

TEST_F(Cli, DeterministicOutputs) {
  std::vector<std::string> outputs;
  for (int i = 0; i < 2; ++i) {
    const auto tag = std::to_string(i);
    const auto r = run({"solve", "--game", example_, "--constraint", "min:a:1:7", "--iterate-over", "0",
                        "--stats-out", path("stats" + tag), "--strategy-out", path("strategy" + tag),
                        "--dot-out", path("dot" + tag), "-q"});
    ASSERT_EQ(r.code, 0);
    outputs.push_back(slurp(path("stats" + tag)) + slurp(path("strategy" + tag)) + slurp(path("dot" + tag)));
  }
  EXPECT_EQ(outputs[0], outputs[1]);
}

}  // namespace
}  // namespace wincc
