/*
 * Copyright 2026 The wcdt Authors.
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

// Runs the wcdt executable and checks exit codes, stderr conventions and
// byte-for-byte determinism of generated files.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "test_util.h"
#include "wcdt/io.h"

namespace wcdt {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult RunCli(const std::string& args) {
  const std::string cmd = std::string(WCDT_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wcdt_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()
                                          ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  fs::path dir_;
};

TEST_F(CliTest, GenIsDeterministicAndValid) {
  for (const char* name : {"a.json", "b.json"}) {
    const RunResult r = RunCli("gen --max-depth 4 --features 3 --seed 7 -o " +
                            Path(name));
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(r.output.rfind("depth ", 0), 0u) << r.output;
  }
  EXPECT_EQ(ReadFile(Path("a.json")), ReadFile(Path("b.json")));
  const RunResult v = RunCli("validate " + Path("a.json"));
  EXPECT_EQ(v.exit_code, 0) << v.output;
  EXPECT_EQ(v.output.rfind("valid:", 0), 0u);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  RunResult r = RunCli("gen --max-depth 0 --seed 1 -o " + Path("t.json"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(r.output.rfind("error: ", 0), 0u) << r.output;
  EXPECT_NE(r.output.find("--max-depth"), std::string::npos);
  EXPECT_EQ(RunCli("gen --max-depth 4 -o " + Path("t.json")).exit_code, 2);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 2);
  EXPECT_EQ(RunCli("label x --strategy best -o y").exit_code, 2);
}

TEST_F(CliTest, DomainErrorsExitOne) {
  WriteFile(Path("fig2.json"), TreeToJson(testing::WalkthroughTree(false)));
  RunResult r = RunCli("label " + Path("fig2.json") +
                    " --strategy swap -o " + Path("l.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.output.rfind("error: ", 0), 0u) << r.output;
  EXPECT_NE(r.output.find("MissingProbabilities"), std::string::npos);

  r = RunCli("validate " + Path("missing.json"));
  EXPECT_EQ(r.exit_code, 1);

  WriteFile(Path("bad.json"),
            R"({"num_features": 1, "root": 0, "nodes": [{"id": 0, "feature": 0, "threshold": 0.5, "left": 0, "right": 0}]})");
  r = RunCli("validate " + Path("bad.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("MalformedTree"), std::string::npos) << r.output;

  WriteFile(Path("empty.csv"), "");
  r = RunCli("fit " + Path("empty.csv"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("TooFewSamples"), std::string::npos) << r.output;

  WriteFile(Path("l.json"), R"({"taken": {"0": "left"}})");
  r = RunCli("emit " + Path("fig2.json") + " --labeling " + Path("l.json") +
          " -o " + Path("t.c"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("LabelingMismatch"), std::string::npos) << r.output;
}

TEST_F(CliTest, Walkthrough) {
  WriteFile(Path("fig2.json"), TreeToJson(testing::WalkthroughTree(true)));
  RunResult r = RunCli("label " + Path("fig2.json") +
                    " --strategy opt --toy-model 0,2,1 -o " + Path("opt.json"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("cost 5 "), std::string::npos) << r.output;
  r = RunCli("label " + Path("fig2.json") +
          " --strategy standard --toy-model 0,2,1 -o " + Path("std.json"));
  EXPECT_NE(r.output.find("cost 6 "), std::string::npos) << r.output;
  r = RunCli("compare " + Path("fig2.json") + " --toy-model 0,2,1 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("\"standard_norm\": 1.2"), std::string::npos)
      << r.output;
  for (const char* name : {"a.c", "b.c"}) {
    r = RunCli("emit " + Path("fig2.json") + " --labeling " +
            Path("opt.json") + " --include-main -o " + Path(name));
    ASSERT_EQ(r.exit_code, 0) << r.output;
  }
  EXPECT_EQ(ReadFile(Path("a.c")), ReadFile(Path("b.c")));
  EXPECT_NE(ReadFile(Path("a.c")).find("if (x[0] > 0.5)"), std::string::npos);
}

TEST_F(CliTest, FitDepthConstantReportsZeroDelta) {
  WriteFile(Path("s.csv"),
            "depth,taken,wcet\n2,0,270\n2,1,275\n2,2,280\n2,1,275\n");
  const RunResult r = RunCli("fit " + Path("s.csv") + " --depth 2 -o " +
                          Path("fit.json"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(ReadFile(Path("fit.json")).find("\"delta\": 0.0"),
            std::string::npos)
      << ReadFile(Path("fit.json"));
}

TEST_F(CliTest, PipelineDeterministic) {
  for (const char* sub : {"p1", "p2"}) {
    const RunResult r = RunCli("pipeline --depths 2,4,6 --trees-per-depth 4 "
                            "--seed 11 --out-dir " + Path(sub));
    ASSERT_EQ(r.exit_code, 0) << r.output;
  }
  for (const char* file : {"model_table.json", "report.json", "report.csv"}) {
    EXPECT_EQ(ReadFile(Path(std::string("p1/") + file)),
              ReadFile(Path(std::string("p2/") + file)));
  }
}

}  // namespace
}  // namespace wcdt
