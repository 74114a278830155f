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

#include "wcdt/codegen.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "test_util.h"
#include "wcdt/error.h"
#include "wcdt/io.h"
#include "wcdt/optimizer.h"
#include "wcdt/synthesis.h"

namespace wcdt {
namespace {

using testing::WalkthroughStandardLabeling;
using testing::WalkthroughFlippedLabeling;
using testing::WalkthroughTree;

TEST(EmitC, StandardLayoutKeepsLeftInIfBlock) {
  const std::string expected =
      "/* Decision tree with 3 leaves, depth 2. Generated by wcdt. */\n"
      "\n"
      "int predict(const double* x) {\n"
      "  if (x[0] <= 0.5) {\n"
      "    return 1;\n"
      "  } else {\n"
      "    if (x[0] <= 0.8) {\n"
      "      return 2;\n"
      "    } else {\n"
      "      return 3;\n"
      "    }\n"
      "  }\n"
      "}\n";
  EXPECT_EQ(EmitC(WalkthroughTree(), WalkthroughStandardLabeling(), EmitConfig{}), expected);
}

TEST(EmitC, FlippedRootInvertsCondition) {
  const std::string expected =
      "/* Decision tree with 3 leaves, depth 2. Generated by wcdt. */\n"
      "\n"
      "int predict(const double* x) {\n"
      "  if (x[0] > 0.5) {\n"
      "    if (x[0] <= 0.8) {\n"
      "      return 2;\n"
      "    } else {\n"
      "      return 3;\n"
      "    }\n"
      "  } else {\n"
      "    return 1;\n"
      "  }\n"
      "}\n";
  EXPECT_EQ(EmitC(WalkthroughTree(), WalkthroughFlippedLabeling(), EmitConfig{}), expected);
}

TEST(EmitC, RootOnlyIsSingleReturn) {
  EmitConfig config;
  config.function_name = "classify";
  const std::string out =
      EmitC(testing::RootOnlyTree(7), Labeling(), config);
  EXPECT_NE(out.find("int classify(const double* x) {\n  (void)x;\n  return "
                     "7;\n}\n"),
            std::string::npos)
      << out;
}

TEST(EmitC, Errors) {
  EmitConfig bad_name;
  bad_name.function_name = "2fast";
  try {
    EmitC(WalkthroughTree(), WalkthroughStandardLabeling(), bad_name);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidIdentifier);
  }
  for (const char* name : {"", "if", "a-b", "main", "x y"}) {
    EXPECT_FALSE(IsCIdentifier(name)) << name;
  }
  EXPECT_TRUE(IsCIdentifier("_tree_0"));
  try {
    EmitC(WalkthroughTree(), Labeling(), EmitConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLabelingMismatch);
  }
  const DecisionTree fractional(
      {MakeInner(0, 0.5, 1, 2), MakeLeaf(0.25), MakeLeaf(1)}, 0, 1);
  EXPECT_THROW(EmitC(fractional, StandardLabeling(fractional), EmitConfig{}),
               Error);
  EmitConfig doubles;
  doubles.return_type = ReturnType::kFloat64;
  EXPECT_NE(EmitC(fractional, StandardLabeling(fractional), doubles)
                .find("return 0.25;"),
            std::string::npos);
}

TEST(EmitC, Deterministic) {
  const DecisionTree tree = GenerateTree({10, 4, 5, 0.5});
  const Labeling l = SurrogateOpt(tree, DefaultModelTable().Select(10));
  EmitConfig config;
  config.include_main = true;
  EXPECT_EQ(EmitC(tree, l, config), EmitC(tree, l, config));
}

TEST(EmitC, DeepTreeWithoutRecursion) {
  const int depth = 1000;
  std::vector<Node> nodes(2 * depth + 1);
  for (int i = 0; i < depth; ++i) {
    nodes[2 * i] = MakeInner(0, 0.5, 2 * i + 1, 2 * i + 2);
    nodes[2 * i + 1] = MakeLeaf(i);
  }
  nodes[2 * depth] = MakeLeaf(depth);
  const DecisionTree tree(std::move(nodes), 0, 1);
  const std::string out = EmitC(tree, StandardLabeling(tree), EmitConfig{});
  EXPECT_NE(out.find(std::string(2 * depth + 2, ' ') + "return 1000;"),
            std::string::npos);
}

TEST(FloatLiteral, ShortestRoundTrip) {
  EXPECT_EQ(FloatLiteral(0.5, false), "0.5");
  EXPECT_EQ(FloatLiteral(3.0, false), "3.0");
  EXPECT_EQ(FloatLiteral(0.1, false), "0.1");
  EXPECT_EQ(FloatLiteral(1e-7, false), "1e-07");
  EXPECT_EQ(FloatLiteral(-2.0, false), "-2.0");
  EXPECT_EQ(FloatLiteral(0.5, true), "0.5f");
  EXPECT_EQ(FloatLiteral(2.0, true), "2.0f");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(std::strtod(FloatLiteral(v, false).c_str(), nullptr), v);
  }
}

TEST(EmitC, Float32ThresholdKeepsBoundary) {
  // 0.3 is not a float; the emitted literal must be the largest float not
  // above it so that x <= 0.3 is decided identically for float inputs.
  const DecisionTree tree({MakeInner(0, 0.3, 1, 2), MakeLeaf(0), MakeLeaf(1)},
                          0, 1);
  EmitConfig config;
  config.feature_type = FeatureType::kFloat32;
  const std::string out = EmitC(tree, StandardLabeling(tree), config);
  const auto pos = out.find("<= ");
  ASSERT_NE(pos, std::string::npos);
  const float literal = std::strtof(out.c_str() + pos + 3, nullptr);
  EXPECT_LE(static_cast<double>(literal), 0.3);
  EXPECT_GT(static_cast<double>(std::nextafter(literal, 1.0f)), 0.3);
  EXPECT_NE(out.find("const float* x"), std::string::npos);
}

TEST(InterpretEmitted, FlippedRootTakesBranchForLeftLeaf) {
  const auto x = SynthesizeInput(WalkthroughTree(), 1);
  const EmittedTrace trace = InterpretEmitted(WalkthroughTree(), WalkthroughFlippedLabeling(), x);
  ASSERT_EQ(trace.branches.size(), 1u);
  EXPECT_EQ(trace.branches[0], (BranchOutcome{0, false}));
  EXPECT_EQ(trace.prediction, 1);
}

TEST(InterpretEmitted, BoundaryFollowsLeftUnderBothConditions) {
  const DecisionTree tree({MakeInner(0, 0.5, 1, 2), MakeLeaf(0), MakeLeaf(1)},
                          0, 1);
  const std::vector<double> x = {0.5};
  for (Side taken : {Side::kLeft, Side::kRight}) {
    const Labeling l({{0, taken}});
    EXPECT_EQ(InterpretEmitted(tree, l, x).prediction, 0);
  }
}

TEST(InterpretEmitted, DimensionMismatch) {
  try {
    InterpretEmitted(WalkthroughTree(), WalkthroughStandardLabeling(), std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(InterpretEmitted, SemanticPreservationAndTraceConsistency) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const DecisionTree tree = testing::RandomShapeTree(rng, trial % 30);
    Labeling l;
    for (NodeId id : tree.inner_nodes()) {
      l.set(id, coin(rng) ? Side::kLeft : Side::kRight);
    }
    for (int i = 0; i < 10; ++i) {
      std::vector<double> x(tree.num_features());
      for (double& v : x) v = unit(rng);
      EXPECT_EQ(InterpretEmitted(tree, l, x).prediction,
                Infer(tree, x).prediction);
    }
  }
}

TEST(InterpretEmitted, TraceMatchesPathStatsOnGeneratedTrees) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const DecisionTree tree =
        GenerateTree({2 + static_cast<int>(seed % 9), 3, seed, 0.5});
    Labeling l;
    for (NodeId id : tree.inner_nodes()) {
      l.set(id, coin(rng) ? Side::kLeft : Side::kRight);
    }
    for (const PathStats& p : EnumeratePaths(tree, l)) {
      const auto x = SynthesizeInput(tree, p.leaf);
      const auto trace = InterpretEmitted(tree, l, x);
      EXPECT_EQ(trace.prediction, tree.node(p.leaf).leaf().prediction);
      EXPECT_EQ(trace.taken_count(), p.taken);
      EXPECT_EQ(trace.branches.size(), static_cast<std::size_t>(p.depth));
    }
  }
}

// Compiles the emitted source with the system C compiler, when present, and
// checks every leaf's synthesized input.
TEST(EmitC, CompiledProgramMatchesInference) {
  if (std::system("cc --version > /dev/null 2>&1") != 0) {
    GTEST_SKIP() << "no C compiler";
  }
  const auto dir = std::filesystem::temp_directory_path() / "wcdt_codegen";
  std::filesystem::create_directories(dir);
  int case_id = 0;
  for (std::uint64_t seed : {1u, 2u}) {
    const DecisionTree tree = GenerateTree({6, 3, seed, 0.5});
    for (Strategy s : {Strategy::kStandard, Strategy::kSurrogateOpt,
                       Strategy::kInverted, Strategy::kSwap}) {
      for (FeatureType ft : {FeatureType::kFloat64, FeatureType::kFloat32}) {
        const Labeling l =
            MakeLabeling(tree, s, DefaultModelTable().Select(tree.depth()));
        EmitConfig config;
        config.include_main = true;
        config.feature_type = ft;
        const auto src = dir / ("tree" + std::to_string(case_id) + ".c");
        const auto bin = dir / ("tree" + std::to_string(case_id));
        ++case_id;
        WriteFile(src.string(), EmitC(tree, l, config));
        const std::string compile = "cc -std=c99 -O0 -Wall -Werror -o " +
                                    bin.string() + " " + src.string();
        ASSERT_EQ(std::system(compile.c_str()), 0) << compile;
        for (NodeId leaf : tree.leaves()) {
          const auto x = SynthesizeInput(tree, leaf);
          std::string cmd = bin.string();
          for (double v : x) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), " %.17g", v);
            cmd += buf;
          }
          FILE* pipe = popen(cmd.c_str(), "r");
          ASSERT_NE(pipe, nullptr);
          int predicted = -1;
          ASSERT_EQ(std::fscanf(pipe, "%d", &predicted), 1);
          pclose(pipe);
          EXPECT_EQ(predicted, tree.node(leaf).leaf().prediction) << cmd;
        }
      }
    }
  }
}

}  // namespace
}  // namespace wcdt
