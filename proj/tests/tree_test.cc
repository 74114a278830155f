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

#include "wcdt/tree.h"

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "test_util.h"
#include "wcdt/error.h"
#include "wcdt/optimizer.h"

namespace wcdt {
namespace {

using testing::WalkthroughStandardLabeling;
using testing::WalkthroughFlippedLabeling;
using testing::WalkthroughTree;

bool AnyContains(const std::vector<std::string>& items, const std::string& s) {
  for (const auto& item : items) {
    if (item.find(s) != std::string::npos) return true;
  }
  return false;
}

std::vector<std::string> ViolationsOf(std::vector<Node> nodes, NodeId root,
                                      int features) {
  try {
    DecisionTree tree(std::move(nodes), root, features);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedTree);
    return e.details();
  }
  return {};
}

TEST(ValidateTree, RootOnlyLeafIsValid) {
  const DecisionTree tree = testing::RootOnlyTree();
  EXPECT_EQ(TreeDepth(tree), 0);
  EXPECT_EQ(tree.leaves().size(), 1u);
  EXPECT_TRUE(tree.inner_nodes().empty());
}

TEST(ValidateTree, SelfLoopIsCycle) {
  auto v = ViolationsOf({MakeInner(0, 0.5, 0, 1), MakeLeaf(1)}, 0, 1);
  EXPECT_TRUE(AnyContains(v, "cycle")) << ::testing::PrintToString(v);
}

TEST(ValidateTree, Fig2ShapeIsValidWithDepthTwo) {
  const DecisionTree tree = WalkthroughTree();
  EXPECT_EQ(TreeDepth(tree), 2);
  EXPECT_EQ(tree.size(), 5u);
}

TEST(ValidateTree, ReportsEachViolationKind) {
  EXPECT_TRUE(AnyContains(
      ViolationsOf({MakeInner(0, 0.5, 1, 9), MakeLeaf(1)}, 0, 1),
      "dangling child"));
  EXPECT_TRUE(AnyContains(
      ViolationsOf({MakeInner(0, 0.5, 1, 2), MakeInner(0, 0.2, 3, 4),
                    MakeInner(0, 0.7, 3, 5), MakeLeaf(1), MakeLeaf(2),
                    MakeLeaf(3)},
                   0, 1),
      "shared child"));
  EXPECT_TRUE(AnyContains(
      ViolationsOf({MakeInner(3, 0.5, 1, 2), MakeLeaf(1), MakeLeaf(2)}, 0, 2),
      "bad feature index"));
  EXPECT_TRUE(AnyContains(
      ViolationsOf({MakeInner(0, 0.5, 1, 1), MakeLeaf(1)}, 0, 1),
      "not distinct"));
  // Two-node cycle detached from the root.
  EXPECT_TRUE(AnyContains(
      ViolationsOf({MakeInner(0, 0.5, 1, 2), MakeLeaf(1), MakeLeaf(2),
                    MakeInner(0, 0.5, 4, 5), MakeInner(0, 0.5, 3, 6),
                    MakeLeaf(5), MakeLeaf(6)},
                   0, 1),
      "unreachable"));
  EXPECT_TRUE(AnyContains(
      ViolationsOf({MakeInner(0, 0.5, 1, 2, 1.0), MakeLeaf(1, 0.6),
                    MakeLeaf(2, 0.6)},
                   0, 1),
      "probability"));
  EXPECT_TRUE(AnyContains(
      ViolationsOf({MakeInner(0, 0.5, 0, 1), MakeLeaf(1)}, 5, 1),
      "dangling root"));
  EXPECT_TRUE(AnyContains(ViolationsOf({}, 0, 1), "empty"));
}

TEST(ValidateTree, RootWithParentIsCycle) {
  auto v = ViolationsOf({MakeInner(0, 0.5, 1, 2), MakeInner(0, 0.5, 0, 3),
                         MakeLeaf(1), MakeLeaf(2)},
                        0, 1);
  EXPECT_TRUE(AnyContains(v, "cycle")) << ::testing::PrintToString(v);
}

TEST(Infer, BoundaryGoesLeft) {
  const DecisionTree tree(
      {MakeInner(0, 0.5, 1, 2), MakeLeaf(1), MakeLeaf(2)}, 0, 1);
  EXPECT_EQ(Infer(tree, std::vector<double>{0.5}).prediction, 1);
  EXPECT_EQ(Infer(tree, std::vector<double>{0.6}).prediction, 2);
  EXPECT_EQ(Infer(tree, std::vector<double>{0.6}).path,
            (std::vector<NodeId>{0, 2}));
}

TEST(Infer, RootOnly) {
  const auto result = Infer(testing::RootOnlyTree(7), std::vector<double>{});
  EXPECT_EQ(result.prediction, 7);
  EXPECT_EQ(result.path, std::vector<NodeId>{0});
}

TEST(Infer, DimensionMismatch) {
  try {
    Infer(WalkthroughTree(), std::vector<double>{0.1, 0.2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(EnumeratePaths, Fig2a) {
  const auto stats = EnumeratePaths(WalkthroughTree(), WalkthroughStandardLabeling());
  ASSERT_EQ(stats.size(), 3u);
  EXPECT_EQ(stats[0], (PathStats{1, 1, 0}));
  EXPECT_EQ(stats[1], (PathStats{3, 2, 1}));
  EXPECT_EQ(stats[2], (PathStats{4, 2, 2}));
}

TEST(EnumeratePaths, Fig2b) {
  const auto stats = EnumeratePaths(WalkthroughTree(), WalkthroughFlippedLabeling());
  ASSERT_EQ(stats.size(), 3u);
  EXPECT_EQ(stats[0], (PathStats{1, 1, 1}));
  EXPECT_EQ(stats[1], (PathStats{3, 2, 0}));
  EXPECT_EQ(stats[2], (PathStats{4, 2, 1}));
}

TEST(EnumeratePaths, RootOnly) {
  const auto stats = EnumeratePaths(testing::RootOnlyTree(), Labeling());
  ASSERT_EQ(stats.size(), 1u);
  EXPECT_EQ(stats[0], (PathStats{0, 0, 0}));
}

TEST(EnumeratePaths, LabelingMismatch) {
  for (const Labeling& bad :
       {Labeling({{0, Side::kLeft}}),
        Labeling({{0, Side::kLeft}, {2, Side::kLeft}, {3, Side::kLeft}}),
        Labeling({{0, Side::kLeft}, {1, Side::kLeft}})}) {
    try {
      EnumeratePaths(WalkthroughTree(), bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kLabelingMismatch);
    }
  }
}

TEST(TreeDepth, PerfectTree) {
  const DecisionTree tree = testing::PerfectTree(3);
  EXPECT_EQ(tree.size(), 15u);
  EXPECT_EQ(TreeDepth(tree), 3);
}

TEST(PathTo, RejectsInnerNode) {
  try {
    PathTo(WalkthroughTree(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotALeaf);
  }
  EXPECT_EQ(PathTo(WalkthroughTree(), 4), (std::vector<NodeId>{0, 2, 4}));
}

// Properties over random shapes and labelings.
TEST(TreeProperties, PathInvariants) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const DecisionTree tree = testing::RandomShapeTree(rng, trial % 25);
    Labeling random_labeling;
    for (NodeId id : tree.inner_nodes()) {
      random_labeling.set(id, unit(rng) < 0.5 ? Side::kLeft : Side::kRight);
    }
    const auto stats = EnumeratePaths(tree, random_labeling);
    ASSERT_EQ(stats.size(), tree.leaves().size());
    double kraft = 0.0;
    for (const PathStats& p : stats) {
      EXPECT_EQ(p.taken + p.untaken(), p.depth);
      EXPECT_GE(p.taken, 0);
      EXPECT_LE(p.taken, p.depth);
      EXPECT_EQ(p.depth, tree.depth_of(p.leaf));
      kraft += std::ldexp(1.0, -p.depth);
    }
    EXPECT_DOUBLE_EQ(kraft, 1.0);

    const Labeling standard = StandardLabeling(tree);
    for (int i = 0; i < 5; ++i) {
      std::vector<double> x(tree.num_features());
      for (double& v : x) v = unit(rng);
      const auto result = Infer(tree, x);
      EXPECT_LE(static_cast<int>(result.path.size()) - 1, TreeDepth(tree));
      EXPECT_TRUE(tree.node(result.path.back()).is_leaf());
    }
    // Standard labeling counts right turns.
    for (const PathStats& p : EnumeratePaths(tree, standard)) {
      const auto path = PathTo(tree, p.leaf);
      int right_turns = 0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        right_turns += tree.node(path[i]).inner().right == path[i + 1];
      }
      EXPECT_EQ(p.taken, right_turns);
    }
  }
}

}  // namespace
}  // namespace wcdt
