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

#include "wcdt/optimizer.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wcdt/error.h"

namespace wcdt {
namespace {

// Post-order greedy pass. Subtree costs exclude sigma; `prefer_min` selects
// between the minimizing rule and its inversion.
Labeling GreedyLabeling(const DecisionTree& tree, const SurrogateModel& model,
                        bool prefer_min) {
  CheckModel(model);
  std::vector<double> cost(tree.size(), 0.0);
  Labeling labeling;
  for (NodeId id : tree.post_order()) {
    const Node& node = tree.node(id);
    if (node.is_leaf()) continue;
    const double left = cost[node.inner().left];
    const double right = cost[node.inner().right];
    const bool left_taken = prefer_min ? left <= right : left > right;
    if (left_taken) {
      labeling.set(id, Side::kLeft);
      cost[id] = std::max(model.pi() + left, model.delta + right);
    } else {
      labeling.set(id, Side::kRight);
      cost[id] = std::max(model.delta + left, model.pi() + right);
    }
  }
  return labeling;
}

}  // namespace

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kSurrogateOpt: return "opt";
    case Strategy::kInverted: return "inverted";
    case Strategy::kStandard: return "standard";
    case Strategy::kSwap: return "swap";
    case Strategy::kBruteForceMin: return "brute-min";
    case Strategy::kBruteForceMax: return "brute-max";
  }
  return "unknown";
}

Strategy ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kSurrogateOpt, Strategy::kInverted,
                     Strategy::kStandard, Strategy::kSwap,
                     Strategy::kBruteForceMin, Strategy::kBruteForceMax}) {
    if (StrategyName(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidConfig,
              "unknown strategy '" + std::string(name) + "'");
}

Labeling SurrogateOpt(const DecisionTree& tree, const SurrogateModel& model) {
  return GreedyLabeling(tree, model, /*prefer_min=*/true);
}

Labeling InvertedOpt(const DecisionTree& tree, const SurrogateModel& model) {
  return GreedyLabeling(tree, model, /*prefer_min=*/false);
}

Labeling StandardLabeling(const DecisionTree& tree) {
  Labeling labeling;
  for (NodeId id : tree.inner_nodes()) labeling.set(id, Side::kRight);
  return labeling;
}

Labeling SwapLabeling(const DecisionTree& tree) {
  if (!tree.has_probabilities()) {
    throw Error(ErrorCode::kMissingProbabilities,
                "swap labeling needs a probability on every node");
  }
  Labeling labeling;
  for (NodeId id : tree.inner_nodes()) {
    const InnerNode& inner = tree.node(id).inner();
    const double left = *tree.node(inner.left).probability;
    const double right = *tree.node(inner.right).probability;
    labeling.set(id, left >= right ? Side::kRight : Side::kLeft);
  }
  return labeling;
}

BruteForceResult BruteForce(const DecisionTree& tree,
                            const SurrogateModel& model, Objective objective,
                            std::size_t max_inner_nodes) {
  CheckModel(model);
  const auto& inner = tree.inner_nodes();
  const std::size_t k = inner.size();
  if (k > max_inner_nodes || k >= 63) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(k) + " inner nodes exceed the brute-force "
                "limit of " + std::to_string(max_inner_nodes));
  }
  // Bit i of a mask set means inner node inner[i] takes its left child.
  std::vector<std::size_t> bit_of(tree.size(), 0);
  for (std::size_t i = 0; i < k; ++i) bit_of[inner[i]] = i;

  struct LeafMasks {
    int depth;
    std::uint64_t left_turns;   // inner nodes where the path goes left
    std::uint64_t right_turns;  // inner nodes where the path goes right
  };
  std::vector<LeafMasks> leaves;
  for (NodeId leaf : tree.leaves()) {
    LeafMasks m{tree.depth_of(leaf), 0, 0};
    const auto path = PathTo(tree, leaf);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << bit_of[path[i]];
      if (tree.node(path[i]).inner().left == path[i + 1]) {
        m.left_turns |= bit;
      } else {
        m.right_turns |= bit;
      }
    }
    leaves.push_back(m);
  }

  const std::uint64_t count = std::uint64_t{1} << k;
  std::uint64_t best_mask = 0;
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double worst = -INFINITY;
    for (const LeafMasks& m : leaves) {
      const int taken = std::popcount(mask & m.left_turns) +
                        std::popcount(~mask & m.right_turns);
      worst = std::max(worst, PathTerm(model, m.depth, taken));
    }
    const bool better = objective == Objective::kMin ? worst < best
                                                     : worst > best;
    if (mask == 0 || better) {
      best = worst;
      best_mask = mask;
    }
  }

  BruteForceResult result;
  for (std::size_t i = 0; i < k; ++i) {
    result.labeling.set(inner[i], (best_mask >> i) & 1 ? Side::kLeft
                                                      : Side::kRight);
  }
  result.cost = model.sigma + best;
  return result;
}

Labeling MakeLabeling(const DecisionTree& tree, Strategy strategy,
                      const SurrogateModel& model) {
  switch (strategy) {
    case Strategy::kSurrogateOpt: return SurrogateOpt(tree, model);
    case Strategy::kInverted: return InvertedOpt(tree, model);
    case Strategy::kStandard: return StandardLabeling(tree);
    case Strategy::kSwap: return SwapLabeling(tree);
    case Strategy::kBruteForceMin:
      return BruteForce(tree, model, Objective::kMin).labeling;
    case Strategy::kBruteForceMax:
      return BruteForce(tree, model, Objective::kMax).labeling;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown strategy");
}

}  // namespace wcdt
