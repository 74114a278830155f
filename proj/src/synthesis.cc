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

#include "wcdt/synthesis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wcdt/error.h"

namespace wcdt {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Uniform double in the open interval (0, 1), from the top 53 bits.
double OpenUnit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

struct Interval {
  double lo;  // exclusive
  double hi;  // inclusive

  bool has_interior() const { return std::nextafter(lo, hi) < hi; }
};

struct Pending {
  int depth;
  std::vector<Interval> box;
  double probability;
  std::optional<std::pair<NodeId, Side>> parent;
};

}  // namespace

std::uint64_t MixSeed(std::uint64_t value) {
  value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ULL;
  value = (value ^ (value >> 27)) * 0x94D049BB133111EBULL;
  return value ^ (value >> 31);
}

void CheckGenConfig(const GenConfig& config) {
  if (config.max_depth < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_depth must be >= 1");
  }
  if (config.num_features < 1) {
    throw Error(ErrorCode::kInvalidConfig, "num_features must be >= 1");
  }
  if (!(config.split_prob > 0.0 && config.split_prob <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "split_prob must lie in (0, 1]");
  }
}

DecisionTree GenerateTree(const GenConfig& config) {
  CheckGenConfig(config);
  const double half = config.max_depth / 2.0;
  std::vector<Node> nodes;
  double next_prediction = 0.0;

  std::vector<Pending> stack;
  stack.push_back(Pending{
      0, std::vector<Interval>(config.num_features, Interval{0.0, 1.0}), 1.0,
      std::nullopt});
  while (!stack.empty()) {
    Pending item = std::move(stack.back());
    stack.pop_back();
    const auto id = static_cast<NodeId>(nodes.size());
    if (item.parent) {
      InnerNode& parent = std::get<InnerNode>(nodes[item.parent->first].body);
      (item.parent->second == Side::kLeft ? parent.left : parent.right) = id;
    }
    std::mt19937_64 rng(MixSeed(config.seed + kGolden * (id + std::uint64_t{1})));

    bool split = false;
    if (item.depth <= half) {
      split = true;
    } else if (item.depth < config.max_depth) {
      split = OpenUnit(rng) < config.split_prob;
    }
    std::vector<int> open_features;
    if (split) {
      for (int f = 0; f < config.num_features; ++f) {
        if (item.box[f].has_interior()) open_features.push_back(f);
      }
      // Every interval has collapsed to adjacent doubles; no threshold can
      // keep both children reachable.
      if (open_features.empty()) split = false;
    }
    if (!split) {
      nodes.push_back(MakeLeaf(next_prediction++, item.probability));
      continue;
    }

    const int feature = open_features[rng() % open_features.size()];
    const Interval range = item.box[feature];
    double threshold = range.lo + OpenUnit(rng) * (range.hi - range.lo);
    if (!(range.lo < threshold && threshold < range.hi)) {
      threshold = range.lo + (range.hi - range.lo) / 2.0;
      if (!(range.lo < threshold && threshold < range.hi)) {
        threshold = std::nextafter(range.lo, range.hi);
      }
    }
    const double left_share = (threshold - range.lo) / (range.hi - range.lo);
    const double left_probability = item.probability * left_share;
    const double right_probability = item.probability - left_probability;
    nodes.push_back(MakeInner(feature, threshold, 0, 0, item.probability));

    Pending right{item.depth + 1, item.box, right_probability,
                  std::make_pair(id, Side::kRight)};
    right.box[feature].lo = threshold;
    Pending left{item.depth + 1, std::move(item.box), left_probability,
                 std::make_pair(id, Side::kLeft)};
    left.box[feature].hi = threshold;
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  return DecisionTree(std::move(nodes), 0, config.num_features);
}

std::vector<double> SynthesizeInput(const DecisionTree& tree, NodeId leaf) {
  const std::vector<NodeId> path = PathTo(tree, leaf);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<Interval> box(tree.num_features(), Interval{-kInf, kInf});
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const InnerNode& inner = tree.node(path[i]).inner();
    Interval& range = box[inner.feature];
    if (inner.left == path[i + 1]) {
      range.hi = std::min(range.hi, inner.threshold);
    } else {
      range.lo = std::max(range.lo, inner.threshold);
    }
    if (!(range.lo < range.hi)) {
      throw Error(ErrorCode::kInfeasiblePath,
                  "path to leaf " + std::to_string(leaf) +
                      " requires feature " + std::to_string(inner.feature) +
                      " in an empty interval");
    }
  }

  std::vector<double> x(box.size());
  for (std::size_t f = 0; f < box.size(); ++f) {
    const Interval c = box[f];
    Interval pick{std::max(c.lo, 0.0), std::min(c.hi, 1.0)};
    if (!(pick.lo < pick.hi)) {
      // The admissible interval lies entirely outside the unit domain.
      pick = c;
      if (std::isinf(pick.lo)) pick.lo = pick.hi - 1.0;
      if (std::isinf(pick.hi)) pick.hi = pick.lo + 1.0;
    }
    double value = pick.lo + (pick.hi - pick.lo) / 2.0;
    if (!(value > c.lo && value <= c.hi)) value = pick.hi;
    x[f] = value;
  }
  return x;
}

}  // namespace wcdt
