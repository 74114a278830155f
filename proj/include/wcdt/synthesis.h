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

// Synthetic decision trees shaped like CART output, and inputs that force
// inference down a chosen path.

#ifndef WCDT_SYNTHESIS_H_
#define WCDT_SYNTHESIS_H_

#include <cstdint>
#include <vector>

#include "wcdt/tree.h"

namespace wcdt {

struct GenConfig {
  int max_depth = 4;
  int num_features = 4;
  std::uint64_t seed = 0;
  // Chance that a node strictly between half the maximal depth and the
  // maximal depth is split.
  double split_prob = 0.5;
};

// Throws Error{kInvalidConfig} on max_depth < 1, num_features < 1 or
// split_prob outside (0, 1].
void CheckGenConfig(const GenConfig& config);

// Nodes at depth <= max_depth / 2 always split, nodes at max_depth never
// do, and nodes in between split with probability split_prob.
//
// Node ids follow pre-order, left first. Every feature ranges over (0, 1];
// each threshold lies strictly inside the interval its path admits, so all
// leaves are reachable. Probabilities are the reach probabilities of a
// uniformly distributed input. Leaves predict 0, 1, 2, ... in id order.
//
// Randomness: node i draws from its own std::mt19937_64 seeded with
// SplitMix64(seed + 0x9E3779B97F4A7C15 * (i + 1)), so a tree depends only on
// the config.
DecisionTree GenerateTree(const GenConfig& config);

// Returns a feature vector whose inference ends at `leaf`. Each feature is
// the midpoint of the interval the path admits, intersected with the unit
// domain (0, 1] when that intersection is non-empty. Unconstrained
// features are 0.5.
//
// Throws Error{kNotALeaf}, or Error{kInfeasiblePath} when the path's
// constraints contradict each other.
std::vector<double> SynthesizeInput(const DecisionTree& tree, NodeId leaf);

// SplitMix64 finalizer.
std::uint64_t MixSeed(std::uint64_t value);

}  // namespace wcdt

#endif  // WCDT_SYNTHESIS_H_
