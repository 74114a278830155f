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

// Labeling strategies.
//
// SurrogateOpt labels bottom-up: at every inner node the child whose
// subtree has the smaller estimated cost takes the taken slot, since the
// cheaper subtree can absorb the extra per-taken-edge cost. This minimizes
// the tree's estimated WCET over all labelings whenever
// delta + gamma >= delta >= 0. Reversing the comparison yields the
// maximizing labeling.

#ifndef WCDT_OPTIMIZER_H_
#define WCDT_OPTIMIZER_H_

#include <cstddef>
#include <string_view>

#include "wcdt/surrogate.h"
#include "wcdt/tree.h"

namespace wcdt {

enum class Strategy {
  kSurrogateOpt,
  kInverted,
  kStandard,
  kSwap,
  kBruteForceMin,
  kBruteForceMax,
};

std::string_view StrategyName(Strategy strategy);
// Accepts the CLI spellings: opt, inverted, standard, swap, brute-min,
// brute-max. Throws Error{kInvalidConfig} otherwise.
Strategy ParseStrategy(std::string_view name);

// Ties go to the left child taking the taken slot.
Labeling SurrogateOpt(const DecisionTree& tree, const SurrogateModel& model);

// On ties the right child is taken.
Labeling InvertedOpt(const DecisionTree& tree, const SurrogateModel& model);

// Right child taken, left child falls through, at every inner node.
Labeling StandardLabeling(const DecisionTree& tree);

// The more probable child falls through (untaken); ties keep the left child
// untaken. Throws Error{kMissingProbabilities} if any node lacks a
// probability.
Labeling SwapLabeling(const DecisionTree& tree);

enum class Objective { kMin, kMax };

struct BruteForceResult {
  Labeling labeling;
  double cost = 0.0;
};

inline constexpr std::size_t kDefaultBruteForceLimit = 20;

// Enumerates all 2^k labelings of the k inner nodes and returns the first
// (in enumeration order) attaining the objective. Throws Error{kTooLarge}
// when k exceeds `max_inner_nodes`.
BruteForceResult BruteForce(const DecisionTree& tree,
                            const SurrogateModel& model, Objective objective,
                            std::size_t max_inner_nodes =
                                kDefaultBruteForceLimit);

// Dispatches on `strategy`. `model` is ignored by Standard and Swap.
Labeling MakeLabeling(const DecisionTree& tree, Strategy strategy,
                      const SurrogateModel& model);

}  // namespace wcdt

#endif  // WCDT_OPTIMIZER_H_
