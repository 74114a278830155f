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

// Stand-in timing oracle for emitted if-else trees.
//
// This is not a WCET analyzer. It assigns each root-to-leaf path a cycle
// count from a few parameters so that the generate -> time -> fit pipeline
// runs without an external static analysis tool:
//
//   constant_overhead + node_base_cycles * depth
//     + sum over taken edges of (taken_penalty_cycles
//                                + miss_cycles if the target block lies in a
//                                  different cache line than the branch)
//
// Blocks are laid out in the order EmitC writes them: depth-first with the
// untaken child first. Block i belongs to cache line i / line_size_nodes.

#ifndef WCDT_TIMING_ORACLE_H_
#define WCDT_TIMING_ORACLE_H_

#include <span>
#include <vector>

#include "wcdt/fitting.h"
#include "wcdt/optimizer.h"
#include "wcdt/surrogate.h"
#include "wcdt/tree.h"

namespace wcdt {

struct CostModelConfig {
  double node_base_cycles = 25.0;
  double taken_penalty_cycles = 6.0;
  int line_size_nodes = 2;
  double miss_cycles = 5.0;
  double constant_overhead = 235.0;
};

// Throws Error{kInvalidConfig} for negative fields or line_size_nodes < 1.
void CheckCostModelConfig(const CostModelConfig& config);

// Position of every node's code block in emission order, indexed by NodeId.
std::vector<int> LayoutPositions(const DecisionTree& tree,
                                 const Labeling& labeling);

// Throws Error{kNotALeaf} or Error{kLabelingMismatch}.
double PathCycles(const DecisionTree& tree, const Labeling& labeling,
                  NodeId leaf, const CostModelConfig& config);

// One sample per leaf, trees in input order and leaves in id order. The
// labeling comes from `strategy`; Opt, Inverted and the brute-force
// strategies use the model `table` selects for each tree.
std::vector<PathSample> CollectSamples(
    std::span<const DecisionTree> trees, Strategy strategy,
    const CostModelConfig& config,
    const ModelTable& table = DefaultModelTable());

}  // namespace wcdt

#endif  // WCDT_TIMING_ORACLE_H_
