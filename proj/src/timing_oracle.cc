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

#include "wcdt/timing_oracle.h"

#include <string>
#include <utility>
#include <vector>

#include "wcdt/error.h"

namespace wcdt {
namespace {

double SumCycles(const DecisionTree& tree, const std::vector<Side>& taken,
                 const std::vector<int>& position, NodeId leaf,
                 const CostModelConfig& config) {
  const std::vector<NodeId> path = PathTo(tree, leaf);
  double cycles = config.constant_overhead +
                  config.node_base_cycles * static_cast<double>(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const InnerNode& inner = tree.node(path[i]).inner();
    if (inner.child(taken[path[i]]) != path[i + 1]) continue;
    cycles += config.taken_penalty_cycles;
    if (position[path[i]] / config.line_size_nodes !=
        position[path[i + 1]] / config.line_size_nodes) {
      cycles += config.miss_cycles;
    }
  }
  return cycles;
}

}  // namespace

void CheckCostModelConfig(const CostModelConfig& config) {
  if (config.node_base_cycles < 0 || config.taken_penalty_cycles < 0 ||
      config.miss_cycles < 0 || config.constant_overhead < 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "cost model cycle counts must be >= 0");
  }
  if (config.line_size_nodes < 1) {
    throw Error(ErrorCode::kInvalidConfig, "line_size_nodes must be >= 1");
  }
}

std::vector<int> LayoutPositions(const DecisionTree& tree,
                                 const Labeling& labeling) {
  const std::vector<Side> taken = ResolveLabeling(tree, labeling);
  std::vector<int> position(tree.size(), 0);
  std::vector<NodeId> stack = {tree.root()};
  int next = 0;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    position[id] = next++;
    const Node& node = tree.node(id);
    if (node.is_leaf()) continue;
    stack.push_back(node.inner().child(taken[id]));
    stack.push_back(node.inner().child(Other(taken[id])));
  }
  return position;
}

double PathCycles(const DecisionTree& tree, const Labeling& labeling,
                  NodeId leaf, const CostModelConfig& config) {
  CheckCostModelConfig(config);
  const std::vector<Side> taken = ResolveLabeling(tree, labeling);
  return SumCycles(tree, taken, LayoutPositions(tree, labeling), leaf, config);
}

std::vector<PathSample> CollectSamples(std::span<const DecisionTree> trees,
                                       Strategy strategy,
                                       const CostModelConfig& config,
                                       const ModelTable& table) {
  CheckCostModelConfig(config);
  std::vector<PathSample> samples;
  for (const DecisionTree& tree : trees) {
    const Labeling labeling =
        MakeLabeling(tree, strategy, SelectModel(table, tree));
    const std::vector<Side> taken = ResolveLabeling(tree, labeling);
    const std::vector<int> position = LayoutPositions(tree, labeling);
    for (const PathStats& p : EnumeratePaths(tree, labeling)) {
      samples.push_back(PathSample{
          p.depth, p.taken, SumCycles(tree, taken, position, p.leaf, config)});
    }
  }
  return samples;
}

}  // namespace wcdt
