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

// Linear surrogate WCET model.
//
// A root-to-leaf path of depth d with t taken branches is estimated to cost
//   sigma + delta * d + gamma * t
// cycles. A tree's estimated WCET is sigma plus the largest path term over
// all leaves; sigma is counted once per tree.

#ifndef WCDT_SURROGATE_H_
#define WCDT_SURROGATE_H_

#include <vector>

#include "wcdt/tree.h"

namespace wcdt {

struct SurrogateModel {
  double sigma = 0.0;  // constant offset
  double delta = 0.0;  // cost per edge
  double gamma = 0.0;  // extra cost per taken edge
  int target_depth = 0;

  // Cost of a taken edge.
  double pi() const { return delta + gamma; }

  bool operator==(const SurrogateModel&) const = default;
};

// Throws Error{kInvalidModel} unless delta >= 0, gamma >= 0 and all
// parameters are finite.
void CheckModel(const SurrogateModel& model);

// Path-dependent part of the estimate, delta * d + gamma * t. Every cost
// routine in the library goes through this so that costs computed by
// different routes compare bit-exactly.
inline double PathTerm(const SurrogateModel& model, int depth, int taken) {
  return model.delta * depth + model.gamma * taken;
}

double EstimatePath(const SurrogateModel& model, const PathStats& stats);

struct TreeCost {
  double cost = 0.0;
  NodeId wcep_leaf = 0;  // first leaf (by id) attaining the maximum
};

// sigma + max over leaves of (delta * depth + gamma * taken).
TreeCost ComputeTreeCost(const DecisionTree& tree, const Labeling& labeling,
                         const SurrogateModel& model);

// Same value through the untaken/taken split:
// sigma + max over leaves of (delta * untaken + pi * taken).
double ComputeTreeCostPiForm(const DecisionTree& tree,
                             const Labeling& labeling,
                             const SurrogateModel& model);

// Surrogate models indexed by the tree depth they were fitted for.
class ModelTable {
 public:
  // Throws Error{kEmptyTable} for an empty list and Error{kInvalidModel}
  // for unsorted depths, duplicate depths, invalid parameters, or a
  // depth-2 entry with nonzero delta.
  explicit ModelTable(std::vector<SurrogateModel> models);

  const std::vector<SurrogateModel>& models() const { return models_; }

  // Entry with the largest target depth <= `depth`, clamped to the first
  // and last entries.
  const SurrogateModel& Select(int depth) const;

 private:
  std::vector<SurrogateModel> models_;
};

// The nine published models for target depths 2, 4, ..., 18.
const ModelTable& DefaultModelTable();

const SurrogateModel& SelectModel(const ModelTable& table,
                                  const DecisionTree& tree);

}  // namespace wcdt

#endif  // WCDT_SURROGATE_H_
