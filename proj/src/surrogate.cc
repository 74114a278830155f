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

#include "wcdt/surrogate.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcdt/error.h"

namespace wcdt {

void CheckModel(const SurrogateModel& model) {
  if (!std::isfinite(model.sigma) || !std::isfinite(model.delta) ||
      !std::isfinite(model.gamma)) {
    throw Error(ErrorCode::kInvalidModel, "model parameters must be finite");
  }
  if (model.delta < 0.0 || model.gamma < 0.0) {
    throw Error(ErrorCode::kInvalidModel,
                "model requires delta >= 0 and gamma >= 0");
  }
}

double EstimatePath(const SurrogateModel& model, const PathStats& stats) {
  return model.sigma + PathTerm(model, stats.depth, stats.taken);
}

TreeCost ComputeTreeCost(const DecisionTree& tree, const Labeling& labeling,
                         const SurrogateModel& model) {
  const auto paths = EnumeratePaths(tree, labeling);
  TreeCost best{0.0, paths.front().leaf};
  double worst_term = PathTerm(model, paths.front().depth, paths.front().taken);
  for (const PathStats& p : paths) {
    const double term = PathTerm(model, p.depth, p.taken);
    if (term > worst_term) {
      worst_term = term;
      best.wcep_leaf = p.leaf;
    }
  }
  best.cost = model.sigma + worst_term;
  return best;
}

double ComputeTreeCostPiForm(const DecisionTree& tree,
                             const Labeling& labeling,
                             const SurrogateModel& model) {
  double worst = -INFINITY;
  for (const PathStats& p : EnumeratePaths(tree, labeling)) {
    worst = std::max(worst, model.delta * p.untaken() + model.pi() * p.taken);
  }
  return model.sigma + worst;
}

ModelTable::ModelTable(std::vector<SurrogateModel> models)
    : models_(std::move(models)) {
  if (models_.empty()) {
    throw Error(ErrorCode::kEmptyTable, "model table has no entries");
  }
  for (std::size_t i = 0; i < models_.size(); ++i) {
    CheckModel(models_[i]);
    if (i > 0 && models_[i].target_depth <= models_[i - 1].target_depth) {
      throw Error(ErrorCode::kInvalidModel,
                  "model table depths must be strictly increasing");
    }
    if (models_[i].target_depth == 2 && models_[i].delta != 0.0) {
      throw Error(ErrorCode::kInvalidModel,
                  "depth-2 model must have delta = 0 (no path-length "
                  "variation at depth 2)");
    }
  }
}

const SurrogateModel& ModelTable::Select(int depth) const {
  auto it = std::upper_bound(
      models_.begin(), models_.end(), depth,
      [](int d, const SurrogateModel& m) { return d < m.target_depth; });
  if (it == models_.begin()) return models_.front();
  return *std::prev(it);
}

const ModelTable& DefaultModelTable() {
  static const ModelTable table({
      {269.75, 0.00, 5.00, 2},
      {226.06, 28.84, 3.54, 4},
      {239.40, 25.17, 5.81, 6},
      {251.84, 25.62, 8.78, 8},
      {235.53, 27.38, 8.76, 10},
      {245.21, 26.45, 11.06, 12},
      {240.58, 26.19, 11.04, 14},
      {241.08, 27.60, 9.56, 16},
      {232.68, 27.04, 10.99, 18},
  });
  return table;
}

const SurrogateModel& SelectModel(const ModelTable& table,
                                  const DecisionTree& tree) {
  return table.Select(tree.depth());
}

}  // namespace wcdt
