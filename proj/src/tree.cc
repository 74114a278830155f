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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "wcdt/error.h"

namespace wcdt {
namespace {

constexpr double kProbabilityTolerance = 1e-9;

std::string Str(NodeId id) { return std::to_string(id); }

}  // namespace

std::vector<std::string> FindViolations(std::span<const Node> nodes,
                                        NodeId root, int num_features) {
  std::vector<std::string> out;
  const std::size_t n = nodes.size();
  if (n == 0) {
    out.push_back("empty tree: no nodes");
    return out;
  }
  if (num_features < 0) {
    out.push_back("bad feature count: num_features=" +
                  std::to_string(num_features));
  }
  if (root >= n) {
    out.push_back("dangling root: root id " + Str(root) + " out of range");
    return out;
  }

  std::vector<int> in_degree(n, 0);
  for (NodeId id = 0; id < n; ++id) {
    const Node& node = nodes[id];
    if (node.probability &&
        !(*node.probability >= 0.0 && *node.probability <= 1.0)) {
      out.push_back("probability out of [0,1] at node " + Str(id));
    }
    if (node.is_leaf()) {
      if (!std::isfinite(node.leaf().prediction)) {
        out.push_back("non-finite prediction at leaf " + Str(id));
      }
      continue;
    }
    const InnerNode& inner = node.inner();
    if (inner.feature < 0 || inner.feature >= num_features) {
      out.push_back("bad feature index " + std::to_string(inner.feature) +
                    " at node " + Str(id));
    }
    if (!std::isfinite(inner.threshold)) {
      out.push_back("non-finite threshold at node " + Str(id));
    }
    if (inner.left == inner.right) {
      out.push_back("children not distinct at node " + Str(id));
    }
    for (NodeId child : {inner.left, inner.right}) {
      if (child >= n) {
        out.push_back("dangling child " + Str(child) + " at node " + Str(id));
      } else if (child == id) {
        out.push_back("cycle: node " + Str(id) + " lists itself as a child");
      } else {
        ++in_degree[child];
      }
    }
  }
  for (NodeId id = 0; id < n; ++id) {
    if (id == root && in_degree[id] > 0) {
      out.push_back("cycle: root " + Str(id) + " has a parent");
    } else if (in_degree[id] > 1) {
      out.push_back("shared child: node " + Str(id) + " has " +
                    std::to_string(in_degree[id]) + " parents");
    }
  }
  if (!out.empty()) return out;

  // In-degrees are now <= 1 and the root has none, so a walk from the root
  // visits every reachable node exactly once; anything left over sits on a
  // detached component (which must contain a cycle or another root).
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack = {root};
  std::size_t visited = 0;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (seen[id]) {
      out.push_back("cycle through node " + Str(id));
      return out;
    }
    seen[id] = true;
    ++visited;
    if (!nodes[id].is_leaf()) {
      stack.push_back(nodes[id].inner().right);
      stack.push_back(nodes[id].inner().left);
    }
  }
  if (visited != n) {
    for (NodeId id = 0; id < n; ++id) {
      if (!seen[id]) {
        out.push_back("unreachable node " + Str(id) +
                      (in_degree[id] == 0 ? " (second root)" : " (cycle)"));
      }
    }
    return out;
  }

  const Node& root_node = nodes[root];
  if (root_node.probability &&
      std::abs(*root_node.probability - 1.0) > kProbabilityTolerance) {
    out.push_back("probability: root probability must be 1");
  }
  for (NodeId id = 0; id < n; ++id) {
    if (nodes[id].is_leaf()) continue;
    const InnerNode& inner = nodes[id].inner();
    const auto& p = nodes[id].probability;
    const auto& pl = nodes[inner.left].probability;
    const auto& pr = nodes[inner.right].probability;
    if (p && pl && pr &&
        std::abs(*pl + *pr - *p) > kProbabilityTolerance) {
      out.push_back("probability: children of node " + Str(id) +
                    " do not sum to the node's probability");
    }
  }
  return out;
}

DecisionTree::DecisionTree(std::vector<Node> nodes, NodeId root,
                           int num_features)
    : nodes_(std::move(nodes)), root_(root), num_features_(num_features) {
  auto violations = FindViolations(nodes_, root_, num_features_);
  if (!violations.empty()) {
    throw Error(ErrorCode::kMalformedTree, "not a valid binary decision tree",
                std::move(violations));
  }
  const std::size_t n = nodes_.size();
  depth_.assign(n, 0);
  parent_.assign(n, -1);
  post_order_.reserve(n);

  // Iterative post-order: (node, expanded) pairs.
  std::vector<std::pair<NodeId, bool>> stack = {{root_, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const Node& node = nodes_[id];
    if (node.is_leaf() || expanded) {
      post_order_.push_back(id);
      continue;
    }
    stack.emplace_back(id, true);
    for (NodeId child : {node.inner().right, node.inner().left}) {
      depth_[child] = depth_[id] + 1;
      parent_[child] = id;
      stack.emplace_back(child, false);
    }
  }
  for (NodeId id = 0; id < n; ++id) {
    if (nodes_[id].is_leaf()) {
      leaves_.push_back(id);
      max_depth_ = std::max(max_depth_, depth_[id]);
    } else {
      inner_.push_back(id);
    }
  }
}

std::optional<NodeId> DecisionTree::parent(NodeId id) const {
  if (parent_[id] < 0) return std::nullopt;
  return static_cast<NodeId>(parent_[id]);
}

bool DecisionTree::has_probabilities() const {
  for (const Node& node : nodes_) {
    if (!node.probability) return false;
  }
  return true;
}

bool DecisionTree::operator==(const DecisionTree& other) const {
  if (root_ != other.root_ || num_features_ != other.num_features_ ||
      nodes_.size() != other.nodes_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[i];
    if (a.probability != b.probability || a.is_leaf() != b.is_leaf()) {
      return false;
    }
    if (a.is_leaf()) {
      if (a.leaf().prediction != b.leaf().prediction) return false;
    } else {
      const InnerNode& x = a.inner();
      const InnerNode& y = b.inner();
      if (x.feature != y.feature || x.threshold != y.threshold ||
          x.left != y.left || x.right != y.right) {
        return false;
      }
    }
  }
  return true;
}

Node MakeInner(int feature, double threshold, NodeId left, NodeId right,
               std::optional<double> probability) {
  return Node{InnerNode{feature, threshold, left, right}, probability};
}

Node MakeLeaf(double prediction, std::optional<double> probability) {
  return Node{LeafNode{prediction}, probability};
}

InferenceResult Infer(const DecisionTree& tree, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(tree.num_features())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature vector has " + std::to_string(x.size()) +
                    " entries, tree expects " +
                    std::to_string(tree.num_features()));
  }
  InferenceResult result;
  NodeId id = tree.root();
  result.path.push_back(id);
  while (!tree.node(id).is_leaf()) {
    const InnerNode& inner = tree.node(id).inner();
    id = x[inner.feature] <= inner.threshold ? inner.left : inner.right;
    result.path.push_back(id);
  }
  result.prediction = tree.node(id).leaf().prediction;
  return result;
}

int TreeDepth(const DecisionTree& tree) { return tree.depth(); }

void CheckLabeling(const DecisionTree& tree, const Labeling& labeling) {
  const auto& inner = tree.inner_nodes();
  bool ok = labeling.size() == inner.size();
  if (ok) {
    auto it = labeling.taken().begin();
    for (NodeId id : inner) {
      if (it->first != id) {
        ok = false;
        break;
      }
      ++it;
    }
  }
  if (!ok) {
    throw Error(ErrorCode::kLabelingMismatch,
                "labeling covers " + std::to_string(labeling.size()) +
                    " nodes but the tree has " + std::to_string(inner.size()) +
                    " inner nodes, or the node sets differ");
  }
}

std::vector<Side> ResolveLabeling(const DecisionTree& tree,
                                  const Labeling& labeling) {
  CheckLabeling(tree, labeling);
  std::vector<Side> sides(tree.size(), Side::kLeft);
  for (const auto& [id, side] : labeling.taken()) sides[id] = side;
  return sides;
}

std::vector<PathStats> EnumeratePaths(const DecisionTree& tree,
                                      const Labeling& labeling) {
  const std::vector<Side> sides = ResolveLabeling(tree, labeling);
  std::vector<int> taken(tree.size(), 0);
  // Reverse post-order visits parents before children.
  const auto& order = tree.post_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& node = tree.node(*it);
    if (node.is_leaf()) continue;
    const InnerNode& inner = node.inner();
    for (Side side : {Side::kLeft, Side::kRight}) {
      taken[inner.child(side)] = taken[*it] + (sides[*it] == side ? 1 : 0);
    }
  }
  std::vector<PathStats> stats;
  stats.reserve(tree.leaves().size());
  for (NodeId leaf : tree.leaves()) {
    stats.push_back(PathStats{leaf, tree.depth_of(leaf), taken[leaf]});
  }
  return stats;
}

std::vector<NodeId> PathTo(const DecisionTree& tree, NodeId leaf) {
  if (leaf >= tree.size() || !tree.node(leaf).is_leaf()) {
    throw Error(ErrorCode::kNotALeaf,
                "node " + std::to_string(leaf) + " is not a leaf of the tree");
  }
  std::vector<NodeId> path;
  std::optional<NodeId> id = leaf;
  while (id) {
    path.push_back(*id);
    id = tree.parent(*id);
  }
  return {path.rbegin(), path.rend()};
}

}  // namespace wcdt
