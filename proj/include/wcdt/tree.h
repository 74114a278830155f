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

// Binary decision trees, branch labelings and per-path statistics.
//
// A tree is stored as an index-addressed node array; a NodeId is the index
// of a node in that array. Inner nodes route an input `x` to the left child
// when `x[feature] <= threshold` and to the right child otherwise.
//
// A labeling decides, for every inner node, which child edge occupies the
// taken slot of the conditional branch. The sibling edge is untaken and its
// code falls through directly after the branch.

#ifndef WCDT_TREE_H_
#define WCDT_TREE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace wcdt {

using NodeId = std::uint32_t;

enum class Side : std::uint8_t { kLeft, kRight };

inline Side Other(Side side) {
  return side == Side::kLeft ? Side::kRight : Side::kLeft;
}

struct InnerNode {
  int feature = 0;
  double threshold = 0.0;
  NodeId left = 0;
  NodeId right = 0;

  NodeId child(Side side) const { return side == Side::kLeft ? left : right; }
};

struct LeafNode {
  double prediction = 0.0;
};

struct Node {
  std::variant<InnerNode, LeafNode> body;
  // Fraction of the input distribution reaching this node, if known.
  std::optional<double> probability;

  bool is_leaf() const { return std::holds_alternative<LeafNode>(body); }
  const InnerNode& inner() const { return std::get<InnerNode>(body); }
  const LeafNode& leaf() const { return std::get<LeafNode>(body); }
};

// Returns every structural problem found in the node array; empty means the
// nodes form a valid full binary decision tree rooted at `root`.
std::vector<std::string> FindViolations(std::span<const Node> nodes,
                                        NodeId root, int num_features);

// Immutable, validated decision tree. Construction throws
// Error{kMalformedTree} with the violation list when the input is invalid.
class DecisionTree {
 public:
  DecisionTree(std::vector<Node> nodes, NodeId root, int num_features);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  NodeId root() const { return root_; }
  int num_features() const { return num_features_; }
  std::size_t size() const { return nodes_.size(); }

  // Edge count from the root to `id`.
  int depth_of(NodeId id) const { return depth_[id]; }
  // Longest root-to-leaf path; 0 for a root-only tree.
  int depth() const { return max_depth_; }

  std::optional<NodeId> parent(NodeId id) const;
  // Leaves and inner nodes, both in increasing NodeId order.
  const std::vector<NodeId>& leaves() const { return leaves_; }
  const std::vector<NodeId>& inner_nodes() const { return inner_; }
  // Children before parents.
  const std::vector<NodeId>& post_order() const { return post_order_; }

  // True when every node carries a probability.
  bool has_probabilities() const;

  bool operator==(const DecisionTree& other) const;

 private:
  std::vector<Node> nodes_;
  NodeId root_;
  int num_features_;
  std::vector<int> depth_;
  std::vector<std::int64_t> parent_;  // -1 for the root
  std::vector<NodeId> leaves_;
  std::vector<NodeId> inner_;
  std::vector<NodeId> post_order_;
  int max_depth_ = 0;
};

// Convenience constructors used by fixtures and tests.
Node MakeInner(int feature, double threshold, NodeId left, NodeId right,
               std::optional<double> probability = std::nullopt);
Node MakeLeaf(double prediction,
              std::optional<double> probability = std::nullopt);

struct InferenceResult {
  double prediction = 0.0;
  std::vector<NodeId> path;  // root first, reached leaf last
};

// Throws Error{kDimensionMismatch} when x.size() != num_features.
InferenceResult Infer(const DecisionTree& tree, std::span<const double> x);

int TreeDepth(const DecisionTree& tree);

// Assignment of the taken slot for each inner node.
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(std::map<NodeId, Side> taken) : taken_(std::move(taken)) {}

  const std::map<NodeId, Side>& taken() const { return taken_; }
  Side taken_child(NodeId inner) const { return taken_.at(inner); }
  void set(NodeId inner, Side taken_side) { taken_[inner] = taken_side; }
  bool empty() const { return taken_.empty(); }
  std::size_t size() const { return taken_.size(); }

  bool operator==(const Labeling&) const = default;

 private:
  std::map<NodeId, Side> taken_;
};

// Throws Error{kLabelingMismatch} unless the labeling's domain is exactly the
// tree's inner-node set.
void CheckLabeling(const DecisionTree& tree, const Labeling& labeling);

// Per-node taken side indexed by NodeId (leaf entries are unused). Validates
// the labeling first.
std::vector<Side> ResolveLabeling(const DecisionTree& tree,
                                  const Labeling& labeling);

struct PathStats {
  NodeId leaf = 0;
  int depth = 0;
  int taken = 0;

  int untaken() const { return depth - taken; }
  bool operator==(const PathStats&) const = default;
};

// One entry per leaf, in increasing leaf NodeId order.
std::vector<PathStats> EnumeratePaths(const DecisionTree& tree,
                                      const Labeling& labeling);

// Root-to-leaf node sequence for `leaf`. Throws Error{kNotALeaf}.
std::vector<NodeId> PathTo(const DecisionTree& tree, NodeId leaf);

}  // namespace wcdt

#endif  // WCDT_TREE_H_
