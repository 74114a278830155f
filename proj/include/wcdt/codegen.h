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

// C source emission for if-else trees.
//
// At every inner node the untaken child is emitted in the if-block, which
// falls through directly after the conditional branch, and the taken child
// follows in the else-block. When the left (<=) child is taken the
// condition is inverted to `>` so that the if-block still holds the
// semantically correct subtree.

#ifndef WCDT_CODEGEN_H_
#define WCDT_CODEGEN_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcdt/tree.h"

namespace wcdt {

enum class FeatureType { kFloat32, kFloat64, kInt32 };
enum class ReturnType { kInt32, kFloat64 };

struct EmitConfig {
  std::string function_name = "predict";
  FeatureType feature_type = FeatureType::kFloat64;
  ReturnType return_type = ReturnType::kInt32;
  // Adds `int main(int argc, char** argv)` that reads the features from
  // argv, prints the prediction and returns 0.
  bool include_main = false;
};

FeatureType ParseFeatureType(std::string_view name);  // float32|float64|int32
ReturnType ParseReturnType(std::string_view name);    // int32|float64

bool IsCIdentifier(std::string_view name);

// Throws Error{kLabelingMismatch}, Error{kInvalidIdentifier}, or
// Error{kInvalidConfig} when an int32 return type meets a non-integral
// prediction.
std::string EmitC(const DecisionTree& tree, const Labeling& labeling,
                  const EmitConfig& config);

struct BranchOutcome {
  NodeId node = 0;
  // True when the emitted condition held and execution fell through into
  // the if-block (untaken slot); false when the branch was taken.
  bool condition_true = false;

  bool operator==(const BranchOutcome&) const = default;
};

struct EmittedTrace {
  double prediction = 0.0;
  std::vector<BranchOutcome> branches;

  int taken_count() const;
};

// Executes the control flow EmitC produces for `labeling`, in double
// precision. Throws Error{kDimensionMismatch} or Error{kLabelingMismatch}.
EmittedTrace InterpretEmitted(const DecisionTree& tree,
                              const Labeling& labeling,
                              std::span<const double> x);

// Shortest decimal text that reads back to exactly `value`, always spelled
// as a C floating literal ("3.0", "0.1", "1e-07"). `as_float` rounds to
// float first and appends the `f` suffix.
std::string FloatLiteral(double value, bool as_float);

}  // namespace wcdt

#endif  // WCDT_CODEGEN_H_
