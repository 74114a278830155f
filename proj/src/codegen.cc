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

#include "wcdt/codegen.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "wcdt/error.h"

namespace wcdt {
namespace {

std::string_view CType(FeatureType type) {
  switch (type) {
    case FeatureType::kFloat32: return "float";
    case FeatureType::kFloat64: return "double";
    case FeatureType::kInt32: return "int";
  }
  return "double";
}

std::string_view CType(ReturnType type) {
  return type == ReturnType::kInt32 ? "int" : "double";
}

// Largest float not above `threshold`. For a float feature value v,
// v <= threshold holds exactly when v <= FloorToFloat(threshold).
float FloorToFloat(double threshold) {
  float f = static_cast<float>(threshold);
  if (static_cast<double>(f) > threshold) {
    f = std::nextafter(f, -std::numeric_limits<float>::infinity());
  }
  return f;
}

std::string ThresholdLiteral(double threshold, FeatureType type) {
  if (type == FeatureType::kFloat32) {
    return FloatLiteral(FloorToFloat(threshold), /*as_float=*/true);
  }
  // int features promote to double in the comparison.
  return FloatLiteral(threshold, /*as_float=*/false);
}

std::string ReturnLiteral(double prediction, ReturnType type) {
  if (type == ReturnType::kFloat64) return FloatLiteral(prediction, false);
  if (prediction != std::trunc(prediction) || prediction < -2147483648.0 ||
      prediction > 2147483647.0) {
    throw Error(ErrorCode::kInvalidConfig,
                "prediction " + FloatLiteral(prediction, false) +
                    " is not representable as int32");
  }
  return std::to_string(static_cast<long long>(prediction));
}

std::string Condition(const InnerNode& inner, Side untaken,
                      FeatureType type) {
  std::string out = "x[" + std::to_string(inner.feature) + "] ";
  out += untaken == Side::kLeft ? "<= " : "> ";
  out += ThresholdLiteral(inner.threshold, type);
  return out;
}

void Indent(std::ostringstream& out, int level) {
  for (int i = 0; i < level; ++i) out << "  ";
}

}  // namespace

FeatureType ParseFeatureType(std::string_view name) {
  if (name == "float32") return FeatureType::kFloat32;
  if (name == "float64") return FeatureType::kFloat64;
  if (name == "int32") return FeatureType::kInt32;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown feature type '" + std::string(name) + "'");
}

ReturnType ParseReturnType(std::string_view name) {
  if (name == "int32") return ReturnType::kInt32;
  if (name == "float64") return ReturnType::kFloat64;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown return type '" + std::string(name) + "'");
}

bool IsCIdentifier(std::string_view name) {
  // C99 keywords, plus main which the test harness defines.
  static constexpr std::string_view kReserved[] = {
      "auto",     "break",  "case",     "char",   "const",    "continue",
      "default",  "do",     "double",   "else",   "enum",     "extern",
      "float",    "for",    "goto",     "if",     "inline",   "int",
      "long",     "register", "restrict", "return", "short",  "signed",
      "sizeof",   "static", "struct",   "switch", "typedef",  "union",
      "unsigned", "void",   "volatile", "while",  "_Bool",    "_Complex",
      "_Imaginary", "main"};
  if (name.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(name.front())) return false;
  for (char c : name) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  for (std::string_view kw : kReserved) {
    if (name == kw) return false;
  }
  return true;
}

std::string FloatLiteral(double value, bool as_float) {
  char buf[64];
  std::to_chars_result res =
      as_float ? std::to_chars(buf, buf + sizeof(buf), static_cast<float>(value))
               : std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  if (as_float) out += "f";
  return out;
}

std::string EmitC(const DecisionTree& tree, const Labeling& labeling,
                  const EmitConfig& config) {
  if (!IsCIdentifier(config.function_name)) {
    throw Error(ErrorCode::kInvalidIdentifier,
                "'" + config.function_name + "' is not a valid C identifier");
  }
  const std::vector<Side> taken = ResolveLabeling(tree, labeling);
  const std::string_view feat = CType(config.feature_type);
  const std::string_view ret = CType(config.return_type);

  std::ostringstream out;
  out << "/* Decision tree with " << tree.leaves().size() << " leaves, depth "
      << tree.depth() << ". Generated by wcdt. */\n";
  if (config.include_main) out << "#include <stdio.h>\n#include <stdlib.h>\n";
  out << "\n" << ret << " " << config.function_name << "(const " << feat
      << "* x) {\n";
  if (tree.node(tree.root()).is_leaf()) out << "  (void)x;\n";

  // Work items: a subtree to emit or a closing line, with its indent level.
  struct Item {
    std::variant<NodeId, std::string_view> what;
    int level;
  };
  std::vector<Item> stack = {{tree.root(), 1}};
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    Indent(out, item.level);
    if (const auto* text = std::get_if<std::string_view>(&item.what)) {
      out << *text << "\n";
      continue;
    }
    const NodeId id = std::get<NodeId>(item.what);
    const Node& node = tree.node(id);
    if (node.is_leaf()) {
      out << "return " << ReturnLiteral(node.leaf().prediction,
                                        config.return_type)
          << ";\n";
      continue;
    }
    const InnerNode& inner = node.inner();
    const Side untaken = Other(taken[id]);
    out << "if (" << Condition(inner, untaken, config.feature_type) << ") {\n";
    stack.push_back({std::string_view("}"), item.level});
    stack.push_back({inner.child(taken[id]), item.level + 1});
    stack.push_back({std::string_view("} else {"), item.level});
    stack.push_back({inner.child(untaken), item.level + 1});
  }
  out << "}\n";

  if (config.include_main) {
    const int n = tree.num_features();
    out << "\nint main(int argc, char** argv) {\n"
        << "  " << feat << " x[" << (n > 0 ? n : 1) << "];\n"
        << "  int i;\n"
        << "  if (argc != " << n + 1 << ") {\n"
        << "    fprintf(stderr, \"usage: %s <" << n
        << " feature values>\\n\", argv[0]);\n"
        << "    return 1;\n"
        << "  }\n"
        << "  for (i = 0; i < " << n << "; ++i) {\n";
    if (config.feature_type == FeatureType::kInt32) {
      out << "    x[i] = (int)strtol(argv[i + 1], NULL, 10);\n";
    } else {
      out << "    x[i] = (" << feat << ")strtod(argv[i + 1], NULL);\n";
    }
    out << "  }\n";
    if (config.return_type == ReturnType::kInt32) {
      out << "  printf(\"%d\\n\", " << config.function_name << "(x));\n";
    } else {
      out << "  printf(\"%.17g\\n\", " << config.function_name << "(x));\n";
    }
    out << "  return 0;\n}\n";
  }
  return out.str();
}

int EmittedTrace::taken_count() const {
  int count = 0;
  for (const BranchOutcome& b : branches) count += b.condition_true ? 0 : 1;
  return count;
}

EmittedTrace InterpretEmitted(const DecisionTree& tree,
                              const Labeling& labeling,
                              std::span<const double> x) {
  const std::vector<Side> taken = ResolveLabeling(tree, labeling);
  if (x.size() != static_cast<std::size_t>(tree.num_features())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature vector has " + std::to_string(x.size()) +
                    " entries, tree expects " +
                    std::to_string(tree.num_features()));
  }
  EmittedTrace trace;
  NodeId id = tree.root();
  while (!tree.node(id).is_leaf()) {
    const InnerNode& inner = tree.node(id).inner();
    const Side untaken = Other(taken[id]);
    const double v = x[inner.feature];
    const bool condition = untaken == Side::kLeft ? v <= inner.threshold
                                                  : v > inner.threshold;
    trace.branches.push_back({id, condition});
    id = inner.child(condition ? untaken : taken[id]);
  }
  trace.prediction = tree.node(id).leaf().prediction;
  return trace;
}

}  // namespace wcdt
