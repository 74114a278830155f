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

// Implementations behind the `wcdt` subcommands. Each command reads and
// writes files, prints a human-readable summary to `out`, and throws
// wcdt::Error on failure; the executable maps errors to exit codes.

#ifndef WCDT_COMMANDS_H_
#define WCDT_COMMANDS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wcdt/codegen.h"
#include "wcdt/optimizer.h"
#include "wcdt/surrogate.h"
#include "wcdt/synthesis.h"
#include "wcdt/timing_oracle.h"

namespace wcdt::cli {

// Where the surrogate model for a tree comes from: a fixed toy model, a
// model table file, or the built-in table.
struct ModelSource {
  std::optional<std::string> table_path;
  std::optional<std::array<double, 3>> toy;  // sigma, delta, gamma
};

class ModelResolver {
 public:
  explicit ModelResolver(const ModelSource& source);
  SurrogateModel For(const DecisionTree& tree) const;
  bool is_toy() const { return toy_.has_value(); }

 private:
  std::optional<SurrogateModel> toy_;
  std::optional<ModelTable> table_;
};

enum class Format { kTable, kCsv, kJson };
Format ParseFormat(const std::string& name);

struct GenOptions {
  GenConfig config;
  std::string out;
};
void Gen(const GenOptions& options, std::ostream& out);

void Validate(const std::string& tree_path, std::ostream& out);

struct LabelOptions {
  std::string tree;
  Strategy strategy = Strategy::kSurrogateOpt;
  ModelSource model;
  std::string out;
};
void Label(const LabelOptions& options, std::ostream& out);

// Per-path estimates under an existing labeling file or a strategy.
struct EstimateOptions {
  std::string tree;
  std::optional<std::string> labeling;
  Strategy strategy = Strategy::kStandard;
  ModelSource model;
  Format format = Format::kTable;
};
void Estimate(const EstimateOptions& options, std::ostream& out);

struct SamplesOptions {
  std::vector<std::string> trees;
  Strategy strategy = Strategy::kStandard;
  CostModelConfig cost;
  std::string out;
};
void Samples(const SamplesOptions& options, std::ostream& out);

struct FitOptions {
  std::string samples;
  int depth = 0;
  std::string out;
};
void Fit(const FitOptions& options, std::ostream& out);

struct EmitOptions {
  std::string tree;
  std::string labeling;
  EmitConfig config;
  std::string out;
};
void Emit(const EmitOptions& options, std::ostream& out);

struct CompareRow {
  std::string name;
  int tree_depth = 0;
  std::size_t leaves = 0;
  int model_depth = 0;  // 0 for the toy model
  double standard = 0.0;
  std::optional<double> swap;  // absent without node probabilities
  double opt = 0.0;
  double inverted = 0.0;

  double standard_norm() const;
  std::optional<double> swap_norm() const;
  double inverted_norm() const;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  // Geometric means of the per-tree quotients against SurrogateOpt.
  double geomean_standard = 1.0;
  std::optional<double> geomean_swap;
  double geomean_inverted = 1.0;
};

// a / b, defined as 1 when a == b (covers the all-zero case).
double Normalize(double a, double b);

CompareRow CompareTree(const DecisionTree& tree, const SurrogateModel& model,
                       std::string name);
CompareReport Summarize(std::vector<CompareRow> rows);

struct CompareOptions {
  std::vector<std::string> trees;
  ModelSource model;
  Format format = Format::kTable;
};
void Compare(const CompareOptions& options, std::ostream& out);
void WriteCompareReport(const CompareReport& report, Format format,
                        bool toy_model, std::ostream& out);

struct PipelineOptions {
  std::vector<int> depths = {2, 4, 6, 8, 10, 12, 14, 16, 18};
  int trees_per_depth = 10;
  int num_features = 8;
  double split_prob = 0.5;
  std::uint64_t seed = 0;
  CostModelConfig cost;
  std::string out_dir;
};

struct PipelineResult {
  std::vector<FitResult> fits;
};

// Generates trees per depth, times every path with the oracle under the
// Standard labeling, fits one model per depth, and writes
// model_table.json, report.json, report.csv and samples_d<D>.csv into
// out_dir (created if missing).
PipelineResult Pipeline(const PipelineOptions& options, std::ostream& out);

// Seed of tree `index` at `depth` in a pipeline run.
std::uint64_t PipelineTreeSeed(std::uint64_t seed, int depth, int index);

}  // namespace wcdt::cli

#endif  // WCDT_COMMANDS_H_
