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

// wcdt: WCET-aware branch layout for if-else decision trees.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wcdt/commands.h"
#include "wcdt/error.h"
#include "wcdt/io.h"

namespace {

using namespace wcdt;

// Generation always splits up to max_depth/2, so the node count grows like
// 2^(max_depth/2); beyond this the trees no longer fit in memory.
constexpr int kMaxGenDepth = 40;

const std::vector<std::string> kStrategies = {"opt",   "inverted",  "standard",
                                              "swap",  "brute-min", "brute-max"};

struct ModelFlags {
  std::string table;
  std::string toy;
};

void AddModelFlags(CLI::App* cmd, ModelFlags& flags) {
  auto* table = cmd->add_option("--model-table", flags.table,
                                "Model table JSON (default: built-in table)")
                    ->check(CLI::ExistingFile);
  cmd->add_option("--toy-model", flags.toy,
                  "Fixed model 'sigma,delta,gamma' used for every tree")
      ->excludes(table);
}

// Throws CLI::ValidationError so that a bad value is a usage error.
cli::ModelSource ToModelSource(const ModelFlags& flags) {
  cli::ModelSource source;
  if (!flags.table.empty()) source.table_path = flags.table;
  if (!flags.toy.empty()) {
    std::array<double, 3> values{};
    std::stringstream in(flags.toy);
    std::string part;
    int count = 0;
    while (std::getline(in, part, ',')) {
      if (count < 3) {
        try {
          std::size_t used = 0;
          values[count] = std::stod(part, &used);
          if (used != part.size()) count = 99;
        } catch (const std::exception&) {
          count = 99;
        }
      }
      ++count;
    }
    if (count != 3) {
      throw CLI::ValidationError("--toy-model",
                                 "expects three numbers 'sigma,delta,gamma'");
    }
    source.toy = values;
  }
  return source;
}

struct CostFlags {
  CostModelConfig config;
  std::string file;
};

void AddCostFlags(CLI::App* cmd, CostFlags& flags) {
  auto& c = flags.config;
  auto* file = cmd->add_option("--cost-model", flags.file,
                               "Timing oracle parameters as JSON")
                   ->check(CLI::ExistingFile);
  cmd->add_option("--node-base", c.node_base_cycles,
                  "Cycles per evaluated inner node")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber)
      ->excludes(file);
  cmd->add_option("--taken-penalty", c.taken_penalty_cycles,
                  "Pipeline flush cycles per taken branch")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber)
      ->excludes(file);
  cmd->add_option("--line-size", c.line_size_nodes,
                  "Code blocks per instruction cache line")
      ->capture_default_str()
      ->check(CLI::PositiveNumber)
      ->excludes(file);
  cmd->add_option("--miss", c.miss_cycles, "Instruction cache miss cycles")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber)
      ->excludes(file);
  cmd->add_option("--overhead", c.constant_overhead,
                  "Call and return overhead cycles")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber)
      ->excludes(file);
}

CostModelConfig ToCostConfig(const CostFlags& flags) {
  if (flags.file.empty()) return flags.config;
  return ParseCostModelJson(ReadFile(flags.file));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WCET-aware branch layout for if-else decision trees", "wcdt"};
  app.require_subcommand(1);

  // gen
  cli::GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic tree");
  gen_cmd->add_option("--max-depth", gen.config.max_depth, "Maximal depth")
      ->required()
      ->check(CLI::Range(1, kMaxGenDepth));
  gen_cmd->add_option("--features", gen.config.num_features,
                      "Number of features")
      ->capture_default_str()
      ->check(CLI::Range(1, 1 << 20));
  gen_cmd->add_option("--seed", gen.config.seed, "Random seed")->required();
  gen_cmd->add_option("--split-prob", gen.config.split_prob,
                      "Split probability below the maximal depth")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("-o,--out", gen.out, "Output tree JSON")->required();

  // validate
  std::string validate_tree;
  auto* validate_cmd = app.add_subcommand("validate", "Check a tree file");
  validate_cmd->add_option("tree", validate_tree, "Tree JSON")->required();

  // label
  cli::LabelOptions label;
  std::string label_strategy = "opt";
  ModelFlags label_model;
  auto* label_cmd =
      app.add_subcommand("label", "Compute a taken/untaken labeling");
  label_cmd->add_option("tree", label.tree, "Tree JSON")->required();
  label_cmd->add_option("--strategy", label_strategy, "Labeling strategy")
      ->capture_default_str()
      ->check(CLI::IsMember(kStrategies));
  AddModelFlags(label_cmd, label_model);
  label_cmd->add_option("-o,--out", label.out, "Output labeling JSON")
      ->required();

  // estimate
  cli::EstimateOptions estimate;
  std::string estimate_labeling;
  std::string estimate_strategy = "standard";
  std::string estimate_format = "table";
  ModelFlags estimate_model;
  auto* estimate_cmd =
      app.add_subcommand("estimate", "Per-path surrogate estimates");
  estimate_cmd->add_option("tree", estimate.tree, "Tree JSON")->required();
  auto* labeling_opt =
      estimate_cmd->add_option("--labeling", estimate_labeling,
                               "Labeling JSON")
          ->check(CLI::ExistingFile);
  estimate_cmd
      ->add_option("--strategy", estimate_strategy,
                   "Strategy used when no labeling file is given")
      ->capture_default_str()
      ->check(CLI::IsMember(kStrategies))
      ->excludes(labeling_opt);
  AddModelFlags(estimate_cmd, estimate_model);
  estimate_cmd->add_option("--format", estimate_format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // samples
  cli::SamplesOptions samples;
  std::string samples_strategy = "standard";
  CostFlags samples_cost;
  auto* samples_cmd = app.add_subcommand(
      "samples", "Time every path with the oracle and write a sample CSV");
  samples_cmd->add_option("trees", samples.trees, "Tree JSON files")
      ->required();
  samples_cmd->add_option("--strategy", samples_strategy, "Labeling strategy")
      ->capture_default_str()
      ->check(CLI::IsMember(kStrategies));
  AddCostFlags(samples_cmd, samples_cost);
  samples_cmd->add_option("-o,--out", samples.out, "Output CSV")->required();

  // fit
  cli::FitOptions fit;
  auto* fit_cmd =
      app.add_subcommand("fit", "Fit sigma, delta, gamma to path samples");
  fit_cmd->add_option("samples", fit.samples, "Sample CSV")->required();
  fit_cmd->add_option("--depth", fit.depth,
                      "Target depth recorded with the fit")
      ->capture_default_str();
  fit_cmd->add_option("-o,--out", fit.out, "Output FitResult JSON");

  // emit
  cli::EmitOptions emit;
  std::string feature_type = "float64";
  std::string return_type = "int32";
  auto* emit_cmd = app.add_subcommand("emit", "Emit C source for a tree");
  emit_cmd->add_option("tree", emit.tree, "Tree JSON")->required();
  emit_cmd->add_option("--labeling", emit.labeling, "Labeling JSON")
      ->required();
  emit_cmd->add_option("--function-name", emit.config.function_name,
                       "Name of the emitted function")
      ->capture_default_str();
  emit_cmd->add_option("--feature-type", feature_type, "Feature element type")
      ->capture_default_str()
      ->check(CLI::IsMember({"float32", "float64", "int32"}));
  emit_cmd->add_option("--return-type", return_type, "Prediction type")
      ->capture_default_str()
      ->check(CLI::IsMember({"int32", "float64"}));
  emit_cmd->add_flag("--include-main", emit.config.include_main,
                     "Also emit a main() reading features from argv");
  emit_cmd->add_option("-o,--out", emit.out, "Output .c file")->required();

  // compare
  cli::CompareOptions compare;
  std::string compare_format = "table";
  ModelFlags compare_model;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Estimated WCET of every strategy, normalized to opt");
  compare_cmd->add_option("trees", compare.trees, "Tree JSON files")
      ->required();
  AddModelFlags(compare_cmd, compare_model);
  compare_cmd->add_option("--format", compare_format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // pipeline
  cli::PipelineOptions pipeline;
  CostFlags pipeline_cost;
  auto* pipeline_cmd = app.add_subcommand(
      "pipeline", "Generate, time and fit one surrogate model per depth");
  pipeline_cmd->add_option("--depths", pipeline.depths, "Target depths")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::Range(1, kMaxGenDepth));
  pipeline_cmd->add_option("--trees-per-depth", pipeline.trees_per_depth,
                           "Trees generated per depth")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  pipeline_cmd->add_option("--features", pipeline.num_features,
                           "Number of features")
      ->capture_default_str()
      ->check(CLI::Range(1, 1 << 20));
  pipeline_cmd->add_option("--split-prob", pipeline.split_prob,
                           "Split probability below the maximal depth")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  pipeline_cmd->add_option("--seed", pipeline.seed, "Random seed")->required();
  AddCostFlags(pipeline_cmd, pipeline_cost);
  pipeline_cmd->add_option("--out-dir", pipeline.out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
    if (*gen_cmd && !(gen.config.split_prob > 0.0)) {
      throw CLI::ValidationError("--split-prob", "must be greater than 0");
    }
    if (*pipeline_cmd && !(pipeline.split_prob > 0.0)) {
      throw CLI::ValidationError("--split-prob", "must be greater than 0");
    }
    label.model = ToModelSource(label_model);
    estimate.model = ToModelSource(estimate_model);
    compare.model = ToModelSource(compare_model);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*gen_cmd) {
      cli::Gen(gen, std::cout);
    } else if (*validate_cmd) {
      cli::Validate(validate_tree, std::cout);
    } else if (*label_cmd) {
      label.strategy = ParseStrategy(label_strategy);
      cli::Label(label, std::cout);
    } else if (*estimate_cmd) {
      if (!estimate_labeling.empty()) estimate.labeling = estimate_labeling;
      estimate.strategy = ParseStrategy(estimate_strategy);
      estimate.format = cli::ParseFormat(estimate_format);
      cli::Estimate(estimate, std::cout);
    } else if (*samples_cmd) {
      samples.strategy = ParseStrategy(samples_strategy);
      samples.cost = ToCostConfig(samples_cost);
      cli::Samples(samples, std::cout);
    } else if (*fit_cmd) {
      cli::Fit(fit, std::cout);
    } else if (*emit_cmd) {
      emit.config.feature_type = ParseFeatureType(feature_type);
      emit.config.return_type = ParseReturnType(return_type);
      cli::Emit(emit, std::cout);
    } else if (*compare_cmd) {
      compare.format = cli::ParseFormat(compare_format);
      cli::Compare(compare, std::cout);
    } else if (*pipeline_cmd) {
      pipeline.cost = ToCostConfig(pipeline_cost);
      cli::Pipeline(pipeline, std::cout);
    }
  } catch (const wcdt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
