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

#include "wcdt/commands.h"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wcdt/error.h"
#include "wcdt/fitting.h"
#include "wcdt/io.h"

namespace wcdt::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string Shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

DecisionTree LoadTree(const std::string& path) {
  return ParseTreeJson(ReadFile(path));
}

double GeoMean(const std::vector<double>& values) {
  double log_sum = 0.0;
  for (double v : values) log_sum += std::log(v);
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::string ModelLabel(int model_depth, bool toy) {
  return toy ? "toy" : std::to_string(model_depth);
}

}  // namespace

ModelResolver::ModelResolver(const ModelSource& source) {
  if (source.toy) {
    toy_ = SurrogateModel{(*source.toy)[0], (*source.toy)[1], (*source.toy)[2],
                          0};
    CheckModel(*toy_);
  } else if (source.table_path) {
    table_ = ParseModelTableJson(ReadFile(*source.table_path));
  }
}

SurrogateModel ModelResolver::For(const DecisionTree& tree) const {
  if (toy_) return *toy_;
  return SelectModel(table_ ? *table_ : DefaultModelTable(), tree);
}

Format ParseFormat(const std::string& name) {
  if (name == "table") return Format::kTable;
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw Error(ErrorCode::kInvalidConfig, "unknown format '" + name + "'");
}

void Gen(const GenOptions& options, std::ostream& out) {
  const DecisionTree tree = GenerateTree(options.config);
  WriteFile(options.out, TreeToJson(tree));
  out << fmt::format("depth {} leaves {} nodes {}\n", tree.depth(),
                     tree.leaves().size(), tree.size());
}

void Validate(const std::string& tree_path, std::ostream& out) {
  const DecisionTree tree = LoadTree(tree_path);
  out << fmt::format("valid: depth {}, {} nodes, {} leaves{}\n", tree.depth(),
                     tree.size(), tree.leaves().size(),
                     tree.has_probabilities() ? ", with probabilities" : "");
}

void Label(const LabelOptions& options, std::ostream& out) {
  const DecisionTree tree = LoadTree(options.tree);
  const ModelResolver resolver(options.model);
  const SurrogateModel model = resolver.For(tree);
  const Labeling labeling = MakeLabeling(tree, options.strategy, model);
  WriteFile(options.out, LabelingToJson(labeling));
  const TreeCost cost = ComputeTreeCost(tree, labeling, model);
  out << fmt::format("strategy {} model {} cost {} wcep-leaf {}\n",
                     StrategyName(options.strategy),
                     ModelLabel(model.target_depth, resolver.is_toy()),
                     Shortest(cost.cost), cost.wcep_leaf);
}

void Estimate(const EstimateOptions& options, std::ostream& out) {
  const DecisionTree tree = LoadTree(options.tree);
  const ModelResolver resolver(options.model);
  const SurrogateModel model = resolver.For(tree);
  const Labeling labeling =
      options.labeling ? ParseLabelingJson(ReadFile(*options.labeling))
                       : MakeLabeling(tree, options.strategy, model);
  const auto paths = EnumeratePaths(tree, labeling);
  const TreeCost cost = ComputeTreeCost(tree, labeling, model);
  switch (options.format) {
    case Format::kJson: {
      Json doc;
      doc["model"] = {{"depth", model.target_depth},
                      {"sigma", model.sigma},
                      {"delta", model.delta},
                      {"gamma", model.gamma}};
      doc["cost"] = cost.cost;
      doc["wcep_leaf"] = cost.wcep_leaf;
      Json rows = Json::array();
      for (const PathStats& p : paths) {
        rows.push_back({{"leaf", p.leaf},
                        {"depth", p.depth},
                        {"taken", p.taken},
                        {"untaken", p.untaken()},
                        {"estimate", EstimatePath(model, p)}});
      }
      doc["paths"] = std::move(rows);
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      out << "leaf,depth,taken,untaken,estimate\n";
      for (const PathStats& p : paths) {
        out << fmt::format("{},{},{},{},{}\n", p.leaf, p.depth, p.taken,
                           p.untaken(), Shortest(EstimatePath(model, p)));
      }
      break;
    case Format::kTable:
      out << fmt::format("{:>8} {:>6} {:>6} {:>8} {:>12}\n", "leaf", "depth",
                         "taken", "untaken", "estimate");
      for (const PathStats& p : paths) {
        out << fmt::format("{:>8} {:>6} {:>6} {:>8} {:>12.2f}{}\n", p.leaf,
                           p.depth, p.taken, p.untaken(),
                           EstimatePath(model, p),
                           p.leaf == cost.wcep_leaf ? "  <- WCEP" : "");
      }
      out << fmt::format("estimated WCET {} (model {})\n", Shortest(cost.cost),
                         ModelLabel(model.target_depth, resolver.is_toy()));
      break;
  }
}

void Samples(const SamplesOptions& options, std::ostream& out) {
  std::vector<DecisionTree> trees;
  for (const std::string& path : options.trees) trees.push_back(LoadTree(path));
  const auto samples = CollectSamples(trees, options.strategy, options.cost);
  WriteFile(options.out, SamplesToCsv(samples));
  out << fmt::format("{} samples from {} trees\n", samples.size(),
                     trees.size());
}

void Fit(const FitOptions& options, std::ostream& out) {
  const auto samples = ParseSamplesCsv(ReadFile(options.samples));
  const FitResult fit = wcdt::Fit(samples, options.depth);
  if (!options.out.empty()) WriteFile(options.out, FitResultToJson(fit));
  out << fmt::format(
      "sigma {:.6f} delta {:.6f} gamma {:.6f} r2 {:.6f} kendall_tau {:.6f} "
      "n {}\n",
      fit.model.sigma, fit.model.delta, fit.model.gamma, fit.r2,
      fit.kendall_tau, fit.n_samples);
}

void Emit(const EmitOptions& options, std::ostream& out) {
  const DecisionTree tree = LoadTree(options.tree);
  const Labeling labeling = ParseLabelingJson(ReadFile(options.labeling));
  const std::string source = EmitC(tree, labeling, options.config);
  WriteFile(options.out, source);
  out << fmt::format("wrote {} ({} bytes)\n", options.out, source.size());
}

double Normalize(double a, double b) { return a == b ? 1.0 : a / b; }

double CompareRow::standard_norm() const { return Normalize(standard, opt); }

std::optional<double> CompareRow::swap_norm() const {
  if (!swap) return std::nullopt;
  return Normalize(*swap, opt);
}

double CompareRow::inverted_norm() const { return Normalize(inverted, opt); }

CompareRow CompareTree(const DecisionTree& tree, const SurrogateModel& model,
                       std::string name) {
  CompareRow row;
  row.name = std::move(name);
  row.tree_depth = tree.depth();
  row.leaves = tree.leaves().size();
  row.model_depth = model.target_depth;
  row.standard = ComputeTreeCost(tree, StandardLabeling(tree), model).cost;
  if (tree.has_probabilities()) {
    row.swap = ComputeTreeCost(tree, SwapLabeling(tree), model).cost;
  }
  row.opt = ComputeTreeCost(tree, SurrogateOpt(tree, model), model).cost;
  row.inverted = ComputeTreeCost(tree, InvertedOpt(tree, model), model).cost;
  return row;
}

CompareReport Summarize(std::vector<CompareRow> rows) {
  CompareReport report;
  report.rows = std::move(rows);
  if (report.rows.empty()) return report;
  std::vector<double> standard, swap, inverted;
  for (const CompareRow& row : report.rows) {
    standard.push_back(row.standard_norm());
    inverted.push_back(row.inverted_norm());
    if (row.swap) swap.push_back(*row.swap_norm());
  }
  report.geomean_standard = GeoMean(standard);
  report.geomean_inverted = GeoMean(inverted);
  if (!swap.empty()) report.geomean_swap = GeoMean(swap);
  return report;
}

void WriteCompareReport(const CompareReport& report, Format format,
                        bool toy_model, std::ostream& out) {
  auto opt_text = [](const std::optional<double>& v, bool shortest) {
    if (!v) return std::string(shortest ? "" : "-");
    return shortest ? Shortest(*v) : fmt::format("{:.4f}", *v);
  };
  switch (format) {
    case Format::kJson: {
      Json rows = Json::array();
      for (const CompareRow& row : report.rows) {
        Json item;
        item["tree"] = row.name;
        item["tree_depth"] = row.tree_depth;
        item["leaves"] = row.leaves;
        item["model_depth"] = toy_model ? Json("toy") : Json(row.model_depth);
        item["standard"] = row.standard;
        item["swap"] = row.swap ? Json(*row.swap) : Json(nullptr);
        item["opt"] = row.opt;
        item["inverted"] = row.inverted;
        item["standard_norm"] = row.standard_norm();
        item["swap_norm"] =
            row.swap ? Json(*row.swap_norm()) : Json(nullptr);
        item["opt_norm"] = 1.0;
        item["inverted_norm"] = row.inverted_norm();
        rows.push_back(std::move(item));
      }
      Json doc;
      doc["trees"] = std::move(rows);
      doc["geomean"] = {
          {"standard", report.geomean_standard},
          {"swap", report.geomean_swap ? Json(*report.geomean_swap)
                                       : Json(nullptr)},
          {"opt", 1.0},
          {"inverted", report.geomean_inverted}};
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      out << "tree,tree_depth,leaves,model_depth,standard,swap,opt,inverted,"
             "standard_norm,swap_norm,opt_norm,inverted_norm\n";
      for (const CompareRow& row : report.rows) {
        out << fmt::format(
            "{},{},{},{},{},{},{},{},{},{},1,{}\n", row.name, row.tree_depth,
            row.leaves, ModelLabel(row.model_depth, toy_model),
            Shortest(row.standard), opt_text(row.swap, true),
            Shortest(row.opt), Shortest(row.inverted),
            Shortest(row.standard_norm()), opt_text(row.swap_norm(), true),
            Shortest(row.inverted_norm()));
      }
      out << fmt::format("geomean,,,,,,,,{},{},1,{}\n",
                         Shortest(report.geomean_standard),
                         opt_text(report.geomean_swap, true),
                         Shortest(report.geomean_inverted));
      break;
    case Format::kTable: {
      std::size_t width = 8;
      for (const CompareRow& row : report.rows) {
        width = std::max(width, row.name.size());
      }
      out << fmt::format(
          "{:<{}} {:>5} {:>6} {:>5} {:>10} {:>10} {:>10} {:>10} {:>8} {:>8} "
          "{:>8}\n",
          "tree", width, "depth", "leaves", "model", "standard", "swap", "opt",
          "inverted", "std/opt", "swap/opt", "inv/opt");
      for (const CompareRow& row : report.rows) {
        out << fmt::format(
            "{:<{}} {:>5} {:>6} {:>5} {:>10.2f} {:>10} {:>10.2f} {:>10.2f} "
            "{:>8.4f} {:>8} {:>8.4f}\n",
            row.name, width, row.tree_depth, row.leaves,
            ModelLabel(row.model_depth, toy_model), row.standard,
            row.swap ? fmt::format("{:.2f}", *row.swap) : "-", row.opt,
            row.inverted, row.standard_norm(), opt_text(row.swap_norm(), false),
            row.inverted_norm());
      }
      out << fmt::format("{:<{}} {:>5} {:>6} {:>5} {:>10} {:>10} {:>10} {:>10} "
                         "{:>8.4f} {:>8} {:>8.4f}\n",
                         "geomean", width, "", "", "", "", "", "", "",
                         report.geomean_standard,
                         opt_text(report.geomean_swap, false),
                         report.geomean_inverted);
      break;
    }
  }
}

void Compare(const CompareOptions& options, std::ostream& out) {
  const ModelResolver resolver(options.model);
  std::vector<CompareRow> rows;
  for (const std::string& path : options.trees) {
    const DecisionTree tree = LoadTree(path);
    rows.push_back(CompareTree(tree, resolver.For(tree), path));
  }
  WriteCompareReport(Summarize(std::move(rows)), options.format,
                     resolver.is_toy(), out);
}

std::uint64_t PipelineTreeSeed(std::uint64_t seed, int depth, int index) {
  return MixSeed(MixSeed(seed ^ static_cast<std::uint64_t>(depth)) +
                 static_cast<std::uint64_t>(index));
}

PipelineResult Pipeline(const PipelineOptions& options, std::ostream& out) {
  if (options.depths.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no depths requested");
  }
  if (options.trees_per_depth < 1) {
    throw Error(ErrorCode::kInvalidConfig, "trees_per_depth must be >= 1");
  }
  CheckCostModelConfig(options.cost);
  std::vector<int> depths = options.depths;
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create directory '" +
                                    options.out_dir + "': " + ec.message());
  }
  const std::filesystem::path dir(options.out_dir);

  PipelineResult result;
  std::vector<SurrogateModel> models;
  std::string report_csv = "depth,sigma,delta,gamma,r2,kendall_tau,n\n";
  Json report = Json::array();
  out << fmt::format("{:>5} {:>10} {:>8} {:>8} {:>6} {:>6} {:>7}\n", "depth",
                     "sigma", "delta", "gamma", "r2", "tau", "paths");
  for (int depth : depths) {
    std::vector<DecisionTree> trees;
    for (int i = 0; i < options.trees_per_depth; ++i) {
      GenConfig config{depth, options.num_features,
                       PipelineTreeSeed(options.seed, depth, i),
                       options.split_prob};
      trees.push_back(GenerateTree(config));
    }
    const auto samples = CollectSamples(trees, Strategy::kStandard,
                                        options.cost);
    WriteFile((dir / fmt::format("samples_d{}.csv", depth)).string(),
              SamplesToCsv(samples));
    const FitResult fit = wcdt::Fit(samples, depth);
    result.fits.push_back(fit);
    models.push_back(fit.model);
    report.push_back(Json::parse(FitResultToJson(fit)));
    report_csv += fmt::format("{},{},{},{},{},{},{}\n", depth,
                              Shortest(fit.model.sigma),
                              Shortest(fit.model.delta),
                              Shortest(fit.model.gamma), Shortest(fit.r2),
                              Shortest(fit.kendall_tau), fit.n_samples);
    out << fmt::format("{:>5} {:>10.2f} {:>8.2f} {:>8.2f} {:>6.3f} {:>6.3f} "
                       "{:>7}\n",
                       depth, fit.model.sigma, fit.model.delta,
                       fit.model.gamma, fit.r2, fit.kendall_tau,
                       fit.n_samples);
  }
  WriteFile((dir / "model_table.json").string(),
            ModelTableToJson(ModelTable(models)));
  Json doc;
  doc["fits"] = std::move(report);
  WriteFile((dir / "report.json").string(), doc.dump(2) + "\n");
  WriteFile((dir / "report.csv").string(), report_csv);
  return result;
}

}  // namespace wcdt::cli
