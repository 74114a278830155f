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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wcdt/codegen.h"
#include "wcdt/error.h"
#include "wcdt/fitting.h"
#include "wcdt/io.h"
#include "wcdt/optimizer.h"
#include "wcdt/surrogate.h"
#include "wcdt/synthesis.h"
#include "wcdt/timing_oracle.h"
#include "wcdt/tree.h"

namespace py = pybind11;

namespace {

using wcdt::DecisionTree;
using wcdt::Labeling;
using wcdt::NodeId;
using wcdt::Side;
using wcdt::SurrogateModel;

// Labelings cross the boundary as {node_id: "left" | "right"}.
Labeling ToLabeling(const std::map<NodeId, std::string>& taken) {
  Labeling labeling;
  for (const auto& [id, side] : taken) {
    if (side != "left" && side != "right") {
      throw py::value_error("labeling values must be 'left' or 'right'");
    }
    labeling.set(id, side == "left" ? Side::kLeft : Side::kRight);
  }
  return labeling;
}

std::map<NodeId, std::string> FromLabeling(const Labeling& labeling) {
  std::map<NodeId, std::string> out;
  for (const auto& [id, side] : labeling.taken()) {
    out[id] = side == Side::kLeft ? "left" : "right";
  }
  return out;
}

SurrogateModel ModelOrSelected(const DecisionTree& tree,
                               const std::optional<SurrogateModel>& model) {
  return model ? *model : wcdt::DefaultModelTable().Select(tree.depth());
}

wcdt::CostModelConfig CostConfig(double node_base, double taken_penalty,
                                 int line_size, double miss,
                                 double overhead) {
  wcdt::CostModelConfig c{node_base, taken_penalty, line_size, miss, overhead};
  wcdt::CheckCostModelConfig(c);
  return c;
}

}  // namespace

PYBIND11_MODULE(_wcdt, m) {
  m.doc() = "Surrogate-model WCET optimization for if-else decision trees.";

  py::register_exception<wcdt::Error>(m, "WcdtError", PyExc_ValueError);

  py::class_<DecisionTree>(m, "DecisionTree")
      .def_static(
          "from_json",
          [](const std::string& text) { return wcdt::ParseTreeJson(text); },
          py::arg("text"))
      .def("to_json", &wcdt::TreeToJson)
      .def_property_readonly("depth", &DecisionTree::depth)
      .def_property_readonly("size", &DecisionTree::size)
      .def_property_readonly("root", &DecisionTree::root)
      .def_property_readonly("num_features", &DecisionTree::num_features)
      .def_property_readonly("leaves", &DecisionTree::leaves)
      .def_property_readonly("inner_nodes", &DecisionTree::inner_nodes)
      .def_property_readonly("has_probabilities",
                             &DecisionTree::has_probabilities)
      .def(
          "infer",
          [](const DecisionTree& tree, const std::vector<double>& x) {
            const wcdt::InferenceResult r = wcdt::Infer(tree, x);
            return py::make_tuple(r.prediction, r.path);
          },
          py::arg("x"), "Returns (prediction, path of node ids).")
      .def("__eq__", [](const DecisionTree& a, const DecisionTree& b) {
        return a == b;
      });

  py::class_<SurrogateModel>(m, "SurrogateModel")
      .def(py::init([](double sigma, double delta, double gamma, int depth) {
             SurrogateModel model{sigma, delta, gamma, depth};
             wcdt::CheckModel(model);
             return model;
           }),
           py::arg("sigma"), py::arg("delta"), py::arg("gamma"),
           py::arg("target_depth") = 0)
      .def_readonly("sigma", &SurrogateModel::sigma)
      .def_readonly("delta", &SurrogateModel::delta)
      .def_readonly("gamma", &SurrogateModel::gamma)
      .def_readonly("target_depth", &SurrogateModel::target_depth)
      .def_property_readonly("pi", &SurrogateModel::pi)
      .def("__repr__", [](const SurrogateModel& s) {
        return "SurrogateModel(sigma=" + std::to_string(s.sigma) +
               ", delta=" + std::to_string(s.delta) +
               ", gamma=" + std::to_string(s.gamma) +
               ", target_depth=" + std::to_string(s.target_depth) + ")";
      });

  m.def("default_model_table",
        [] { return wcdt::DefaultModelTable().models(); });
  m.def(
      "select_model",
      [](int depth) { return wcdt::DefaultModelTable().Select(depth); },
      py::arg("depth"));

  m.def(
      "generate_tree",
      [](int max_depth, int num_features, std::uint64_t seed,
         double split_prob) {
        return wcdt::GenerateTree({max_depth, num_features, seed, split_prob});
      },
      py::arg("max_depth"), py::arg("num_features") = 4, py::arg("seed") = 0,
      py::arg("split_prob") = 0.5);
  m.def("synthesize_input", &wcdt::SynthesizeInput, py::arg("tree"),
        py::arg("leaf"));

  m.def(
      "label",
      [](const DecisionTree& tree, const std::string& strategy,
         const std::optional<SurrogateModel>& model) {
        return FromLabeling(wcdt::MakeLabeling(
            tree, wcdt::ParseStrategy(strategy), ModelOrSelected(tree, model)));
      },
      py::arg("tree"), py::arg("strategy") = "opt",
      py::arg("model") = py::none(),
      "Labeling as {node_id: taken side}. Without a model the built-in "
      "table entry for the tree depth is used.");
  m.def(
      "tree_cost",
      [](const DecisionTree& tree, const std::map<NodeId, std::string>& l,
         const std::optional<SurrogateModel>& model) {
        const wcdt::TreeCost c = wcdt::ComputeTreeCost(
            tree, ToLabeling(l), ModelOrSelected(tree, model));
        return py::make_tuple(c.cost, c.wcep_leaf);
      },
      py::arg("tree"), py::arg("labeling"), py::arg("model") = py::none(),
      "Returns (estimated WCET, leaf of the worst-case path).");
  m.def(
      "enumerate_paths",
      [](const DecisionTree& tree, const std::map<NodeId, std::string>& l) {
        std::vector<std::tuple<NodeId, int, int>> out;
        for (const wcdt::PathStats& p :
             wcdt::EnumeratePaths(tree, ToLabeling(l))) {
          out.emplace_back(p.leaf, p.depth, p.taken);
        }
        return out;
      },
      py::arg("tree"), py::arg("labeling"),
      "Returns [(leaf, depth, taken)] ordered by leaf id.");
  m.def(
      "brute_force",
      [](const DecisionTree& tree, const SurrogateModel& model,
         const std::string& objective) {
        if (objective != "min" && objective != "max") {
          throw py::value_error("objective must be 'min' or 'max'");
        }
        const wcdt::BruteForceResult r = wcdt::BruteForce(
            tree, model,
            objective == "min" ? wcdt::Objective::kMin : wcdt::Objective::kMax);
        return py::make_tuple(FromLabeling(r.labeling), r.cost);
      },
      py::arg("tree"), py::arg("model"), py::arg("objective") = "min");

  m.def(
      "fit",
      [](const std::vector<std::tuple<int, int, double>>& rows,
         int target_depth) {
        std::vector<wcdt::PathSample> samples;
        for (const auto& [d, t, w] : rows) samples.push_back({d, t, w});
        const wcdt::FitResult r = wcdt::Fit(samples, target_depth);
        py::dict out;
        out["model"] = r.model;
        out["r2"] = r.r2;
        out["kendall_tau"] = r.kendall_tau;
        out["n_samples"] = r.n_samples;
        return out;
      },
      py::arg("samples"), py::arg("target_depth") = 0,
      "Least-squares fit of (depth, taken, wcet) rows.");
  m.def(
      "r_squared",
      [](const std::vector<double>& predicted,
         const std::vector<double>& actual) {
        return wcdt::RSquared(predicted, actual);
      },
      py::arg("predicted"), py::arg("actual"));
  m.def(
      "kendall_tau",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return wcdt::KendallTau(a, b);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "emit_c",
      [](const DecisionTree& tree, const std::map<NodeId, std::string>& l,
         const std::string& function_name, const std::string& feature_type,
         const std::string& return_type, bool include_main) {
        wcdt::EmitConfig config;
        config.function_name = function_name;
        config.feature_type = wcdt::ParseFeatureType(feature_type);
        config.return_type = wcdt::ParseReturnType(return_type);
        config.include_main = include_main;
        return wcdt::EmitC(tree, ToLabeling(l), config);
      },
      py::arg("tree"), py::arg("labeling"), py::arg("function_name") = "predict",
      py::arg("feature_type") = "float64", py::arg("return_type") = "int32",
      py::arg("include_main") = false);

  m.def(
      "path_cycles",
      [](const DecisionTree& tree, const std::map<NodeId, std::string>& l,
         NodeId leaf, double node_base, double taken_penalty, int line_size,
         double miss, double overhead) {
        return wcdt::PathCycles(
            tree, ToLabeling(l), leaf,
            CostConfig(node_base, taken_penalty, line_size, miss, overhead));
      },
      py::arg("tree"), py::arg("labeling"), py::arg("leaf"),
      py::arg("node_base") = 25.0, py::arg("taken_penalty") = 6.0,
      py::arg("line_size") = 2, py::arg("miss") = 5.0,
      py::arg("overhead") = 235.0);
  m.def(
      "collect_samples",
      [](const std::vector<DecisionTree>& trees, const std::string& strategy,
         double node_base, double taken_penalty, int line_size, double miss,
         double overhead) {
        std::vector<std::tuple<int, int, double>> out;
        for (const wcdt::PathSample& s : wcdt::CollectSamples(
                 trees, wcdt::ParseStrategy(strategy),
                 CostConfig(node_base, taken_penalty, line_size, miss,
                            overhead))) {
          out.emplace_back(s.depth, s.taken, s.wcet);
        }
        return out;
      },
      py::arg("trees"), py::arg("strategy") = "standard",
      py::arg("node_base") = 25.0, py::arg("taken_penalty") = 6.0,
      py::arg("line_size") = 2, py::arg("miss") = 5.0,
      py::arg("overhead") = 235.0,
      "Timing-oracle samples [(depth, taken, cycles)], one per leaf.");
}
