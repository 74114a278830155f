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

#include "wcdt/io.h"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcdt/error.h"

namespace wcdt {
namespace {

using Json = nlohmann::ordered_json;

Json Parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse,
                std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

// Field access that reports schema problems as `code`.
template <typename T>
T Field(const Json& obj, const char* key, ErrorCode code,
        std::string_view context) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(code, std::string(context) + ": missing field '" + key + "'");
  }
  try {
    return it->template get<T>();
  } catch (const Json::exception&) {
    throw Error(code,
                std::string(context) + ": field '" + key + "' has wrong type");
  }
}

bool IsNonNegativeInteger(const Json& j) {
  return j.is_number_unsigned() ||
         (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

}  // namespace

DecisionTree ParseTreeJson(std::string_view text) {
  const Json doc = Parse(text, "tree file");
  std::vector<std::string> problems;
  auto fail = [&]() {
    throw Error(ErrorCode::kMalformedTree, "tree file violates the schema",
                problems);
  };
  if (!doc.is_object()) {
    problems.push_back("top level must be an object");
    fail();
  }
  for (const char* key : {"num_features", "root", "nodes"}) {
    if (!doc.contains(key)) problems.push_back(std::string("missing '") + key + "'");
  }
  if (!problems.empty()) fail();
  if (!doc["num_features"].is_number_integer()) {
    problems.push_back("'num_features' must be an integer");
  }
  if (!IsNonNegativeInteger(doc["root"])) {
    problems.push_back("'root' must be a non-negative integer");
  }
  if (!doc["nodes"].is_array()) problems.push_back("'nodes' must be an array");
  if (!problems.empty()) fail();

  const Json& items = doc["nodes"];
  const std::size_t n = items.size();
  std::vector<Node> nodes(n);
  std::vector<bool> filled(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& item = items[i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("id") ||
        !IsNonNegativeInteger(item["id"])) {
      problems.push_back(where + ": needs a non-negative integer 'id'");
      continue;
    }
    const auto id = item["id"].get<std::uint64_t>();
    if (id >= n) {
      problems.push_back(where + ": id " + std::to_string(id) +
                         " out of range");
      continue;
    }
    if (filled[id]) {
      problems.push_back(where + ": duplicate id " + std::to_string(id));
      continue;
    }
    Node node;
    if (item.contains("probability")) {
      if (!item["probability"].is_number()) {
        problems.push_back(where + ": 'probability' must be a number");
      } else {
        node.probability = item["probability"].get<double>();
      }
    }
    const bool is_leaf = item.contains("prediction");
    const bool is_inner = item.contains("feature") || item.contains("left") ||
                          item.contains("right") || item.contains("threshold");
    if (is_leaf == is_inner) {
      problems.push_back(where + ": must be either an inner node "
                         "(feature, threshold, left, right) or a leaf "
                         "(prediction)");
      continue;
    }
    if (is_leaf) {
      if (!item["prediction"].is_number()) {
        problems.push_back(where + ": 'prediction' must be a number");
        continue;
      }
      node.body = LeafNode{item["prediction"].get<double>()};
    } else {
      bool ok = item.contains("feature") && item["feature"].is_number_integer() &&
                item.contains("threshold") && item["threshold"].is_number() &&
                item.contains("left") && IsNonNegativeInteger(item["left"]) &&
                item.contains("right") && IsNonNegativeInteger(item["right"]);
      if (!ok) {
        problems.push_back(where + ": inner node needs integer 'feature', "
                           "numeric 'threshold', and non-negative integer "
                           "'left'/'right'");
        continue;
      }
      const auto left = item["left"].get<std::uint64_t>();
      const auto right = item["right"].get<std::uint64_t>();
      if (left > UINT32_MAX || right > UINT32_MAX) {
        problems.push_back(where + ": dangling child id");
        continue;
      }
      node.body = InnerNode{item["feature"].get<int>(),
                            item["threshold"].get<double>(),
                            static_cast<NodeId>(left),
                            static_cast<NodeId>(right)};
    }
    nodes[id] = std::move(node);
    filled[id] = true;
  }
  if (!problems.empty()) fail();
  const auto root = doc["root"].get<std::uint64_t>();
  return DecisionTree(std::move(nodes),
                      root > UINT32_MAX ? UINT32_MAX : static_cast<NodeId>(root),
                      doc["num_features"].get<int>());
}

std::string TreeToJson(const DecisionTree& tree) {
  Json doc;
  doc["num_features"] = tree.num_features();
  doc["root"] = tree.root();
  Json nodes = Json::array();
  for (NodeId id = 0; id < tree.size(); ++id) {
    const Node& node = tree.node(id);
    Json item;
    item["id"] = id;
    if (node.is_leaf()) {
      item["prediction"] = node.leaf().prediction;
    } else {
      item["feature"] = node.inner().feature;
      item["threshold"] = node.inner().threshold;
      item["left"] = node.inner().left;
      item["right"] = node.inner().right;
    }
    if (node.probability) item["probability"] = *node.probability;
    nodes.push_back(std::move(item));
  }
  doc["nodes"] = std::move(nodes);
  return Dump(doc);
}

Labeling ParseLabelingJson(std::string_view text) {
  const Json doc = Parse(text, "labeling file");
  if (!doc.is_object() || !doc.contains("taken") || !doc["taken"].is_object()) {
    throw Error(ErrorCode::kParse,
                "labeling file needs an object field 'taken'");
  }
  Labeling labeling;
  for (const auto& [key, value] : doc["taken"].items()) {
    NodeId id = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (ec != std::errc() || ptr != key.data() + key.size()) {
      throw Error(ErrorCode::kParse,
                  "labeling key '" + key + "' is not a decimal node id");
    }
    if (!value.is_string() ||
        (value.get<std::string>() != "left" &&
         value.get<std::string>() != "right")) {
      throw Error(ErrorCode::kParse,
                  "labeling value for node " + key +
                      " must be \"left\" or \"right\"");
    }
    labeling.set(id, value.get<std::string>() == "left" ? Side::kLeft
                                                        : Side::kRight);
  }
  return labeling;
}

std::string LabelingToJson(const Labeling& labeling) {
  Json taken = Json::object();
  for (const auto& [id, side] : labeling.taken()) {
    taken[std::to_string(id)] = side == Side::kLeft ? "left" : "right";
  }
  Json doc;
  doc["taken"] = std::move(taken);
  return Dump(doc);
}

ModelTable ParseModelTableJson(std::string_view text) {
  const Json doc = Parse(text, "model table");
  if (!doc.is_object() || !doc.contains("models") || !doc["models"].is_array()) {
    throw Error(ErrorCode::kParse, "model table needs an array field 'models'");
  }
  std::vector<SurrogateModel> models;
  for (const Json& item : doc["models"]) {
    if (!item.is_object()) {
      throw Error(ErrorCode::kParse, "model entries must be objects");
    }
    SurrogateModel m;
    m.target_depth = Field<int>(item, "depth", ErrorCode::kParse, "model");
    m.sigma = Field<double>(item, "sigma", ErrorCode::kParse, "model");
    m.delta = Field<double>(item, "delta", ErrorCode::kParse, "model");
    m.gamma = Field<double>(item, "gamma", ErrorCode::kParse, "model");
    models.push_back(m);
  }
  return ModelTable(std::move(models));
}

std::string ModelTableToJson(const ModelTable& table) {
  Json models = Json::array();
  for (const SurrogateModel& m : table.models()) {
    Json item;
    item["depth"] = m.target_depth;
    item["sigma"] = m.sigma;
    item["delta"] = m.delta;
    item["gamma"] = m.gamma;
    models.push_back(std::move(item));
  }
  Json doc;
  doc["models"] = std::move(models);
  return Dump(doc);
}

std::string FitResultToJson(const FitResult& fit) {
  Json doc;
  doc["depth"] = fit.model.target_depth;
  doc["sigma"] = fit.model.sigma;
  doc["delta"] = fit.model.delta;
  doc["gamma"] = fit.model.gamma;
  doc["r2"] = fit.r2;
  doc["kendall_tau"] = fit.kendall_tau;
  doc["n"] = fit.n_samples;
  return Dump(doc);
}

CostModelConfig ParseCostModelJson(std::string_view text) {
  const Json doc = Parse(text, "cost model");
  if (!doc.is_object()) {
    throw Error(ErrorCode::kParse, "cost model must be a JSON object");
  }
  CostModelConfig config;
  auto read = [&](const char* key, auto& slot) {
    if (doc.contains(key)) {
      slot = Field<std::decay_t<decltype(slot)>>(doc, key, ErrorCode::kParse,
                                                 "cost model");
    }
  };
  read("node_base_cycles", config.node_base_cycles);
  read("taken_penalty_cycles", config.taken_penalty_cycles);
  read("line_size_nodes", config.line_size_nodes);
  read("miss_cycles", config.miss_cycles);
  read("constant_overhead", config.constant_overhead);
  CheckCostModelConfig(config);
  return config;
}

std::vector<PathSample> ParseSamplesCsv(std::string_view text) {
  std::vector<PathSample> samples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string where = "samples line " + std::to_string(line_no);
    if (!seen_header) {
      if (line != "depth,taken,wcet") {
        throw Error(ErrorCode::kParse,
                    where + ": expected header 'depth,taken,wcet'");
      }
      seen_header = true;
      continue;
    }
    std::string_view fields[3];
    std::size_t start = 0;
    int count = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (count < 3) fields[count] = line.substr(start, i - start);
        ++count;
        start = i + 1;
      }
    }
    if (count != 3) {
      throw Error(ErrorCode::kParse, where + ": expected 3 fields, got " +
                                         std::to_string(count));
    }
    PathSample s;
    auto parse = [&](std::string_view field, auto& out, const char* name) {
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), out);
      if (field.empty() || ec != std::errc() ||
          ptr != field.data() + field.size()) {
        throw Error(ErrorCode::kParse, where + ": bad " + name + " value '" +
                                           std::string(field) + "'");
      }
    };
    parse(fields[0], s.depth, "depth");
    parse(fields[1], s.taken, "taken");
    parse(fields[2], s.wcet, "wcet");
    samples.push_back(s);
  }
  return samples;
}

std::string SamplesToCsv(std::span<const PathSample> samples) {
  std::string out = "depth,taken,wcet\n";
  for (const PathSample& s : samples) {
    out += std::to_string(s.depth);
    out += ',';
    out += std::to_string(s.taken);
    out += ',';
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), s.wcet);
    out.append(buf, res.ptr);
    out += '\n';
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace wcdt
