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

// File formats: tree, labeling, model table and fit result JSON; path
// sample CSV; cost model JSON.
//
// Parsing functions throw Error{kParse} for syntactically invalid input and
// the owning module's error (kMalformedTree, kInvalidModel, ...) for
// well-formed documents that violate a domain invariant. Serialization is
// deterministic and doubles are written in shortest round-trip form.

#ifndef WCDT_IO_H_
#define WCDT_IO_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcdt/fitting.h"
#include "wcdt/surrogate.h"
#include "wcdt/timing_oracle.h"
#include "wcdt/tree.h"

namespace wcdt {

DecisionTree ParseTreeJson(std::string_view text);
std::string TreeToJson(const DecisionTree& tree);

Labeling ParseLabelingJson(std::string_view text);
std::string LabelingToJson(const Labeling& labeling);

ModelTable ParseModelTableJson(std::string_view text);
std::string ModelTableToJson(const ModelTable& table);

std::string FitResultToJson(const FitResult& fit);

CostModelConfig ParseCostModelJson(std::string_view text);

// Header "depth,taken,wcet" followed by one sample per row. An empty input
// yields no samples; malformed rows throw Error{kParse} naming the line.
std::vector<PathSample> ParseSamplesCsv(std::string_view text);
std::string SamplesToCsv(std::span<const PathSample> samples);

// Whole-file helpers; failures throw Error{kIo}.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace wcdt

#endif  // WCDT_IO_H_
