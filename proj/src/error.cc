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

#include "wcdt/error.h"

namespace wcdt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedTree: return "MalformedTree";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLabelingMismatch: return "LabelingMismatch";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kMissingProbabilities: return "MissingProbabilities";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kUnderdetermined: return "Underdetermined";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kInvalidSample: return "InvalidSample";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmpty: return "Empty";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kInfeasiblePath: return "InfeasiblePath";
    case ErrorCode::kNotALeaf: return "NotALeaf";
    case ErrorCode::kInvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string Compose(ErrorCode code, const std::string& message,
                    const std::vector<std::string>& details) {
  std::string out(ErrorCodeName(code));
  out += ": ";
  out += message;
  for (const auto& d : details) {
    out += "\n  - ";
    out += d;
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::string> details)
    : std::runtime_error(Compose(code, message, details)),
      code_(code),
      details_(std::move(details)) {}

}  // namespace wcdt
