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

#ifndef WCDT_ERROR_H_
#define WCDT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wcdt {

enum class ErrorCode {
  kMalformedTree,
  kDimensionMismatch,
  kLabelingMismatch,
  kEmptyTable,
  kInvalidModel,
  kMissingProbabilities,
  kTooLarge,
  kUnderdetermined,
  kTooFewSamples,
  kInvalidSample,
  kLengthMismatch,
  kEmpty,
  kTooShort,
  kInfeasiblePath,
  kNotALeaf,
  kInvalidIdentifier,
  kInvalidConfig,
  kParse,
  kIo,
};

// Stable name used in messages and by the Python bindings.
std::string_view ErrorCodeName(ErrorCode code);

// All domain failures raised by the library. `details()` carries the
// individual violations for kMalformedTree and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {});

  ErrorCode code() const { return code_; }
  const std::vector<std::string>& details() const { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace wcdt

#endif  // WCDT_ERROR_H_
