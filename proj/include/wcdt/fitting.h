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

// Least-squares fitting of the surrogate parameters from per-path timings,
// plus the two quality metrics reported alongside each fit.

#ifndef WCDT_FITTING_H_
#define WCDT_FITTING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "wcdt/surrogate.h"

namespace wcdt {

struct PathSample {
  int depth = 0;
  int taken = 0;
  double wcet = 0.0;

  bool operator==(const PathSample&) const = default;
};

struct FitResult {
  SurrogateModel model;
  double r2 = 0.0;
  double kendall_tau = 0.0;
  std::size_t n_samples = 0;
};

// Rank tolerance on the smallest singular value of the column-normalized
// design matrix.
inline constexpr double kRankTolerance = 1e-9;

// Fits wcet ~ sigma + delta * d + gamma * t by ordinary least squares. When
// every sample has the same depth, delta is pinned to 0 and only sigma and
// gamma are fitted. `target_depth` is copied into the returned model.
//
// Throws Error{kTooFewSamples} for fewer than 3 samples,
// Error{kInvalidSample} for t > d, d < 0 or wcet <= 0, and
// Error{kUnderdetermined} for any other rank deficiency.
FitResult Fit(std::span<const PathSample> samples, int target_depth = 0);

// 1 - SS_res / SS_tot. When the actual values are constant, returns 1 for a
// perfect prediction and 0 otherwise.
double RSquared(std::span<const double> predicted,
                std::span<const double> actual);

// Kendall's tau-b, computed in O(n log n). Returns 0 when either input is
// constant. Throws Error{kLengthMismatch} or Error{kTooShort} (n < 2).
double KendallTau(std::span<const double> a, std::span<const double> b);

}  // namespace wcdt

#endif  // WCDT_FITTING_H_
