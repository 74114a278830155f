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

#include "wcdt/fitting.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wcdt/error.h"

namespace wcdt {
namespace {

void CheckSamples(std::span<const PathSample> samples) {
  if (samples.size() < 3) {
    throw Error(ErrorCode::kTooFewSamples,
                "need at least 3 samples, got " +
                    std::to_string(samples.size()));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const PathSample& s = samples[i];
    if (s.depth < 0 || s.taken < 0 || s.taken > s.depth ||
        !(s.wcet > 0.0) || !std::isfinite(s.wcet)) {
      throw Error(ErrorCode::kInvalidSample,
                  "sample " + std::to_string(i) +
                      " violates 0 <= taken <= depth, wcet > 0");
    }
  }
}

// Solves the normal equations for `design` after checking that its
// column-normalized singular values stay above kRankTolerance.
Eigen::VectorXd SolveLeastSquares(const Eigen::MatrixXd& design,
                                  const Eigen::VectorXd& response) {
  const Eigen::VectorXd norms = design.colwise().norm().transpose();
  if ((norms.array() == 0.0).any()) {
    throw Error(ErrorCode::kUnderdetermined, "design has an all-zero column");
  }
  const Eigen::MatrixXd scaled = design * norms.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd gram = scaled.transpose() * scaled;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double smallest = std::sqrt(std::max(0.0, eig.eigenvalues().minCoeff()));
  if (smallest < kRankTolerance) {
    throw Error(ErrorCode::kUnderdetermined,
                "design matrix is rank deficient (taken count collinear with "
                "depth, or no variation in the regressors)");
  }
  const Eigen::VectorXd scaled_solution =
      gram.ldlt().solve(scaled.transpose() * response);
  return scaled_solution.cwiseQuotient(norms);
}

// Counts inversions of `v` while merge-sorting it. Equal elements are not
// inversions.
std::int64_t CountInversions(std::vector<double>& v) {
  std::vector<double> buffer(v.size());
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
          buffer[k++] = v[i++];
        } else {
          inversions += static_cast<std::int64_t>(mid - i);
          buffer[k++] = v[j++];
        }
      }
      while (i < mid) buffer[k++] = v[i++];
      while (j < hi) buffer[k++] = v[j++];
    }
    std::swap(v, buffer);
  }
  return inversions;
}

// Sum over runs of equal adjacent values of run*(run-1)/2.
template <typename Eq>
std::int64_t TiedPairs(std::size_t n, Eq equal) {
  std::int64_t pairs = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (equal(i - 1, i)) {
      ++run;
    } else {
      pairs += run * (run - 1) / 2;
      run = 1;
    }
  }
  return pairs + run * (run - 1) / 2;
}

}  // namespace

FitResult Fit(std::span<const PathSample> samples, int target_depth) {
  CheckSamples(samples);
  const auto n = static_cast<Eigen::Index>(samples.size());
  const bool depth_constant = std::all_of(
      samples.begin(), samples.end(),
      [&](const PathSample& s) { return s.depth == samples.front().depth; });

  Eigen::VectorXd response(n);
  Eigen::MatrixXd design(n, depth_constant ? 2 : 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const PathSample& s = samples[i];
    response(i) = s.wcet;
    if (depth_constant) {
      design.row(i) << 1.0, s.taken;
    } else {
      design.row(i) << 1.0, s.depth, s.taken;
    }
  }
  const Eigen::VectorXd beta = SolveLeastSquares(design, response);

  FitResult result;
  result.model.target_depth = target_depth;
  result.model.sigma = beta(0);
  if (depth_constant) {
    // sigma absorbs the shared depth; delta is not identifiable.
    result.model.delta = 0.0;
    result.model.gamma = beta(1);
  } else {
    result.model.delta = beta(1);
    result.model.gamma = beta(2);
  }

  std::vector<double> predicted(samples.size());
  std::vector<double> actual(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    predicted[i] = EstimatePath(
        result.model, PathStats{0, samples[i].depth, samples[i].taken});
    actual[i] = samples[i].wcet;
  }
  result.r2 = RSquared(predicted, actual);
  result.kendall_tau = KendallTau(predicted, actual);
  result.n_samples = samples.size();
  return result;
}

double RSquared(std::span<const double> predicted,
                std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "predicted and actual differ in length");
  }
  if (actual.empty()) throw Error(ErrorCode::kEmpty, "no values");
  const double mean =
      std::accumulate(actual.begin(), actual.end(), 0.0) / actual.size();
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ss_res += (actual[i] - predicted[i]) * (actual[i] - predicted[i]);
    ss_tot += (actual[i] - mean) * (actual[i] - mean);
  }
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

double KendallTau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "inputs differ in length");
  }
  if (a.size() < 2) {
    throw Error(ErrorCode::kTooShort, "need at least two observations");
  }
  const std::size_t n = a.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i] != a[j] ? a[i] < a[j] : b[i] < b[j];
  });

  const auto n64 = static_cast<std::int64_t>(n);
  const std::int64_t total = n64 * (n64 - 1) / 2;
  const std::int64_t ties_a = TiedPairs(n, [&](std::size_t i, std::size_t j) {
    return a[order[i]] == a[order[j]];
  });
  const std::int64_t ties_ab =
      TiedPairs(n, [&](std::size_t i, std::size_t j) {
        return a[order[i]] == a[order[j]] && b[order[i]] == b[order[j]];
      });

  std::vector<double> sorted_b(n);
  for (std::size_t i = 0; i < n; ++i) sorted_b[i] = b[order[i]];
  const std::int64_t swaps = CountInversions(sorted_b);
  const std::int64_t ties_b = TiedPairs(
      n, [&](std::size_t i, std::size_t j) { return sorted_b[i] == sorted_b[j]; });

  if (ties_a == total || ties_b == total) return 0.0;
  const double s = static_cast<double>(total - ties_a - ties_b + ties_ab) -
                   2.0 * static_cast<double>(swaps);
  const double tau = s / std::sqrt(static_cast<double>(total - ties_a) *
                                   static_cast<double>(total - ties_b));
  return std::clamp(tau, -1.0, 1.0);
}

}  // namespace wcdt
