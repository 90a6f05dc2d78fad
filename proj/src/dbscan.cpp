/*
 * Copyright 2026 The bridgewatch Authors.
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

#include "bridgewatch/dbscan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bridgewatch/error.hpp"
#include "bridgewatch/parallel.hpp"

namespace bridgewatch {
namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return sum;
}

bool Within(std::span<const double> a, std::span<const double> b, double eps) {
  return std::sqrt(SquaredDistance(a, b)) <= eps;
}

}  // namespace

void DbscanParams::Validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidArgumentError("eps must be positive");
  }
  if (min_samples < 1) throw InvalidArgumentError("min_samples must be >= 1");
}

std::vector<size_t> RegionQuery(const FeatureMatrix& matrix, size_t i, double eps) {
  if (i >= matrix.rows()) {
    throw InvalidArgumentError("row index " + std::to_string(i) + " out of range");
  }
  std::vector<size_t> out;
  const auto p = matrix.row(i);
  for (size_t j = 0; j < matrix.rows(); ++j) {
    if (Within(p, matrix.row(j), eps)) out.push_back(j);
  }
  return out;
}

ClusterLabeling Cluster(const FeatureMatrix& matrix, const DbscanParams& params,
                        int n_jobs) {
  params.Validate();
  if (matrix.empty()) throw InvalidArgumentError("cannot cluster an empty matrix");
  const size_t n = matrix.rows();

  // Core status is a pure per-row property; counting stops at min_samples.
  std::vector<char> core(n, 0);
  ParallelFor(n, n_jobs, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const auto p = matrix.row(i);
      size_t count = 0;
      for (size_t j = 0; j < n && count < params.min_samples; ++j) {
        if (Within(p, matrix.row(j), params.eps)) ++count;
      }
      core[i] = count >= params.min_samples;
    }
  });

  ClusterLabeling out;
  out.labels.assign(n, kNoiseLabel);
  out.kinds.assign(n, PointKind::kNoise);

  // Rows not yet in any cluster, in index order. Assigned rows never move,
  // so expansion only has to scan this shrinking set.
  std::vector<size_t> unassigned(n);
  for (size_t i = 0; i < n; ++i) unassigned[i] = i;

  std::vector<size_t> frontier;
  std::vector<size_t> keep;
  for (size_t seed = 0; seed < n; ++seed) {
    if (!core[seed] || out.labels[seed] != kNoiseLabel) continue;
    const int id = out.cluster_count++;
    out.labels[seed] = id;
    frontier.assign(1, seed);
    while (!frontier.empty()) {
      const size_t p = frontier.back();
      frontier.pop_back();
      const auto row = matrix.row(p);
      keep.clear();
      for (size_t j : unassigned) {
        if (out.labels[j] != kNoiseLabel) continue;
        if (Within(row, matrix.row(j), params.eps)) {
          out.labels[j] = id;
          if (core[j]) frontier.push_back(j);
        } else {
          keep.push_back(j);
        }
      }
      unassigned.swap(keep);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (core[i]) out.kinds[i] = PointKind::kCore;
    else if (out.labels[i] != kNoiseLabel) out.kinds[i] = PointKind::kBorder;
  }
  return out;
}

ScoreSeries KnnDistanceScores(const FeatureMatrix& matrix, size_t n_neighbors,
                              int n_jobs) {
  if (n_neighbors < 1) throw InvalidArgumentError("n_neighbors must be >= 1");
  const size_t n = matrix.rows();
  if (n <= n_neighbors) {
    throw InvalidArgumentError("need more than n_neighbors=" +
                               std::to_string(n_neighbors) + " rows, got " +
                               std::to_string(n));
  }
  std::vector<double> raw(n);
  ParallelFor(n, n_jobs, [&](size_t begin, size_t end) {
    // Sorted ascending; holds the k smallest squared distances seen so far.
    std::vector<double> best;
    best.reserve(n_neighbors + 1);
    for (size_t i = begin; i < end; ++i) {
      best.clear();
      const auto p = matrix.row(i);
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d2 = SquaredDistance(p, matrix.row(j));
        if (best.size() == n_neighbors && d2 >= best.back()) continue;
        best.insert(std::upper_bound(best.begin(), best.end(), d2), d2);
        if (best.size() > n_neighbors) best.pop_back();
      }
      double sum = 0.0;
      for (double d2 : best) sum += std::sqrt(d2);
      raw[i] = sum / static_cast<double>(n_neighbors);
    }
  });
  return MakeScoreSeries(matrix.timestamps(), std::move(raw),
                         Orientation::kMoreIsAnomalous);
}

DbscanDetection DetectDbscan(const FeatureMatrix& matrix, const DbscanParams& params,
                             size_t n_neighbors, int n_jobs) {
  DbscanDetection out;
  out.labeling = Cluster(matrix, params, n_jobs);
  out.scores = KnnDistanceScores(matrix, n_neighbors, n_jobs);
  for (size_t i = 0; i < matrix.rows(); ++i) {
    if (out.labeling.kinds[i] != PointKind::kNoise) {
      out.scores.normalized_scores[i] = 0.0;
    }
  }
  return out;
}

}  // namespace bridgewatch
