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

#ifndef BRIDGEWATCH_DBSCAN_HPP_
#define BRIDGEWATCH_DBSCAN_HPP_

#include <cstddef>
#include <vector>

#include "bridgewatch/core.hpp"

namespace bridgewatch {

struct DbscanParams {
  double eps = 0.8;
  // Neighbourhood size, counting the point itself, that makes a core point.
  size_t min_samples = 3;

  void Validate() const;
};

enum class PointKind { kCore, kBorder, kNoise };

inline constexpr int kNoiseLabel = -1;

struct ClusterLabeling {
  std::vector<int> labels;  // cluster id >= 0, or kNoiseLabel
  std::vector<PointKind> kinds;
  int cluster_count = 0;
};

// Every j (i included) with Euclidean distance(row i, row j) <= eps, in
// ascending index order.
std::vector<size_t> RegionQuery(const FeatureMatrix& matrix, size_t i, double eps);

// Classical DBSCAN. Rows are scanned in index order and each unassigned core
// row seeds the next cluster id; a border row joins the first cluster that
// reaches it. n_jobs only parallelizes the core-point pass.
ClusterLabeling Cluster(const FeatureMatrix& matrix, const DbscanParams& params,
                        int n_jobs = 1);

// Raw score is the mean distance to the n_neighbors nearest other rows;
// normalized with more-is-anomalous orientation. Requires rows > n_neighbors.
ScoreSeries KnnDistanceScores(const FeatureMatrix& matrix, size_t n_neighbors,
                              int n_jobs = 1);

struct DbscanDetection {
  ClusterLabeling labeling;
  // raw_scores: kNN distances for every row. normalized_scores: the
  // normalized kNN distance for noise rows, 0 elsewhere.
  ScoreSeries scores;
};

DbscanDetection DetectDbscan(const FeatureMatrix& matrix, const DbscanParams& params,
                             size_t n_neighbors, int n_jobs = 1);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_DBSCAN_HPP_
