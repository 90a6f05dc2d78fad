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

#ifndef BRIDGEWATCH_IFOREST_HPP_
#define BRIDGEWATCH_IFOREST_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bridgewatch/core.hpp"
#include "bridgewatch/random.hpp"

namespace bridgewatch {

// Randomized binary partition tree stored as a node arena. External nodes
// have feature == -1 and record how many training rows reached them.
class ITree {
 public:
  struct Node {
    int32_t feature = -1;
    double split_value = 0.0;
    uint32_t left = 0;
    uint32_t right = 0;
    uint32_t size = 0;

    bool is_external() const { return feature < 0; }
  };

  explicit ITree(size_t dims = 0) : dims_(dims) {}

  uint32_t AddExternal(uint32_t size);
  uint32_t AddInternal(int32_t feature, double split_value, uint32_t left,
                       uint32_t right);
  void set_root(uint32_t root) { root_ = root; }

  const Node& root() const { return nodes_[root_]; }
  const Node& node(uint32_t id) const { return nodes_[id]; }
  uint32_t root_id() const { return root_; }
  size_t node_count() const { return nodes_.size(); }
  size_t dims() const { return dims_; }

 private:
  size_t dims_;
  uint32_t root_ = 0;
  std::vector<Node> nodes_;
};

// Average path length of an unsuccessful binary search over n points:
// c(n) = 2 H(n-1) - 2 (n-1) / n with H(i) ~ ln(i) + Euler's constant,
// c(2) = 1 and c(n <= 1) = 0.
double AveragePathLength(double n);

// Grows one tree over `rows` (indices into `matrix`, reordered in place).
// Stops at height_limit, at a single row, or when no column varies.
ITree BuildITree(const FeatureMatrix& matrix, std::span<size_t> rows,
                 int height_limit, Rng& rng);

// Edges from the root to the reached leaf plus c(leaf size). Throws
// InvalidArgument when point.size() differs from the tree's dimension.
double PathLength(const ITree& tree, std::span<const double> point);

struct IsolationForestParams {
  int n_estimators = 1000;
  double contamination = 0.0001;
  size_t subsample_size = 256;
  uint64_t seed = 0;
  // Threads for fitting and scoring; -1 uses every core. Results do not
  // depend on it.
  int n_jobs = -1;

  void Validate() const;
};

class IsolationForest {
 public:
  // Each tree sees its own uniform subsample drawn with a seed derived from
  // (params.seed, tree index). Throws InvalidArgument on an empty matrix.
  static IsolationForest Fit(const FeatureMatrix& matrix,
                             const IsolationForestParams& params);

  // 2^(-E[h(x)] / c(psi)); larger is more anomalous.
  double Score(std::span<const double> point) const;

  // Scores every row; normalized with more-is-anomalous orientation.
  ScoreSeries ScoreMatrix(const FeatureMatrix& matrix) const;

  const std::vector<ITree>& trees() const { return trees_; }
  size_t subsample_size() const { return subsample_size_; }
  int height_limit() const { return height_limit_; }
  int n_estimators() const { return static_cast<int>(trees_.size()); }
  double contamination() const { return params_.contamination; }
  uint64_t master_seed() const { return params_.seed; }

 private:
  IsolationForestParams params_;
  size_t subsample_size_ = 0;
  int height_limit_ = 0;
  std::vector<ITree> trees_;
};

// Indices of the ceil(contamination * n) highest normalized scores, in rank
// order; ties go to the earlier timestamp. Requires 0 < contamination < 1.
std::vector<size_t> ThresholdByContamination(const ScoreSeries& scores,
                                             double contamination);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_IFOREST_HPP_
