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

#include "bridgewatch/iforest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bridgewatch/error.hpp"
#include "bridgewatch/parallel.hpp"

namespace bridgewatch {
namespace {

constexpr double kEulerGamma = 0.5772156649;

uint32_t Grow(ITree& tree, const FeatureMatrix& matrix, std::span<size_t> rows,
              int height, int limit, Rng& rng) {
  const auto size = static_cast<uint32_t>(rows.size());
  if (rows.size() <= 1 || height >= limit) return tree.AddExternal(size);

  const size_t cols = matrix.cols();
  std::vector<double> lo(cols, std::numeric_limits<double>::infinity());
  std::vector<double> hi(cols, -std::numeric_limits<double>::infinity());
  for (size_t r : rows) {
    for (size_t c = 0; c < cols; ++c) {
      const double v = matrix.at(r, c);
      lo[c] = std::min(lo[c], v);
      hi[c] = std::max(hi[c], v);
    }
  }
  std::vector<size_t> splittable;
  for (size_t c = 0; c < cols; ++c) {
    if (hi[c] > lo[c]) splittable.push_back(c);
  }
  if (splittable.empty()) return tree.AddExternal(size);

  std::uniform_int_distribution<size_t> pick(0, splittable.size() - 1);
  const size_t feature = splittable[pick(rng)];
  std::uniform_real_distribution<double> draw(lo[feature], hi[feature]);
  double split = draw(rng);
  // Open interval: a draw on the lower bound would leave the left side empty.
  while (!(split > lo[feature] && split < hi[feature])) split = draw(rng);

  const auto mid = std::partition(rows.begin(), rows.end(), [&](size_t r) {
    return matrix.at(r, feature) < split;
  });
  const size_t n_left = static_cast<size_t>(mid - rows.begin());
  const uint32_t left = Grow(tree, matrix, rows.first(n_left), height + 1, limit, rng);
  const uint32_t right =
      Grow(tree, matrix, rows.subspan(n_left), height + 1, limit, rng);
  return tree.AddInternal(static_cast<int32_t>(feature), split, left, right);
}

double PathLengthUnchecked(const ITree& tree, std::span<const double> point) {
  uint32_t id = tree.root_id();
  double edges = 0.0;
  while (true) {
    const ITree::Node& n = tree.node(id);
    if (n.is_external()) return edges + AveragePathLength(n.size);
    id = point[static_cast<size_t>(n.feature)] < n.split_value ? n.left : n.right;
    edges += 1.0;
  }
}

}  // namespace

uint32_t ITree::AddExternal(uint32_t size) {
  Node n;
  n.size = size;
  nodes_.push_back(n);
  return root_ = static_cast<uint32_t>(nodes_.size() - 1);
}

uint32_t ITree::AddInternal(int32_t feature, double split_value, uint32_t left,
                            uint32_t right) {
  Node n;
  n.feature = feature;
  n.split_value = split_value;
  n.left = left;
  n.right = right;
  n.size = nodes_[left].size + nodes_[right].size;
  nodes_.push_back(n);
  return root_ = static_cast<uint32_t>(nodes_.size() - 1);
}

double AveragePathLength(double n) {
  if (n <= 1.0) return 0.0;
  if (n == 2.0) return 1.0;
  return 2.0 * (std::log(n - 1.0) + kEulerGamma) - 2.0 * (n - 1.0) / n;
}

ITree BuildITree(const FeatureMatrix& matrix, std::span<size_t> rows,
                 int height_limit, Rng& rng) {
  ITree tree(matrix.cols());
  tree.set_root(Grow(tree, matrix, rows, 0, height_limit, rng));
  return tree;
}

double PathLength(const ITree& tree, std::span<const double> point) {
  if (point.size() != tree.dims()) {
    throw InvalidArgumentError("point has " + std::to_string(point.size()) +
                               " features, tree expects " +
                               std::to_string(tree.dims()));
  }
  return PathLengthUnchecked(tree, point);
}

void IsolationForestParams::Validate() const {
  if (n_estimators < 1) throw InvalidArgumentError("n_estimators must be >= 1");
  if (subsample_size < 1) throw InvalidArgumentError("subsample_size must be >= 1");
  if (!(contamination > 0.0 && contamination < 1.0)) {
    throw InvalidArgumentError("contamination must lie in (0, 1)");
  }
}

IsolationForest IsolationForest::Fit(const FeatureMatrix& matrix,
                                     const IsolationForestParams& params) {
  params.Validate();
  if (matrix.empty()) {
    throw InvalidArgumentError("cannot fit an isolation forest on no rows");
  }
  IsolationForest forest;
  forest.params_ = params;
  forest.subsample_size_ = std::min(params.subsample_size, matrix.rows());
  forest.height_limit_ = static_cast<int>(
      std::ceil(std::log2(static_cast<double>(forest.subsample_size_))));
  forest.trees_.resize(static_cast<size_t>(params.n_estimators));

  std::vector<size_t> all(matrix.rows());
  std::iota(all.begin(), all.end(), size_t{0});
  ParallelFor(forest.trees_.size(), params.n_jobs, [&](size_t begin, size_t end) {
    std::vector<size_t> sample;
    for (size_t t = begin; t < end; ++t) {
      Rng rng(DeriveSeed(params.seed, t));
      sample.clear();
      if (forest.subsample_size_ == all.size()) {
        sample = all;
      } else {
        std::sample(all.begin(), all.end(), std::back_inserter(sample),
                    forest.subsample_size_, rng);
      }
      forest.trees_[t] = BuildITree(matrix, sample, forest.height_limit_, rng);
    }
  });
  return forest;
}

double IsolationForest::Score(std::span<const double> point) const {
  double total = 0.0;
  for (const ITree& tree : trees_) total += PathLength(tree, point);
  const double mean = total / static_cast<double>(trees_.size());
  const double norm = AveragePathLength(static_cast<double>(subsample_size_));
  if (norm == 0.0) return 0.5;
  return std::exp2(-mean / norm);
}

ScoreSeries IsolationForest::ScoreMatrix(const FeatureMatrix& matrix) const {
  if (!trees_.empty() && matrix.cols() != trees_.front().dims()) {
    throw InvalidArgumentError("matrix width does not match the forest");
  }
  std::vector<double> raw(matrix.rows());
  ParallelFor(matrix.rows(), params_.n_jobs, [&](size_t begin, size_t end) {
    for (size_t r = begin; r < end; ++r) raw[r] = Score(matrix.row(r));
  });
  return MakeScoreSeries(matrix.timestamps(), std::move(raw),
                         Orientation::kMoreIsAnomalous);
}

std::vector<size_t> ThresholdByContamination(const ScoreSeries& scores,
                                             double contamination) {
  if (!(contamination > 0.0 && contamination < 1.0)) {
    throw InvalidArgumentError("contamination must lie in (0, 1)");
  }
  const size_t n = scores.normalized_scores.size();
  // The slack keeps products like 0.1 * 30 from rounding up to 4.
  const double expected = contamination * static_cast<double>(n);
  const size_t k = std::min(
      n, static_cast<size_t>(std::ceil(expected - 1e-9 * std::max(1.0, expected))));
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  const auto& s = scores.normalized_scores;
  const auto& ts = scores.timestamps;
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end(),
                    [&](size_t a, size_t b) {
                      if (s[a] != s[b]) return s[a] > s[b];
                      if (ts[a] != ts[b]) return ts[a] < ts[b];
                      return a < b;
                    });
  order.resize(k);
  return order;
}

}  // namespace bridgewatch
