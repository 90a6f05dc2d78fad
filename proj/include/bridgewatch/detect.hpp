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

#ifndef BRIDGEWATCH_DETECT_HPP_
#define BRIDGEWATCH_DETECT_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bridgewatch/autoencoder.hpp"
#include "bridgewatch/core.hpp"
#include "bridgewatch/dbscan.hpp"
#include "bridgewatch/iforest.hpp"
#include "bridgewatch/synthgen.hpp"

namespace bridgewatch {

enum class DetectorKind { kIsolationForest, kAutoencoder, kDbscan };

std::string_view DetectorName(DetectorKind kind);
// Accepts "iforest", "autoencoder" and "dbscan".
DetectorKind ParseDetectorKind(std::string_view name);

using ParamList = std::vector<std::pair<std::string, std::string>>;

struct PipelineConfig {
  DetectorKind detector = DetectorKind::kDbscan;
  IsolationForestParams iforest;
  TrainOptions autoencoder;
  DbscanParams dbscan;
  size_t n_neighbors = 2;

  Duration resample_window = std::chrono::seconds{60};
  size_t top_k = 5;
  uint64_t seed = 0;
  int n_jobs = -1;
  // When set, rows whose normalized score is >= threshold are flagged,
  // overriding the detector's own rule.
  std::optional<double> threshold;

  // Sets one parameter from text. Common keys: window (seconds), top_k,
  // seed, n_jobs, threshold. Detector keys:
  //   iforest:     n_estimators, contamination, subsample_size
  //   autoencoder: epochs, batch_size, learning_rate, beta1, beta2, epsilon
  //   dbscan:      eps, min_samples, n_neighbors
  // Throws InvalidArgument for unknown keys, keys of another detector, and
  // unparseable or out-of-range values.
  void Set(std::string_view key, std::string_view value);

  // Detector parameters in a fixed order, formatted for reports.
  ParamList DetectorParams() const;

  void Validate() const;
};

struct RankEntry {
  size_t rank = 0;  // 1-based
  Instant timestamp;
  double score = 0.0;
  size_t row = std::numeric_limits<size_t>::max();
};

// Every scored row once, by descending normalized score; ties go to the
// earlier timestamp, then the lower row index.
struct AnomalyRanking {
  std::vector<RankEntry> entries;
};

AnomalyRanking Rank(const ScoreSeries& scores);

// drop_missing -> resample -> min-max scale. Errors carry the failing stage.
struct PreprocessResult {
  FeatureMatrix matrix;
  size_t dropped_rows = 0;
};
PreprocessResult Preprocess(const SensorFrame& frame, Duration window);

struct PipelineResult {
  ScoreSeries scores;
  AnomalyRanking ranking;
  // Rows flagged by the detector's decision rule, in rank order.
  std::vector<size_t> flagged;
  size_t dropped_rows = 0;
  std::optional<AutoencoderModel> model;
};

// Scores an already preprocessed matrix with the configured detector.
PipelineResult ScoreMatrix(const FeatureMatrix& matrix, const PipelineConfig& config);

// Full pipeline; deterministic given config.seed.
PipelineResult RunPipeline(const SensorFrame& frame, const PipelineConfig& config);

struct EvalReport {
  std::optional<size_t> hit_rank;
  bool hit_at_k = false;
  size_t top_k = 0;
  std::vector<RankEntry> top_entries;
  std::optional<GroundTruth> truth;
  std::string detector;
  ParamList params;
  std::optional<size_t> rows;
  std::optional<size_t> flagged;
};

// An entry hits when |timestamp - event_time| <= tolerance. Throws on an
// empty ranking or top_k == 0.
EvalReport Evaluate(const AnomalyRanking& ranking, const GroundTruth& truth,
                    size_t top_k);

// Report without a ground truth: only the top entries.
EvalReport Summarize(const AnomalyRanking& ranking, size_t top_k);

inline constexpr size_t kMaxGridCombinations = 10000;

// Axes are kept sorted by key; values keep their given order.
struct ParamGrid {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;

  void Add(std::string key, std::vector<std::string> values);
  size_t CombinationCount() const;
  // Combination `index` in Cartesian order, last axis fastest.
  ParamList Combination(size_t index) const;
};

struct GridRow {
  ParamList params;
  EvalReport report;
  // Normalized score gap between ranks 1 and 2.
  double margin = 0.0;
};

struct GridSearchResult {
  std::vector<GridRow> table;  // grid order
  size_t best_index = 0;
};

// Runs every combination on top of `base` and picks the best by hit rank
// (missing hits last), then larger margin, then lexicographically smaller
// parameter values (numeric where both parse as numbers).
GridSearchResult GridSearch(const SensorFrame& frame, const PipelineConfig& base,
                            const ParamGrid& grid, const GroundTruth& truth);

// True when row `a` beats row `b` under the GridSearch objective.
bool GridRowBetter(const GridRow& a, const GridRow& b);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_DETECT_HPP_
