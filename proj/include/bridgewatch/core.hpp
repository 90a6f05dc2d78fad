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

#ifndef BRIDGEWATCH_CORE_HPP_
#define BRIDGEWATCH_CORE_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bridgewatch/time.hpp"

namespace bridgewatch {

// Timestamped multi-channel measurement table. Values are stored row-major;
// a missing measurement is stored as NaN, so any non-finite cell reads back
// as missing.
class SensorFrame {
 public:
  static constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

  SensorFrame() = default;

  // Throws InvalidArgument when values.size() != rows * channels, channel
  // names repeat, or timestamps decrease.
  SensorFrame(std::vector<std::string> channels, std::vector<Instant> timestamps,
              std::vector<double> values);

  size_t rows() const { return timestamps_.size(); }
  size_t channel_count() const { return channels_.size(); }
  bool empty() const { return timestamps_.empty(); }

  const std::vector<std::string>& channels() const { return channels_; }
  const std::vector<Instant>& timestamps() const { return timestamps_; }
  std::span<const double> values() const { return values_; }

  std::span<const double> row(size_t r) const {
    return std::span<const double>(values_).subspan(r * channels_.size(),
                                                    channels_.size());
  }
  std::optional<double> value(size_t r, size_t c) const;
  bool is_missing(size_t r, size_t c) const;

  // Index of `name`, or nullopt.
  std::optional<size_t> channel_index(const std::string& name) const;

 private:
  std::vector<std::string> channels_;
  std::vector<Instant> timestamps_;
  std::vector<double> values_;
};

struct ScaleParams {
  double min = 0.0;
  double max = 0.0;
};

// Dense detector input, row-aligned to timestamps. `scale_params` is empty
// until the matrix has been through FitMinMax.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<Instant> timestamps, std::vector<std::string> columns,
                std::vector<double> data,
                std::vector<ScaleParams> scale_params = {});

  // Rejects frames with missing entries.
  static FeatureMatrix FromFrame(const SensorFrame& frame);

  // Convenience for tests and tools that work without timestamps: rows are
  // stamped one second apart from the epoch and columns named x0, x1, ...
  static FeatureMatrix FromRows(const std::vector<std::vector<double>>& rows);

  size_t rows() const { return timestamps_.size(); }
  size_t cols() const { return columns_.size(); }
  bool empty() const { return timestamps_.empty(); }

  const std::vector<Instant>& timestamps() const { return timestamps_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<ScaleParams>& scale_params() const { return scale_params_; }
  std::span<const double> data() const { return data_; }

  std::span<const double> row(size_t r) const {
    return std::span<const double>(data_).subspan(r * columns_.size(),
                                                  columns_.size());
  }
  double at(size_t r, size_t c) const { return data_[r * columns_.size() + c]; }

 private:
  std::vector<Instant> timestamps_;
  std::vector<std::string> columns_;
  std::vector<double> data_;
  std::vector<ScaleParams> scale_params_;
};

// Maps every column through (x - min) / (max - min). Constant columns map to
// 0.0. Throws InvalidArgument on an empty matrix.
FeatureMatrix FitMinMax(const FeatureMatrix& matrix);

enum class Orientation {
  kMoreIsAnomalous,
  kLessIsAnomalous,
};

// Per-row anomaly scores. After normalization larger always means more
// anomalous; `orientation` records what the raw scores meant.
struct ScoreSeries {
  std::vector<Instant> timestamps;
  std::vector<double> raw_scores;
  std::vector<double> normalized_scores;
  Orientation orientation = Orientation::kMoreIsAnomalous;
};

// Min-max normalization to [0, 1], reflected for kLessIsAnomalous. Constant
// input gives all zeros. Throws InvalidArgument on empty input.
std::vector<double> NormalizeScores(std::span<const double> raw,
                                    Orientation orientation);

ScoreSeries MakeScoreSeries(std::vector<Instant> timestamps,
                            std::vector<double> raw, Orientation orientation);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_CORE_HPP_
