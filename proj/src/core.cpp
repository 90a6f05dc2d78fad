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

#include "bridgewatch/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "bridgewatch/error.hpp"

namespace bridgewatch {

SensorFrame::SensorFrame(std::vector<std::string> channels,
                         std::vector<Instant> timestamps,
                         std::vector<double> values)
    : channels_(std::move(channels)),
      timestamps_(std::move(timestamps)),
      values_(std::move(values)) {
  if (values_.size() != timestamps_.size() * channels_.size()) {
    throw InvalidArgumentError("frame has " + std::to_string(values_.size()) +
                               " values for " +
                               std::to_string(timestamps_.size()) + " rows x " +
                               std::to_string(channels_.size()) + " channels");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : channels_) {
    if (!seen.insert(name).second) {
      throw InvalidArgumentError("duplicate channel name '" + name + "'");
    }
  }
  for (size_t i = 1; i < timestamps_.size(); ++i) {
    if (timestamps_[i] < timestamps_[i - 1]) {
      throw InvalidArgumentError("timestamps decrease at row " +
                                 std::to_string(i));
    }
  }
}

std::optional<double> SensorFrame::value(size_t r, size_t c) const {
  const double v = values_[r * channels_.size() + c];
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

bool SensorFrame::is_missing(size_t r, size_t c) const {
  return !std::isfinite(values_[r * channels_.size() + c]);
}

std::optional<size_t> SensorFrame::channel_index(const std::string& name) const {
  auto it = std::find(channels_.begin(), channels_.end(), name);
  if (it == channels_.end()) return std::nullopt;
  return static_cast<size_t>(it - channels_.begin());
}

FeatureMatrix::FeatureMatrix(std::vector<Instant> timestamps,
                             std::vector<std::string> columns,
                             std::vector<double> data,
                             std::vector<ScaleParams> scale_params)
    : timestamps_(std::move(timestamps)),
      columns_(std::move(columns)),
      data_(std::move(data)),
      scale_params_(std::move(scale_params)) {
  if (data_.size() != timestamps_.size() * columns_.size()) {
    throw InvalidArgumentError("feature matrix shape mismatch");
  }
  if (!scale_params_.empty() && scale_params_.size() != columns_.size()) {
    throw InvalidArgumentError("scale params do not match column count");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw InvalidArgumentError("feature matrix contains a non-finite entry");
    }
  }
}

FeatureMatrix FeatureMatrix::FromFrame(const SensorFrame& frame) {
  return FeatureMatrix(frame.timestamps(), frame.channels(),
                       std::vector<double>(frame.values().begin(),
                                           frame.values().end()));
}

FeatureMatrix FeatureMatrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  const size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Instant> ts;
  std::vector<double> data;
  ts.reserve(rows.size());
  data.reserve(rows.size() * cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw InvalidArgumentError("ragged rows");
    }
    ts.push_back(Instant{std::chrono::seconds{static_cast<long long>(i)}});
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  std::vector<std::string> names;
  for (size_t c = 0; c < cols; ++c) names.push_back("x" + std::to_string(c));
  return FeatureMatrix(std::move(ts), std::move(names), std::move(data));
}

FeatureMatrix FitMinMax(const FeatureMatrix& matrix) {
  if (matrix.empty()) {
    throw InvalidArgumentError("cannot scale an empty feature matrix");
  }
  const size_t rows = matrix.rows();
  const size_t cols = matrix.cols();
  std::vector<ScaleParams> params(cols);
  for (size_t c = 0; c < cols; ++c) {
    params[c].min = params[c].max = matrix.at(0, c);
  }
  for (size_t r = 1; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      const double v = matrix.at(r, c);
      params[c].min = std::min(params[c].min, v);
      params[c].max = std::max(params[c].max, v);
    }
  }
  std::vector<double> scaled(rows * cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      const double range = params[c].max - params[c].min;
      scaled[r * cols + c] =
          range > 0.0 ? (matrix.at(r, c) - params[c].min) / range : 0.0;
    }
  }
  return FeatureMatrix(matrix.timestamps(), matrix.columns(), std::move(scaled),
                       std::move(params));
}

std::vector<double> NormalizeScores(std::span<const double> raw,
                                    Orientation orientation) {
  if (raw.empty()) {
    throw InvalidArgumentError("cannot normalize an empty score list");
  }
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  const double range = *hi - *lo;
  std::vector<double> out(raw.size(), 0.0);
  if (!(range > 0.0)) return out;
  for (size_t i = 0; i < raw.size(); ++i) {
    const double n = (raw[i] - *lo) / range;
    out[i] = orientation == Orientation::kMoreIsAnomalous ? n : 1.0 - n;
  }
  return out;
}

ScoreSeries MakeScoreSeries(std::vector<Instant> timestamps,
                            std::vector<double> raw, Orientation orientation) {
  if (timestamps.size() != raw.size()) {
    throw InvalidArgumentError("score count does not match timestamp count");
  }
  ScoreSeries series;
  series.normalized_scores = NormalizeScores(raw, orientation);
  series.timestamps = std::move(timestamps);
  series.raw_scores = std::move(raw);
  series.orientation = orientation;
  return series;
}

}  // namespace bridgewatch
