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

#ifndef BRIDGEWATCH_PLOT_HPP_
#define BRIDGEWATCH_PLOT_HPP_

#include <string>
#include <vector>

#include "bridgewatch/time.hpp"

namespace bridgewatch {

struct PlotSeries {
  std::string name;
  std::vector<double> values;  // aligned with PlotSpec::timestamps
};

enum class MarkerKind { kAnomaly, kGroundTruth };

struct PlotMarker {
  Instant time;
  MarkerKind kind = MarkerKind::kAnomaly;
  std::string label;
};

struct PlotSpec {
  std::string title;
  std::vector<Instant> timestamps;
  std::vector<PlotSeries> series;
  std::vector<PlotMarker> markers;
  int width = 1200;
  int height = 400;

  // Non-empty series list, positive dimensions, lengths matching timestamps.
  void Validate() const;
};

// Self-contained SVG: one polyline per series on a shared y axis, vertical
// marker lines (anomalies dashed red, ground truth solid green), labeled
// axes. Long series are reduced to per-pixel-column min/max. Output bytes
// depend only on the input.
std::string RenderTimelineSvg(const PlotSpec& spec);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_PLOT_HPP_
