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

#include "bridgewatch/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bridgewatch/error.hpp"

namespace bridgewatch {
namespace {

constexpr int kLeft = 70;
constexpr int kRight = 20;
constexpr int kTop = 40;
constexpr int kBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
                                    "#17becf", "#d62728"};

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void PlotSpec::Validate() const {
  if (series.empty()) throw InvalidArgumentError("plot needs at least one series");
  if (width <= kLeft + kRight || height <= kTop + kBottom) {
    throw InvalidArgumentError("plot dimensions too small");
  }
  if (timestamps.empty()) throw InvalidArgumentError("plot needs timestamps");
  for (const auto& s : series) {
    if (s.values.size() != timestamps.size()) {
      throw InvalidArgumentError("series '" + s.name + "' has " +
                                 std::to_string(s.values.size()) + " values for " +
                                 std::to_string(timestamps.size()) + " timestamps");
    }
  }
}

std::string RenderTimelineSvg(const PlotSpec& spec) {
  spec.Validate();
  const double plot_w = spec.width - kLeft - kRight;
  const double plot_h = spec.height - kTop - kBottom;

  const double t0 = static_cast<double>(spec.timestamps.front().time_since_epoch().count());
  double t1 = static_cast<double>(spec.timestamps.back().time_since_epoch().count());
  if (t1 <= t0) t1 = t0 + 1e6;
  double y0 = std::numeric_limits<double>::infinity();
  double y1 = -y0;
  for (const auto& s : spec.series) {
    for (double v : s.values) {
      if (!std::isfinite(v)) continue;
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  }
  if (!std::isfinite(y0)) y0 = 0.0, y1 = 1.0;
  if (y1 <= y0) y0 -= 0.5, y1 += 0.5;

  auto x_of = [&](Instant t) {
    return kLeft + (static_cast<double>(t.time_since_epoch().count()) - t0) / (t1 - t0) * plot_w;
  };
  auto y_of = [&](double v) { return kTop + (y1 - v) / (y1 - y0) * plot_h; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    svg += "<text x=\"" + Fixed(spec.width / 2.0) +
           "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" + Escape(spec.title) + "</text>\n";
  }

  // Axes.
  const std::string x_axis_y = Fixed(kTop + plot_h);
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + std::to_string(kLeft) + "\" y1=\"" + x_axis_y + "\" x2=\"" +
         Fixed(kLeft + plot_w) + "\" y2=\"" + x_axis_y + "\"/>\n";
  svg += "<line x1=\"" + std::to_string(kLeft) + "\" y1=\"" + std::to_string(kTop) +
         "\" x2=\"" + std::to_string(kLeft) + "\" y2=\"" + x_axis_y + "\"/>\n";
  svg += "</g>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<text x=\"" + std::to_string(kLeft) + "\" y=\"" + Fixed(kTop + plot_h + 16) +
         "\" text-anchor=\"start\">" + FormatTimestamp(spec.timestamps.front()) + "</text>\n";
  svg += "<text x=\"" + Fixed(kLeft + plot_w) + "\" y=\"" + Fixed(kTop + plot_h + 16) +
         "\" text-anchor=\"end\">" + FormatTimestamp(spec.timestamps.back()) + "</text>\n";
  svg += "<text x=\"" + Fixed(kLeft + plot_w / 2) + "\" y=\"" +
         Fixed(kTop + plot_h + 36) + "\" text-anchor=\"middle\">time (UTC)</text>\n";
  svg += "<text x=\"" + std::to_string(kLeft - 6) + "\" y=\"" + Fixed(y_of(y1) + 4) +
         "\" text-anchor=\"end\">" + Short(y1) + "</text>\n";
  svg += "<text x=\"" + std::to_string(kLeft - 6) + "\" y=\"" + Fixed(y_of(y0)) +
         "\" text-anchor=\"end\">" + Short(y0) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + Fixed(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + Fixed(kTop + plot_h / 2) +
         ")\">value</text>\n";
  svg += "</g>\n";

  // Series. Beyond two points per pixel column, keep each column's extremes.
  const size_t n = spec.timestamps.size();
  const size_t columns = static_cast<size_t>(plot_w);
  for (size_t s = 0; s < spec.series.size(); ++s) {
    const auto& values = spec.series[s].values;
    std::vector<size_t> keep;
    if (n <= 2 * columns) {
      for (size_t i = 0; i < n; ++i) keep.push_back(i);
    } else {
      size_t i = 0;
      while (i < n) {
        const auto col = static_cast<size_t>((x_of(spec.timestamps[i]) - kLeft));
        size_t lo = i, hi = i, j = i;
        while (j < n && static_cast<size_t>((x_of(spec.timestamps[j]) - kLeft)) == col) {
          if (values[j] < values[lo]) lo = j;
          if (values[j] > values[hi]) hi = j;
          ++j;
        }
        keep.push_back(std::min(lo, hi));
        if (lo != hi) keep.push_back(std::max(lo, hi));
        i = j;
      }
    }
    svg += "<polyline fill=\"none\" stroke=\"" +
           std::string(kPalette[s % std::size(kPalette)]) +
           "\" stroke-width=\"1\" points=\"";
    bool first = true;
    for (size_t i : keep) {
      if (!std::isfinite(values[i])) continue;
      if (!first) svg += ' ';
      first = false;
      svg += Fixed(x_of(spec.timestamps[i]));
      svg += ',';
      svg += Fixed(y_of(values[i]));
    }
    svg += "\"/>\n";
    svg += "<text x=\"" + Fixed(kLeft + 8 + 120.0 * static_cast<double>(s)) +
           "\" y=\"" + std::to_string(kTop - 6) + "\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\"" + kPalette[s % std::size(kPalette)] + "\">" +
           Escape(spec.series[s].name) + "</text>\n";
  }

  for (const auto& m : spec.markers) {
    const std::string x = Fixed(x_of(m.time));
    const bool truth = m.kind == MarkerKind::kGroundTruth;
    svg += "<line x1=\"" + x + "\" y1=\"" + std::to_string(kTop) + "\" x2=\"" + x +
           "\" y2=\"" + x_axis_y + "\" stroke=\"" + (truth ? "#2ca02c" : "#d62728") +
           "\" stroke-width=\"1\"" + (truth ? "" : " stroke-dasharray=\"4 3\"") + "/>\n";
    if (!m.label.empty()) {
      svg += "<text x=\"" + x + "\" y=\"" + std::to_string(kTop + 10) +
             "\" font-family=\"sans-serif\" font-size=\"10\">" + Escape(m.label) +
             "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace bridgewatch
