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

#ifndef BRIDGEWATCH_INGEST_HPP_
#define BRIDGEWATCH_INGEST_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bridgewatch/core.hpp"
#include "bridgewatch/time.hpp"

namespace bridgewatch {

// acx/acy/acz acceleration (mG) and adc2 strain (mV) for devices A and B.
const std::vector<std::string>& DefaultChannels();

struct IngestConfig {
  std::vector<std::string> expected_channels = DefaultChannels();
  Duration resample_window = std::chrono::seconds{60};
  std::string timestamp_format{kIsoTimestampFormat};

  void Validate() const;
};

// Reads a comma-separated log whose first column is the timestamp. The
// header must name every expected channel; other columns are ignored and the
// frame's channels follow `expected_channels` order. Cells that do not parse
// as finite numbers become missing. Malformed timestamps, short rows and
// decreasing timestamps are parse errors carrying the line number.
SensorFrame ParseCsv(std::istream& in, const IngestConfig& config);
SensorFrame ReadCsvFile(const std::filesystem::path& path,
                        const IngestConfig& config);

// Writes the frame in the format ParseCsv reads, header `timestamp,<ch>...`.
// Numbers use the shortest round-trip representation; missing cells are NaN.
void WriteCsv(std::ostream& out, const SensorFrame& frame);
void WriteCsvFile(const std::filesystem::path& path, const SensorFrame& frame);

struct DropMissingResult {
  SensorFrame frame;
  size_t dropped = 0;
};

// Removes every row with at least one missing entry, preserving order.
DropMissingResult DropMissing(const SensorFrame& frame);

// Groups rows into epoch-aligned half-open windows [k*w, (k+1)*w) and emits
// one row per non-empty window: the window start and per-channel means.
// Throws on an empty frame, a frame with missing entries, or w <= 0.
SensorFrame Resample(const SensorFrame& frame, Duration window);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_INGEST_HPP_
