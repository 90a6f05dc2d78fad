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

#include "bridgewatch/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "bridgewatch/error.hpp"
#include "text.hpp"

namespace bridgewatch {

const std::vector<std::string>& DefaultChannels() {
  static const std::vector<std::string> kChannels = {
      "acx_A", "acy_A", "acz_A", "adc2_A", "acx_B", "acy_B", "acz_B", "adc2_B"};
  return kChannels;
}

void IngestConfig::Validate() const {
  if (resample_window <= Duration::zero()) {
    throw InvalidArgumentError("resample_window must be positive");
  }
  if (expected_channels.empty()) {
    throw InvalidArgumentError("expected_channels must not be empty");
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : expected_channels) {
    if (!seen.insert(c).second) {
      throw InvalidArgumentError("duplicate expected channel '" + c + "'");
    }
  }
}

SensorFrame ParseCsv(std::istream& in, const IngestConfig& config) {
  config.Validate();
  const std::string text = ReadAll(in);
  LineReader lines(text);

  std::string_view header;
  if (!lines.Next(header)) {
    throw ParseError("empty input: header row required");
  }
  const auto names = SplitFields(header);
  if (names.size() < 2) {
    throw ParseError("header must contain a timestamp column and channels");
  }
  std::vector<size_t> source_column;
  source_column.reserve(config.expected_channels.size());
  for (const auto& channel : config.expected_channels) {
    size_t found = 0;
    for (size_t i = 1; i < names.size(); ++i) {
      if (Trim(names[i]) == channel) {
        found = i;
        break;
      }
    }
    if (found == 0) throw ParseError("missing channel " + channel);
    source_column.push_back(found);
  }

  std::vector<Instant> timestamps;
  std::vector<double> values;
  std::vector<std::string_view> fields;
  std::string_view line;
  while (lines.Next(line)) {
    if (Trim(line).empty()) continue;
    SplitFields(line, fields);
    const size_t line_no = lines.line_number();
    if (fields.size() < names.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(names.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    const auto ts = TryParseTimestamp(Trim(fields[0]), config.timestamp_format);
    if (!ts) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": malformed timestamp '" + std::string(fields[0]) + "'");
    }
    if (!timestamps.empty() && *ts < timestamps.back()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": timestamp goes backwards");
    }
    timestamps.push_back(*ts);
    for (size_t col : source_column) {
      values.push_back(ParseCell(fields[col]).value_or(SensorFrame::kMissing));
    }
  }
  return SensorFrame(config.expected_channels, std::move(timestamps),
                     std::move(values));
}

SensorFrame ReadCsvFile(const std::filesystem::path& path,
                        const IngestConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseCsv(in, config);
}

void WriteCsv(std::ostream& out, const SensorFrame& frame) {
  std::string buf;
  buf.reserve(1 << 16);
  buf += "timestamp";
  for (const auto& c : frame.channels()) {
    buf += ',';
    buf += c;
  }
  buf += '\n';
  for (size_t r = 0; r < frame.rows(); ++r) {
    buf += FormatTimestamp(frame.timestamps()[r]);
    for (double v : frame.row(r)) {
      buf += ',';
      AppendNumber(buf, v);
    }
    buf += '\n';
    if (buf.size() > (1 << 16) - 512) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void WriteCsvFile(const std::filesystem::path& path, const SensorFrame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCsv(out, frame);
  if (!out) throw IoError("failed writing " + path.string());
}

DropMissingResult DropMissing(const SensorFrame& frame) {
  std::vector<Instant> ts;
  std::vector<double> values;
  ts.reserve(frame.rows());
  values.reserve(frame.values().size());
  size_t dropped = 0;
  for (size_t r = 0; r < frame.rows(); ++r) {
    const auto row = frame.row(r);
    bool complete = true;
    for (double v : row) {
      if (!std::isfinite(v)) {
        complete = false;
        break;
      }
    }
    if (!complete) {
      ++dropped;
      continue;
    }
    ts.push_back(frame.timestamps()[r]);
    values.insert(values.end(), row.begin(), row.end());
  }
  return {SensorFrame(frame.channels(), std::move(ts), std::move(values)),
          dropped};
}

SensorFrame Resample(const SensorFrame& frame, Duration window) {
  if (window <= Duration::zero()) {
    throw InvalidArgumentError("resample window must be positive");
  }
  if (frame.empty()) {
    throw InvalidArgumentError("cannot resample an empty frame");
  }
  const size_t cols = frame.channel_count();
  std::vector<Instant> out_ts;
  std::vector<double> out_values;
  std::vector<double> sums(cols, 0.0);
  size_t count = 0;
  long long current = 0;

  auto bucket_of = [&](Instant t) {
    const long long ticks = t.time_since_epoch().count();
    const long long w = window.count();
    long long q = ticks / w;
    if (ticks % w != 0 && ticks < 0) --q;
    return q;
  };
  auto flush = [&] {
    out_ts.push_back(Instant{Duration{current * window.count()}});
    for (size_t c = 0; c < cols; ++c) {
      out_values.push_back(sums[c] / static_cast<double>(count));
      sums[c] = 0.0;
    }
    count = 0;
  };

  for (size_t r = 0; r < frame.rows(); ++r) {
    const long long b = bucket_of(frame.timestamps()[r]);
    if (count > 0 && b != current) flush();
    current = b;
    const auto row = frame.row(r);
    for (size_t c = 0; c < cols; ++c) {
      if (!std::isfinite(row[c])) {
        throw InvalidArgumentError("cannot resample a frame with missing "
                                   "entries (row " + std::to_string(r) + ")");
      }
      sums[c] += row[c];
    }
    ++count;
  }
  flush();
  return SensorFrame(frame.channels(), std::move(out_ts), std::move(out_values));
}

}  // namespace bridgewatch
