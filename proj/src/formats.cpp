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

#include "bridgewatch/formats.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "bridgewatch/error.hpp"
#include "text.hpp"

namespace bridgewatch {
namespace {

std::string LinePrefix(size_t line) { return "line " + std::to_string(line) + ": "; }

void ExpectHeader(LineReader& lines, std::string_view expected) {
  std::string_view header;
  if (!lines.Next(header) || Trim(header) != expected) {
    throw ParseError("expected header '" + std::string(expected) + "'");
  }
}

double RequireNumber(std::string_view cell, size_t line) {
  const auto v = ParseCell(cell);
  if (!v) {
    throw ParseError(LinePrefix(line) + "bad number '" + std::string(cell) + "'");
  }
  return *v;
}

Instant RequireTimestamp(std::string_view cell, size_t line) {
  const auto t = TryParseTimestamp(Trim(cell));
  if (!t) {
    throw ParseError(LinePrefix(line) + "malformed timestamp '" + std::string(cell) +
                     "'");
  }
  return *t;
}

}  // namespace

void WriteScoresCsv(std::ostream& out, const ScoreSeries& scores) {
  std::string buf = "timestamp,raw_score,normalized_score\n";
  for (size_t i = 0; i < scores.timestamps.size(); ++i) {
    buf += FormatTimestamp(scores.timestamps[i]);
    buf += ',';
    AppendNumber(buf, scores.raw_scores[i]);
    buf += ',';
    AppendNumber(buf, scores.normalized_scores[i]);
    buf += '\n';
  }
  out << buf;
}

ScoreSeries ReadScoresCsv(std::istream& in) {
  const std::string text = ReadAll(in);
  LineReader lines(text);
  ExpectHeader(lines, "timestamp,raw_score,normalized_score");
  ScoreSeries s;
  std::string_view line;
  std::vector<std::string_view> f;
  while (lines.Next(line)) {
    if (Trim(line).empty()) continue;
    SplitFields(line, f);
    if (f.size() != 3) throw ParseError(LinePrefix(lines.line_number()) + "expected 3 fields");
    s.timestamps.push_back(RequireTimestamp(f[0], lines.line_number()));
    s.raw_scores.push_back(RequireNumber(f[1], lines.line_number()));
    s.normalized_scores.push_back(RequireNumber(f[2], lines.line_number()));
  }
  return s;
}

void WriteRankingCsv(std::ostream& out, const AnomalyRanking& ranking) {
  std::string buf = "rank,timestamp,score\n";
  for (const auto& e : ranking.entries) {
    buf += std::to_string(e.rank);
    buf += ',';
    buf += FormatTimestamp(e.timestamp);
    buf += ',';
    AppendNumber(buf, e.score);
    buf += '\n';
  }
  out << buf;
}

AnomalyRanking ReadRankingCsv(std::istream& in) {
  const std::string text = ReadAll(in);
  LineReader lines(text);
  ExpectHeader(lines, "rank,timestamp,score");
  AnomalyRanking r;
  std::string_view line;
  std::vector<std::string_view> f;
  while (lines.Next(line)) {
    if (Trim(line).empty()) continue;
    SplitFields(line, f);
    const size_t n = lines.line_number();
    if (f.size() != 3) throw ParseError(LinePrefix(n) + "expected 3 fields");
    const double rank = RequireNumber(f[0], n);
    if (rank != static_cast<double>(r.entries.size() + 1)) {
      throw ParseError(LinePrefix(n) + "ranks must run 1, 2, 3, ...");
    }
    RankEntry e;
    e.rank = r.entries.size() + 1;
    e.timestamp = RequireTimestamp(f[1], n);
    e.score = RequireNumber(f[2], n);
    if (!r.entries.empty() && e.score > r.entries.back().score) {
      throw ParseError(LinePrefix(n) + "scores must be non-increasing");
    }
    r.entries.push_back(e);
  }
  return r;
}

void WriteGroundTruth(std::ostream& out, const GroundTruth& truth) {
  out << "event_time=" << FormatTimestamp(truth.event_time) << "\n";
  out << "tolerance_s=" << FormatNumber(DurationToSeconds(truth.tolerance)) << "\n";
}

GroundTruth ReadGroundTruth(std::istream& in) {
  const std::string text = ReadAll(in);
  LineReader lines(text);
  std::string_view line;
  GroundTruth truth;
  bool have_event = false;
  while (lines.Next(line)) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(LinePrefix(lines.line_number()) + "expected key=value");
    }
    const auto key = Trim(line.substr(0, eq));
    const auto value = Trim(line.substr(eq + 1));
    if (key == "event_time") {
      truth.event_time = RequireTimestamp(value, lines.line_number());
      have_event = true;
    } else if (key == "tolerance_s") {
      const double s = RequireNumber(value, lines.line_number());
      if (!(s > 0.0)) {
        throw ParseError(LinePrefix(lines.line_number()) + "tolerance_s must be positive");
      }
      truth.tolerance = SecondsToDuration(s);
    }
  }
  if (!have_event) throw ParseError("ground truth: event_time missing");
  return truth;
}

void WriteReport(std::ostream& out, const EvalReport& report) {
  if (!report.detector.empty()) out << "detector=" << report.detector << "\n";
  for (const auto& [k, v] : report.params) out << "param." << k << "=" << v << "\n";
  if (report.rows) out << "rows=" << *report.rows << "\n";
  if (report.flagged) out << "flagged=" << *report.flagged << "\n";
  out << "top_k=" << report.top_k << "\n";
  for (const auto& e : report.top_entries) {
    out << "top." << e.rank << "=" << FormatTimestamp(e.timestamp) << ","
        << FormatNumber(e.score) << "\n";
  }
  if (report.truth) {
    out << "event_time=" << FormatTimestamp(report.truth->event_time) << "\n";
    out << "tolerance_s=" << FormatNumber(DurationToSeconds(report.truth->tolerance))
        << "\n";
    out << "hit_rank=" << (report.hit_rank ? std::to_string(*report.hit_rank) : "none")
        << "\n";
    out << "hit_at_k=" << (report.hit_at_k ? "true" : "false") << "\n";
  }
}

ParamGrid ParseGridFile(std::istream& in, DetectorKind detector) {
  const std::string text = ReadAll(in);
  LineReader lines(text);
  std::string_view line;
  ParamGrid grid;
  const std::string own_prefix = std::string(DetectorName(detector)) + ".";
  while (lines.Next(line)) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = LinePrefix(lines.line_number());
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(where + "expected key=value[,value...]");
    }
    std::string_view key = Trim(line.substr(0, eq));
    if (key.starts_with("detector.")) key.remove_prefix(9);
    else if (key.starts_with(own_prefix)) key.remove_prefix(own_prefix.size());
    if (key.empty()) throw ParseError(where + "empty parameter name");
    std::vector<std::string> values;
    for (auto v : SplitFields(line.substr(eq + 1))) {
      v = Trim(v);
      if (v.empty()) throw ParseError(where + "empty value");
      PipelineConfig probe;
      probe.detector = detector;
      try {
        probe.Set(key, v);
      } catch (const Error& e) {
        throw ParseError(where + e.what());
      }
      values.emplace_back(v);
    }
    try {
      grid.Add(std::string(key), std::move(values));
    } catch (const Error& e) {
      throw ParseError(where + e.what());
    }
  }
  if (grid.axes.empty()) throw ParseError("grid file defines no parameters");
  return grid;
}

void WriteGridTable(std::ostream& out, const GridSearchResult& result) {
  if (result.table.empty()) return;
  for (const auto& [k, v] : result.table.front().params) out << k << ",";
  out << "hit_rank,hit_at_k,margin,top1_timestamp,top1_score,best\n";
  for (size_t i = 0; i < result.table.size(); ++i) {
    const GridRow& row = result.table[i];
    for (const auto& [k, v] : row.params) out << v << ",";
    out << (row.report.hit_rank ? std::to_string(*row.report.hit_rank) : "none") << ","
        << (row.report.hit_at_k ? "true" : "false") << "," << FormatNumber(row.margin)
        << ",";
    if (!row.report.top_entries.empty()) {
      out << FormatTimestamp(row.report.top_entries.front().timestamp) << ","
          << FormatNumber(row.report.top_entries.front().score);
    } else {
      out << ",";
    }
    out << "," << (i == result.best_index ? "1" : "0") << "\n";
  }
}

void WriteBestParams(std::ostream& out, const GridSearchResult& result) {
  if (result.table.empty()) return;
  const GridRow& best = result.table[result.best_index];
  out << "detector=" << best.report.detector << "\n";
  for (const auto& [k, v] : best.params) out << k << "=" << v << "\n";
  out << "hit_rank=" << (best.report.hit_rank ? std::to_string(*best.report.hit_rank) : "none")
      << "\n";
  out << "margin=" << FormatNumber(best.margin) << "\n";
}

}  // namespace bridgewatch
