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

#ifndef BRIDGEWATCH_FORMATS_HPP_
#define BRIDGEWATCH_FORMATS_HPP_

#include <iosfwd>

#include "bridgewatch/core.hpp"
#include "bridgewatch/detect.hpp"
#include "bridgewatch/synthgen.hpp"

namespace bridgewatch {

// timestamp,raw_score,normalized_score
void WriteScoresCsv(std::ostream& out, const ScoreSeries& scores);
ScoreSeries ReadScoresCsv(std::istream& in);

// rank,timestamp,score
void WriteRankingCsv(std::ostream& out, const AnomalyRanking& ranking);
AnomalyRanking ReadRankingCsv(std::istream& in);

// Ground-truth sidecar: event_time=<ISO-8601> and optional tolerance_s=<s>,
// one key=value per line; blank lines and '#' comments are ignored.
void WriteGroundTruth(std::ostream& out, const GroundTruth& truth);
GroundTruth ReadGroundTruth(std::istream& in);

// Line-oriented key=value report.
void WriteReport(std::ostream& out, const EvalReport& report);

// Grid file: one `key=v1,v2,...` per line. Keys may carry a `detector.` or
// `<detector name>.` prefix. Every value is checked against `detector`;
// errors name the line.
ParamGrid ParseGridFile(std::istream& in, DetectorKind detector);

// One CSV row per combination in grid order.
void WriteGridTable(std::ostream& out, const GridSearchResult& result);

// The winning combination as key=value lines.
void WriteBestParams(std::ostream& out, const GridSearchResult& result);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_FORMATS_HPP_
