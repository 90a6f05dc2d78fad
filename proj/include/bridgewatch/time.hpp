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

#ifndef BRIDGEWATCH_TIME_HPP_
#define BRIDGEWATCH_TIME_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace bridgewatch {

// Microsecond resolution covers 5 Hz sampling with room to spare and keeps
// instants in a single int64.
using Duration = std::chrono::microseconds;
using Instant = std::chrono::sys_time<Duration>;

// Default timestamp pattern: 2025-08-24T01:15:00Z or 2025-08-24T01:15:00.200Z.
inline constexpr std::string_view kIsoTimestampFormat = "%Y-%m-%dT%H:%M:%SZ";

// Parses `text` against a strftime-like `pattern`. Supported conversions:
// %Y (4-digit year), %m, %d, %H, %M (2 digits each), %S (2-digit seconds
// with an optional fractional part of up to 6 digits) and %%. Every other
// pattern character must match literally. Returns nullopt on any mismatch
// or out-of-range field.
std::optional<Instant> TryParseTimestamp(std::string_view text,
                                         std::string_view pattern =
                                             kIsoTimestampFormat);

// Throws Error(kParse) naming the offending text.
Instant ParseTimestamp(std::string_view text,
                       std::string_view pattern = kIsoTimestampFormat);

// ISO-8601 UTC. Fractional seconds are printed only when non-zero, with 3
// digits when the instant is millisecond-aligned and 6 otherwise.
std::string FormatTimestamp(Instant t);

// Rounds to the nearest microsecond. Throws on non-finite input.
Duration SecondsToDuration(double seconds);

inline double DurationToSeconds(Duration d) {
  return std::chrono::duration<double>(d).count();
}

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_TIME_HPP_
