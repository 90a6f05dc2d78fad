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

#include "bridgewatch/time.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "bridgewatch/error.hpp"

namespace bridgewatch {
namespace {

bool ReadDigits(std::string_view text, size_t& pos, int count, int& value) {
  if (pos + count > text.size()) return false;
  value = 0;
  for (int i = 0; i < count; ++i) {
    const char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  pos += count;
  return true;
}

}  // namespace

std::optional<Instant> TryParseTimestamp(std::string_view text,
                                         std::string_view pattern) {
  int year = 1970, month = 1, day = 1, hour = 0, minute = 0, second = 0;
  int64_t micros = 0;
  size_t pos = 0;
  for (size_t p = 0; p < pattern.size(); ++p) {
    if (pattern[p] != '%' || p + 1 == pattern.size()) {
      if (pos >= text.size() || text[pos] != pattern[p]) return std::nullopt;
      ++pos;
      continue;
    }
    const char conv = pattern[++p];
    bool ok = true;
    switch (conv) {
      case 'Y': ok = ReadDigits(text, pos, 4, year); break;
      case 'm': ok = ReadDigits(text, pos, 2, month); break;
      case 'd': ok = ReadDigits(text, pos, 2, day); break;
      case 'H': ok = ReadDigits(text, pos, 2, hour); break;
      case 'M': ok = ReadDigits(text, pos, 2, minute); break;
      case 'S': {
        ok = ReadDigits(text, pos, 2, second);
        if (ok && pos < text.size() && text[pos] == '.') {
          ++pos;
          int digits = 0;
          int64_t scale = 100000;
          while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (digits == 6) return std::nullopt;
            micros += (text[pos] - '0') * scale;
            scale /= 10;
            ++digits;
            ++pos;
          }
          ok = digits > 0;
        }
        break;
      }
      case '%':
        ok = pos < text.size() && text[pos] == '%';
        ++pos;
        break;
      default:
        return std::nullopt;
    }
    if (!ok) return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;

  const std::chrono::year_month_day ymd{
      std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
      std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
    return std::nullopt;
  }
  const std::chrono::sys_days days{ymd};
  return Instant{days} + std::chrono::hours{hour} +
         std::chrono::minutes{minute} + std::chrono::seconds{second} +
         Duration{micros};
}

Instant ParseTimestamp(std::string_view text, std::string_view pattern) {
  auto parsed = TryParseTimestamp(text, pattern);
  if (!parsed) {
    throw ParseError("malformed timestamp '" + std::string(text) +
                     "' (expected pattern " + std::string(pattern) + ")");
  }
  return *parsed;
}

std::string FormatTimestamp(Instant t) {
  const auto days = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{days};
  const std::chrono::hh_mm_ss<Duration> hms{t - days};
  const int64_t micros = hms.subseconds().count();

  char buf[48];
  int n = std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d",
                        static_cast<int>(ymd.year()),
                        static_cast<unsigned>(ymd.month()),
                        static_cast<unsigned>(ymd.day()),
                        static_cast<int>(hms.hours().count()),
                        static_cast<int>(hms.minutes().count()),
                        static_cast<int>(hms.seconds().count()));
  if (micros != 0) {
    if (micros % 1000 == 0) {
      n += std::snprintf(buf + n, sizeof(buf) - n, ".%03lld",
                         static_cast<long long>(micros / 1000));
    } else {
      n += std::snprintf(buf + n, sizeof(buf) - n, ".%06lld",
                         static_cast<long long>(micros));
    }
  }
  std::string out(buf, n);
  out.push_back('Z');
  return out;
}

Duration SecondsToDuration(double seconds) {
  if (!std::isfinite(seconds)) {
    throw InvalidArgumentError("duration must be finite");
  }
  return Duration{std::llround(seconds * 1e6)};
}

}  // namespace bridgewatch
