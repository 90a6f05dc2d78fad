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

#include <gtest/gtest.h>

#include "bridgewatch/error.hpp"
#include "bridgewatch/time.hpp"

namespace bridgewatch {
namespace {

using std::chrono::seconds;

TEST(TimeTest, ParsesIsoTimestamp) {
  const Instant t = ParseTimestamp("2025-08-24T01:15:00Z");
  EXPECT_EQ(t.time_since_epoch(), seconds{1755998100});
}

TEST(TimeTest, ParsesFractionalSeconds) {
  const Instant t = ParseTimestamp("1970-01-01T00:00:01.25Z");
  EXPECT_EQ(t.time_since_epoch(), Duration{1250000});
}

TEST(TimeTest, CustomPattern) {
  const auto t = TryParseTimestamp("24/08/2025 01:15:00", "%d/%m/%Y %H:%M:%S");
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(*t, ParseTimestamp("2025-08-24T01:15:00Z"));
}

TEST(TimeTest, RejectsMalformedInput) {
  EXPECT_FALSE(TryParseTimestamp("2025-13-01T00:00:00Z"));
  EXPECT_FALSE(TryParseTimestamp("2025-02-30T00:00:00Z"));
  EXPECT_FALSE(TryParseTimestamp("2025-08-24T01:15:00"));
  EXPECT_FALSE(TryParseTimestamp("2025-08-24T01:15:00Zjunk"));
  EXPECT_FALSE(TryParseTimestamp(""));
  try {
    ParseTimestamp("yesterday");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(TimeTest, FormatRoundTrip) {
  for (const char* text : {"2025-08-15T00:00:00Z", "2025-08-15T00:00:00.200Z",
                           "1999-12-31T23:59:59.000001Z"}) {
    EXPECT_EQ(FormatTimestamp(ParseTimestamp(text)), text);
  }
}

TEST(TimeTest, SecondsConversion) {
  EXPECT_EQ(SecondsToDuration(0.2), Duration{200000});
  EXPECT_DOUBLE_EQ(DurationToSeconds(seconds{60}), 60.0);
}

}  // namespace
}  // namespace bridgewatch
