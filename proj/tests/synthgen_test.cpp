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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bridgewatch/error.hpp"
#include "bridgewatch/ingest.hpp"
#include "bridgewatch/random.hpp"
#include "bridgewatch/synthgen.hpp"

namespace bridgewatch {
namespace {

using std::chrono::minutes;
using std::chrono::seconds;

SynthConfig SmallConfig() {
  SynthConfig c;
  c.days = 1;
  c.start_time = ParseTimestamp("2025-08-15T00:00:00Z");
  c.accident_time = ParseTimestamp("2025-08-15T12:00:00Z");
  return c;
}

bool SameBits(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) != std::isnan(b[i])) return false;
    if (!std::isnan(a[i]) && a[i] != b[i]) return false;
  }
  return true;
}

TEST(SynthgenTest, DefaultRowCount) {
  EXPECT_EQ(SyntheticRowCount(SynthConfig{}), 11u * 86400u * 5u);
}

TEST(SynthgenTest, ShapeTimestampsAndTruth) {
  const auto d = Generate(SmallConfig());
  EXPECT_EQ(d.frame.rows(), 86400u * 5u);
  EXPECT_EQ(d.frame.channels(), DefaultChannels());
  EXPECT_EQ(d.frame.timestamps().front(), ParseTimestamp("2025-08-15T00:00:00Z"));
  EXPECT_EQ(d.frame.timestamps()[1] - d.frame.timestamps()[0], Duration{200000});
  EXPECT_EQ(d.truth.event_time, ParseTimestamp("2025-08-15T12:00:00Z"));
  EXPECT_EQ(d.truth.tolerance, seconds{60});
}

TEST(SynthgenTest, DeterministicAcrossThreadCounts) {
  auto c = SmallConfig();
  c.seed = 9;
  const auto a = Generate(c);
  c.n_jobs = 4;
  const auto b = Generate(c);
  EXPECT_TRUE(SameBits(a.frame.values(), b.frame.values()));
  c.seed = 10;
  const auto other = Generate(c);
  EXPECT_FALSE(SameBits(a.frame.values(), other.frame.values()));
}

TEST(SynthgenTest, AccidentMinuteStandsOut) {
  const auto d = Generate(SmallConfig());
  const auto m = Resample(d.frame, seconds{60});
  const auto idx = *m.channel_index("acx_A");
  size_t argmax = 0;
  for (size_t r = 0; r < m.rows(); ++r) {
    if (*m.value(r, idx) > *m.value(argmax, idx)) argmax = r;
  }
  EXPECT_EQ(m.timestamps()[argmax], d.truth.event_time);
}

TEST(SynthgenTest, AccidentChannelsRestrictTheSpike) {
  auto c = SmallConfig();
  c.traffic_rate_per_hour = 0.0;
  c.accident_channels = {"acx_A"};
  const auto hit = Generate(c);
  c.spike_magnitude = 0.0;
  c.strain_shift = 0.0;
  const auto calm = Generate(c);
  const size_t row = static_cast<size_t>(12 * 3600 * 5);
  EXPECT_NE(*hit.frame.value(row, 0), *calm.frame.value(row, 0));
  for (size_t ch = 1; ch < 8; ++ch) {
    EXPECT_EQ(*hit.frame.value(row, ch), *calm.frame.value(row, ch));
  }
}

TEST(SynthgenTest, RejectsInvalidConfig) {
  auto c = SmallConfig();
  c.days = 0;
  EXPECT_THROW(Generate(c), Error);
  c = SmallConfig();
  c.accident_time = ParseTimestamp("2030-01-01T00:00:00Z");
  EXPECT_THROW(Generate(c), Error);
  c = SmallConfig();
  c.accident_channels = {"nope"};
  EXPECT_THROW(Generate(c), Error);
  c = SmallConfig();
  c.noise_sigmas = {1.0};
  EXPECT_THROW(Generate(c), Error);
}

SensorFrame Ones(size_t rows, size_t cols) {
  std::vector<std::string> names;
  for (size_t c = 0; c < cols; ++c) names.push_back("c" + std::to_string(c));
  std::vector<Instant> t(rows);
  for (size_t r = 0; r < rows; ++r) t[r] = Instant{} + seconds{r};
  return SensorFrame(names, t, std::vector<double>(rows * cols, 1.0));
}

TEST(InjectMissingTest, ZeroFractionIsIdentity) {
  const auto f = Ones(10, 3);
  EXPECT_TRUE(SameBits(InjectMissing(f, 0.0, 1).values(), f.values()));
}

TEST(InjectMissingTest, CountMatchesSeededBernoulliEnumeration) {
  const auto f = Ones(1000, 10);
  const auto holed = InjectMissing(f, 0.01, 5);
  size_t missing = 0;
  for (double v : holed.values()) missing += std::isnan(v) ? 1 : 0;
  Rng rng(DeriveSeed(5, 0x6d697373));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  size_t expected = 0;
  for (size_t i = 0; i < 10000; ++i) expected += u(rng) < 0.01 ? 1 : 0;
  EXPECT_EQ(missing, expected);
  EXPECT_GT(missing, 50u);
  EXPECT_LT(missing, 150u);
}

TEST(InjectMissingTest, ReproducibleMaskAndRangeCheck) {
  const auto f = Ones(2, 2);
  EXPECT_TRUE(SameBits(InjectMissing(f, 0.5, 3).values(), InjectMissing(f, 0.5, 3).values()));
  EXPECT_THROW(InjectMissing(f, 1.0, 3), Error);
  EXPECT_THROW(InjectMissing(f, -0.1, 3), Error);
}

}  // namespace
}  // namespace bridgewatch
