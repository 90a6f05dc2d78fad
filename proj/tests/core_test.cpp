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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bridgewatch/core.hpp"
#include "bridgewatch/error.hpp"
#include "bridgewatch/random.hpp"

namespace bridgewatch {
namespace {

std::vector<double> Column(const FeatureMatrix& m, size_t c) {
  std::vector<double> out;
  for (size_t r = 0; r < m.rows(); ++r) out.push_back(m.at(r, c));
  return out;
}

TEST(FitMinMaxTest, ScalesEachColumnToUnitRange) {
  const auto m = FeatureMatrix::FromRows({{0, 7, -2}, {5, 7, 0}, {10, 7, 2}});
  const auto s = FitMinMax(m);
  EXPECT_EQ(Column(s, 0), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(Column(s, 1), (std::vector<double>{0.0, 0.0, 0.0}));
  EXPECT_EQ(Column(s, 2), (std::vector<double>{0.0, 0.5, 1.0}));
  ASSERT_EQ(s.scale_params().size(), 3u);
  EXPECT_EQ(s.scale_params()[0].min, 0.0);
  EXPECT_EQ(s.scale_params()[0].max, 10.0);
  EXPECT_EQ(s.timestamps(), m.timestamps());
}

TEST(FitMinMaxTest, RejectsEmptyMatrix) {
  EXPECT_THROW(FitMinMax(FeatureMatrix()), Error);
}

TEST(FitMinMaxTest, IdempotentAndOrderPreserving) {
  Rng rng(7);
  std::normal_distribution<double> g(3.0, 10.0);
  std::vector<std::vector<double>> rows(50, std::vector<double>(4));
  for (auto& r : rows) {
    for (double& v : r) v = g(rng);
  }
  const auto m = FeatureMatrix::FromRows(rows);
  const auto once = FitMinMax(m);
  const auto twice = FitMinMax(once);
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) {
      EXPECT_GE(once.at(r, c), 0.0);
      EXPECT_LE(once.at(r, c), 1.0);
      EXPECT_NEAR(twice.at(r, c), once.at(r, c), 1e-12);
      for (size_t q = 0; q < m.rows(); ++q) {
        if (m.at(r, c) < m.at(q, c)) EXPECT_LE(once.at(r, c), once.at(q, c));
      }
    }
  }
}

TEST(FeatureMatrixTest, RejectsNonFiniteAndShapeMismatch) {
  EXPECT_THROW(FeatureMatrix::FromRows({{1.0, std::nan("")}}), Error);
  EXPECT_THROW(FeatureMatrix::FromRows({{1.0, 2.0}, {3.0}}), Error);
}

TEST(NormalizeScoresTest, Orientation) {
  const std::vector<double> raw{2, 4, 6};
  EXPECT_EQ(NormalizeScores(raw, Orientation::kMoreIsAnomalous),
            (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(NormalizeScores(raw, Orientation::kLessIsAnomalous),
            (std::vector<double>{1.0, 0.5, 0.0}));
}

TEST(NormalizeScoresTest, ConstantInputIsZero) {
  const std::vector<double> raw{5, 5};
  EXPECT_EQ(NormalizeScores(raw, Orientation::kMoreIsAnomalous),
            (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(NormalizeScores(raw, Orientation::kLessIsAnomalous),
            (std::vector<double>{0.0, 0.0}));
}

TEST(NormalizeScoresTest, RejectsEmpty) {
  EXPECT_THROW(NormalizeScores({}, Orientation::kMoreIsAnomalous), Error);
}

TEST(SensorFrameTest, ValidatesShapeNamesAndOrder) {
  using std::chrono::seconds;
  const Instant t0{};
  EXPECT_THROW(SensorFrame({"a"}, {t0, t0 + seconds{1}}, {1.0}), Error);
  EXPECT_THROW(SensorFrame({"a", "a"}, {t0}, {1.0, 2.0}), Error);
  EXPECT_THROW(SensorFrame({"a"}, {t0 + seconds{1}, t0}, {1.0, 2.0}), Error);
  const SensorFrame f({"a", "b"}, {t0, t0}, {1.0, SensorFrame::kMissing, 3.0, 4.0});
  EXPECT_EQ(f.rows(), 2u);
  EXPECT_TRUE(f.is_missing(0, 1));
  EXPECT_FALSE(f.value(0, 1).has_value());
  EXPECT_EQ(*f.value(1, 0), 3.0);
  EXPECT_EQ(f.channel_index("b"), 1u);
  EXPECT_FALSE(f.channel_index("c").has_value());
}

TEST(RandomTest, DerivedSeedsAreDistinctAndStable) {
  EXPECT_EQ(DeriveSeed(1, 2), DeriveSeed(1, 2));
  EXPECT_NE(DeriveSeed(1, 2), DeriveSeed(2, 1));
  EXPECT_NE(DeriveSeed(0, 0), DeriveSeed(0, 1));
}

}  // namespace
}  // namespace bridgewatch
