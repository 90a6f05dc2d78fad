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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "bridgewatch/dbscan.hpp"
#include "bridgewatch/error.hpp"
#include "bridgewatch/random.hpp"
#include "six_groups.hpp"
#include "oracles.hpp"

namespace bridgewatch {
namespace {

int KindCode(PointKind k) {
  return k == PointKind::kCore ? 0 : k == PointKind::kBorder ? 1 : 2;
}

TEST(RegionQueryTest, Examples) {
  const auto m = FeatureMatrix::FromRows({{0}, {1}, {10}});
  EXPECT_EQ(RegionQuery(m, 0, 2.0), (std::vector<size_t>{0, 1}));
  EXPECT_EQ(RegionQuery(m, 2, 0.5), (std::vector<size_t>{2}));
  const auto dup = FeatureMatrix::FromRows({{3, 3}, {3, 3}});
  EXPECT_EQ(RegionQuery(dup, 0, 1e-9), (std::vector<size_t>{0, 1}));
  EXPECT_EQ(RegionQuery(dup, 1, 1e-9), (std::vector<size_t>{0, 1}));
}

TEST(ClusterTest, SixGroupsWithMinSamplesThree) {
  const auto pts = fixture::SixGroups();
  const auto l = Cluster(FeatureMatrix::FromRows(pts.rows), {fixture::kSixGroupsEps, 3});
  EXPECT_EQ(l.cluster_count, 4);
  std::set<int> noise;
  for (size_t i = 0; i < pts.rows.size(); ++i) {
    if (l.labels[i] == kNoiseLabel) noise.insert(pts.group[i]);
  }
  EXPECT_EQ(noise, (std::set<int>{3, 5}));
}

TEST(ClusterTest, SixGroupsWithMinSamplesFive) {
  const auto pts = fixture::SixGroups();
  const auto l = Cluster(FeatureMatrix::FromRows(pts.rows), {fixture::kSixGroupsEps, 5});
  EXPECT_EQ(l.cluster_count, 3);
  std::set<int> noise;
  for (size_t i = 0; i < pts.rows.size(); ++i) {
    if (l.labels[i] == kNoiseLabel) noise.insert(pts.group[i]);
  }
  EXPECT_EQ(noise, (std::set<int>{3, 5, 6}));
}

TEST(ClusterTest, IdenticalPointsFormOneCoreCluster) {
  const auto l = Cluster(
      FeatureMatrix::FromRows(std::vector<std::vector<double>>(6, {1.0, 2.0})), {0.1, 3});
  EXPECT_EQ(l.cluster_count, 1);
  for (size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(l.labels[i], 0);
    EXPECT_EQ(l.kinds[i], PointKind::kCore);
  }
}

TEST(ClusterTest, BorderPoint) {
  const auto l = Cluster(FeatureMatrix::FromRows({{0}, {0.5}, {1.0}, {1.9}, {5}}), {1.0, 3});
  EXPECT_EQ(l.kinds[1], PointKind::kCore);
  EXPECT_EQ(l.kinds[3], PointKind::kBorder);
  EXPECT_EQ(l.labels[3], 0);
  EXPECT_EQ(l.kinds[4], PointKind::kNoise);
}

TEST(ClusterTest, MatchesNaiveOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t n = std::uniform_int_distribution<size_t>(1, 150)(rng);
    const size_t d = std::uniform_int_distribution<size_t>(1, 6)(rng);
    const double eps = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const size_t min_samples = std::uniform_int_distribution<size_t>(1, 6)(rng);
    std::normal_distribution<double> g(0.0, 2.0);
    oracle::Rows rows(n, std::vector<double>(d));
    for (auto& r : rows) {
      for (double& v : r) v = g(rng);
    }
    const auto got = Cluster(FeatureMatrix::FromRows(rows), {eps, min_samples}, 2);
    const auto want = oracle::NaiveDbscan(rows, eps, min_samples);
    ASSERT_EQ(got.labels, want.labels) << "trial " << trial;
    for (size_t i = 0; i < n; ++i) EXPECT_EQ(KindCode(got.kinds[i]), want.kinds[i]);
  }
}

TEST(ClusterTest, RejectsBadParams) {
  const auto m = FeatureMatrix::FromRows({{0}});
  EXPECT_THROW(Cluster(m, {0.0, 3}), Error);
  EXPECT_THROW(Cluster(m, {1.0, 0}), Error);
}

TEST(KnnDistanceScoresTest, ThreePointsOnALine) {
  const auto s = KnnDistanceScores(FeatureMatrix::FromRows({{0}, {1}, {2}}), 2);
  const auto want = oracle::NaiveKnn({{0}, {1}, {2}}, 2);
  EXPECT_EQ(s.raw_scores, want);
  EXPECT_EQ(s.raw_scores, (std::vector<double>{1.5, 1.0, 1.5}));
  EXPECT_EQ(s.normalized_scores, (std::vector<double>{1.0, 0.0, 1.0}));
}

TEST(KnnDistanceScoresTest, EquilateralTriangle) {
  const auto s =
      KnnDistanceScores(FeatureMatrix::FromRows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 2);
  for (double v : s.raw_scores) EXPECT_EQ(v, std::sqrt(2.0));
  EXPECT_EQ(s.normalized_scores, (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(KnnDistanceScoresTest, FarPointMatchesOracleAndWins) {
  Rng rng(5);
  std::normal_distribution<double> g(0.0, 0.3);
  oracle::Rows rows(80, std::vector<double>(3));
  for (auto& r : rows) {
    for (double& v : r) v = g(rng);
  }
  rows.push_back({9, 9, 9});
  const auto s = KnnDistanceScores(FeatureMatrix::FromRows(rows), 3, 2);
  const auto want = oracle::NaiveKnn(rows, 3);
  for (size_t i = 0; i < rows.size(); ++i) EXPECT_NEAR(s.raw_scores[i], want[i], 1e-12);
  EXPECT_EQ(s.normalized_scores.back(), 1.0);
  EXPECT_THROW(KnnDistanceScores(FeatureMatrix::FromRows({{0}, {1}}), 2), Error);
}

TEST(DetectDbscanTest, NoNoiseGivesZeroScores) {
  const auto d = DetectDbscan(
      FeatureMatrix::FromRows(std::vector<std::vector<double>>(5, {1.0})), {0.5, 3}, 2);
  EXPECT_EQ(d.scores.normalized_scores, std::vector<double>(5, 0.0));
}

TEST(DetectDbscanTest, SingleNoisePointIsUniqueArgmax) {
  const auto d = DetectDbscan(FeatureMatrix::FromRows({{0}, {0.1}, {0.2}, {0.15}, {4}}),
                              {0.5, 3}, 2);
  EXPECT_EQ(d.scores.normalized_scores, (std::vector<double>{0, 0, 0, 0, 1}));
  EXPECT_EQ(d.labeling.labels.back(), kNoiseLabel);
}

TEST(DetectDbscanTest, DuplicateRowsScoreEqually) {
  const auto d = DetectDbscan(FeatureMatrix::FromRows({{0}, {3}, {3}, {7}, {0.2}, {0.1}}),
                              {0.5, 3}, 2);
  EXPECT_EQ(d.scores.raw_scores[1], d.scores.raw_scores[2]);
  EXPECT_EQ(d.scores.normalized_scores[1], d.scores.normalized_scores[2]);
}

}  // namespace
}  // namespace bridgewatch
