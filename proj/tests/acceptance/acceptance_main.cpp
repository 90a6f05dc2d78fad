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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bridgewatch/autoencoder.hpp"
#include "bridgewatch/dbscan.hpp"
#include "bridgewatch/detect.hpp"
#include "bridgewatch/formats.hpp"
#include "bridgewatch/iforest.hpp"
#include "bridgewatch/ingest.hpp"
#include "bridgewatch/plot.hpp"
#include "bridgewatch/random.hpp"
#include "bridgewatch/synthgen.hpp"
#include "six_groups.hpp"
#include "oracles.hpp"

namespace bridgewatch {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Outcome DbscanReproduction() {
  int hits = 0;
  std::string misses;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    SynthConfig config;
    config.seed = seed;
    const auto data = Generate(config);
    PipelineConfig pipeline;
    const auto result = RunPipeline(data.frame, pipeline);
    const auto report = Evaluate(result.ranking, data.truth, pipeline.top_k);
    if (result.scores.timestamps.size() != 15840) {
      return {false, "expected 15840 minutely rows, got " +
                         std::to_string(result.scores.timestamps.size())};
    }
    if (report.hit_rank == 1u) {
      ++hits;
    } else {
      misses += " seed " + std::to_string(seed);
    }
  }
  return {hits == 10, std::to_string(hits) + "/10 seeds hit_rank=1" +
                          (misses.empty() ? "" : " (missed:" + misses + ")")};
}

Outcome IsolationForestOutlier() {
  int wins = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(DeriveSeed(seed, 100));
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<double>> rows(200, std::vector<double>(2));
    for (auto& r : rows) {
      r[0] = g(rng);
      r[1] = g(rng);
    }
    rows.push_back({10.0, 10.0});
    const auto m = FeatureMatrix::FromRows(rows);
    IsolationForestParams p;
    p.n_estimators = 1000;
    p.seed = seed;
    const auto s = IsolationForest::Fit(m, p).ScoreMatrix(m);
    size_t argmax = 0;
    for (size_t i = 1; i < s.raw_scores.size(); ++i) {
      if (s.raw_scores[i] > s.raw_scores[argmax]) argmax = i;
    }
    wins += argmax == 200 ? 1 : 0;
  }
  return {wins >= 19, std::to_string(wins) + "/20 seeds (need >= 19)"};
}

Outcome AutoencoderGradients() {
  Rng rng(2024);
  std::uniform_int_distribution<size_t> dim(1, 8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  size_t failures = 0;
  size_t parameters = 0;
  double worst = 0.0;
  for (int c = 0; c < 200; ++c) {
    const size_t d = dim(rng);
    const auto arch = AutoencoderModel::DefaultArchitecture(d);
    auto model = InitModel(arch, rng());
    for (auto& layer : model.mutable_layers()) {
      for (double& b : layer.params.bias) b = 0.5 * u(rng);
    }
    std::vector<double> x(d);
    for (double& v : x) v = u(rng);
    const auto check = oracle::CheckGradients(model, x, Backward(model, x), 1e-5);
    failures += check.failures;
    parameters += check.parameters;
    worst = std::max(worst, check.worst_relative);
  }
  return {failures == 0, std::to_string(parameters) + " parameters over 200 cases, " +
                             std::to_string(failures) + " outside tolerance, worst rel " +
                             Fmt("%.2e", worst)};
}

Outcome AutoencoderConvergence() {
  const auto data = FeatureMatrix::FromRows(
      std::vector<std::vector<double>>(2048, std::vector<double>(8, 0.5)));
  PipelineConfig pipeline;
  pipeline.detector = DetectorKind::kAutoencoder;
  const auto result = ScoreMatrix(data, pipeline);
  const auto arch = AutoencoderModel::DefaultArchitecture(8);
  TrainOptions options = pipeline.autoencoder;
  options.seed = DeriveSeed(pipeline.seed, 2);
  const auto trained = Train(InitModel(arch, DeriveSeed(pipeline.seed, 1)), data, options);
  if (!(trained.model == *result.model)) {
    return {false, "standalone training diverges from the pipeline model"};
  }
  const auto& h = trained.loss_history;
  size_t reached = 0;
  while (reached < h.size() && !(h[reached] < 1e-4)) ++reached;
  const bool ok = h.size() == 100 && reached < h.size();
  return {ok, Fmt("epoch-1 MSE %.3e, epoch-100 MSE %.3e", h.front(), h.back()) +
                  (ok ? ", below 1e-4 from epoch " + std::to_string(reached + 1)
                      : ", never below 1e-4")};
}

Outcome DbscanOracle() {
  Rng rng(77);
  int mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = std::uniform_int_distribution<size_t>(1, 200)(rng);
    const size_t d = std::uniform_int_distribution<size_t>(1, 8)(rng);
    const double eps = std::uniform_real_distribution<double>(0.05, 3.0)(rng);
    const size_t min_samples = std::uniform_int_distribution<size_t>(1, 8)(rng);
    std::normal_distribution<double> g(0.0, 1.5);
    oracle::Rows rows(n, std::vector<double>(d));
    for (auto& r : rows) {
      for (double& v : r) v = g(rng);
    }
    const auto got = Cluster(FeatureMatrix::FromRows(rows), {eps, min_samples}, 1);
    const auto want = oracle::NaiveDbscan(rows, eps, min_samples);
    bool same = got.labels == want.labels;
    for (size_t i = 0; same && i < n; ++i) {
      const int k = got.kinds[i] == PointKind::kCore     ? 0
                    : got.kinds[i] == PointKind::kBorder ? 1
                                                         : 2;
      same = k == want.kinds[i];
    }
    mismatches += same ? 0 : 1;
  }
  return {mismatches == 0,
          std::to_string(50 - mismatches) + "/50 instances identical to the naive reference"};
}

Outcome SixGroupScenario() {
  const auto pts = fixture::SixGroups();
  const auto m = FeatureMatrix::FromRows(pts.rows);
  auto noise_groups = [&](size_t min_samples) {
    const auto l = Cluster(m, {fixture::kSixGroupsEps, min_samples});
    std::set<int> out;
    for (size_t i = 0; i < pts.rows.size(); ++i) {
      if (l.labels[i] == kNoiseLabel) out.insert(pts.group[i]);
    }
    return out;
  };
  const auto three = noise_groups(3);
  const auto five = noise_groups(5);
  auto show = [](const std::set<int>& s) {
    std::string out = "{";
    for (int g : s) out += (out.size() > 1 ? "," : "") + std::to_string(g);
    return out + "}";
  };
  const bool ok = three == std::set<int>{3, 5} && five == std::set<int>{3, 5, 6};
  return {ok, "noise groups: min_samples=3 " + show(three) + ", min_samples=5 " + show(five)};
}

Outcome ResampleConservation() {
  Rng rng(99);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const size_t channels = std::uniform_int_distribution<size_t>(1, 8)(rng);
    std::uniform_int_distribution<int64_t> step(1, 5'000'000);
    std::normal_distribution<double> g(50.0, 200.0);
    std::vector<Instant> t;
    std::vector<double> values;
    std::map<int64_t, std::pair<size_t, std::vector<double>>> sums;
    int64_t now = 1'755'216'000'000'000 + step(rng);
    for (int i = 0; i < 2000; ++i) {
      now += step(rng);
      t.push_back(Instant{} + Duration{now});
      auto& [count, sum] = sums[now / 60'000'000];
      if (sum.empty()) sum.assign(channels, 0.0);
      ++count;
      for (size_t c = 0; c < channels; ++c) {
        const double v = g(rng);
        values.push_back(v);
        sum[c] += v;
      }
    }
    std::vector<std::string> names;
    for (size_t c = 0; c < channels; ++c) names.push_back("c" + std::to_string(c));
    const auto r = Resample(SensorFrame(names, t, values), std::chrono::seconds{60});
    if (r.rows() != sums.size()) return {false, "window count mismatch"};
    size_t row = 0;
    for (const auto& [window, cs] : sums) {
      for (size_t c = 0; c < channels; ++c) {
        const double rebuilt = *r.value(row, c) * static_cast<double>(cs.first);
        const double rel = std::abs(rebuilt - cs.second[c]) /
                           std::max(1.0, std::abs(cs.second[c]));
        worst = std::max(worst, rel);
      }
      ++row;
    }
  }

  SynthConfig config;
  config.days = 1;
  config.accident_time = ParseTimestamp("2025-08-15T12:00:00Z");
  const auto data = Generate(config);
  std::map<int64_t, size_t> per_minute;
  for (Instant ts : data.frame.timestamps()) {
    ++per_minute[ts.time_since_epoch().count() / 60'000'000];
  }
  size_t bad_minutes = 0;
  for (const auto& [minute, count] : per_minute) bad_minutes += count == 300 ? 0 : 1;
  const bool ok = worst < 1e-9 && per_minute.size() == 1440 && bad_minutes == 0;
  return {ok, Fmt("worst relative error %.2e; ", worst) + std::to_string(per_minute.size()) +
                  " minutes at 5 Hz, " + std::to_string(bad_minutes) +
                  " without exactly 300 rows"};
}

struct RunBytes {
  std::string scores;
  std::string ranking;
  std::string svg;
  size_t flagged = 0;
};

RunBytes RunOnce(const SensorFrame& frame, DetectorKind kind, int n_jobs) {
  PipelineConfig config;
  config.detector = kind;
  config.n_jobs = n_jobs;
  config.seed = 11;
  const auto result = RunPipeline(frame, config);
  RunBytes out;
  std::ostringstream scores, ranking;
  WriteScoresCsv(scores, result.scores);
  WriteRankingCsv(ranking, result.ranking);
  out.scores = scores.str();
  out.ranking = ranking.str();
  PlotSpec spec;
  spec.title = std::string(DetectorName(kind));
  spec.timestamps = result.scores.timestamps;
  spec.series = {{"normalized score", result.scores.normalized_scores}};
  for (size_t i = 0; i < 5; ++i) {
    spec.markers.push_back({result.ranking.entries[i].timestamp, MarkerKind::kAnomaly,
                            "#" + std::to_string(i + 1)});
  }
  out.svg = RenderTimelineSvg(spec);
  out.flagged = result.flagged.size();
  return out;
}

const SyntheticDataset& DefaultDataset() {
  static const SyntheticDataset data = Generate(SynthConfig{});
  return data;
}

Outcome Determinism() {
  const auto& frame = DefaultDataset().frame;
  std::string detail;
  bool ok = true;
  for (auto kind : {DetectorKind::kIsolationForest, DetectorKind::kAutoencoder,
                    DetectorKind::kDbscan}) {
    const RunBytes a = RunOnce(frame, kind, 1);
    const RunBytes b = RunOnce(frame, kind, 1);
    const RunBytes c = RunOnce(frame, kind, 4);
    const bool same = a.scores == b.scores && a.ranking == b.ranking && a.svg == b.svg &&
                      a.scores == c.scores && a.ranking == c.ranking && a.svg == c.svg;
    ok = ok && same;
    detail += std::string(detail.empty() ? "" : ", ") + std::string(DetectorName(kind)) +
              (same ? " identical" : " DIFFERS");
  }
  return {ok, detail + " (repeat and 1 vs 4 threads; scores, ranking, svg)"};
}

Outcome ContaminationArithmetic() {
  std::vector<Instant> t(15840);
  std::vector<double> raw(15840);
  for (size_t i = 0; i < raw.size(); ++i) {
    t[i] = Instant{} + std::chrono::minutes{i};
    raw[i] = std::sin(static_cast<double>(i));
  }
  const auto scores = MakeScoreSeries(t, raw, Orientation::kMoreIsAnomalous);
  const size_t arithmetic = ThresholdByContamination(scores, 0.0001).size();
  PipelineConfig config;
  config.detector = DetectorKind::kIsolationForest;
  const auto result = RunPipeline(DefaultDataset().frame, config);
  const size_t rows = result.scores.timestamps.size();
  const size_t flagged = result.flagged.size();
  const bool ok = arithmetic == 2 && rows == 15840 && flagged == 2;
  return {ok, "ceil(15840 * 0.0001) -> " + std::to_string(arithmetic) +
                  " rows; iforest pipeline on " + std::to_string(rows) + " rows flagged " +
                  std::to_string(flagged)};
}

}  // namespace
}  // namespace bridgewatch

int main() {
  using bridgewatch::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "DBSCAN accident reproduction, 10 seeds", 60, bridgewatch::DbscanReproduction},
      {2, "iForest planted outlier", 30, bridgewatch::IsolationForestOutlier},
      {3, "autoencoder gradient check", 10, bridgewatch::AutoencoderGradients},
      {4, "autoencoder convergence", 60, bridgewatch::AutoencoderConvergence},
      {5, "DBSCAN oracle equivalence", 10, bridgewatch::DbscanOracle},
      {6, "six-group noise scenario", 0, bridgewatch::SixGroupScenario},
      {7, "resampling conservation", 0, bridgewatch::ResampleConservation},
      {8, "determinism", 0, bridgewatch::Determinism},
      {9, "contamination thresholding", 0, bridgewatch::ContaminationArithmetic},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bridgewatch::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = bridgewatch::Fmt("%.1fs", seconds);
    if (c.budget_seconds > 0) {
      timing += bridgewatch::Fmt(" of %.0fs budget", c.budget_seconds);
      if (seconds >= c.budget_seconds) {
        outcome.pass = false;
        timing += ", OVER BUDGET";
      }
    }
    failed += outcome.pass ? 0 : 1;
    std::printf("[%s] %d. %s: %s [%s]\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
