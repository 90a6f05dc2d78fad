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

#include "bridgewatch/detect.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "bridgewatch/error.hpp"
#include "bridgewatch/ingest.hpp"
#include "bridgewatch/random.hpp"
#include "text.hpp"

namespace bridgewatch {
namespace {

constexpr uint64_t kInitStream = 1;
constexpr uint64_t kTrainStream = 2;

template <typename Int>
Int ParseInteger(std::string_view key, std::string_view text) {
  text = Trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgumentError("parameter '" + std::string(key) +
                               "': expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

double ParseReal(std::string_view key, std::string_view text) {
  const auto v = ParseCell(text);
  if (!v) {
    throw InvalidArgumentError("parameter '" + std::string(key) +
                               "': expected a number, got '" + std::string(text) + "'");
  }
  return *v;
}

size_t ParsePositive(std::string_view key, std::string_view text) {
  const long long v = ParseInteger<long long>(key, text);
  if (v < 1) {
    throw InvalidArgumentError("parameter '" + std::string(key) + "' must be >= 1");
  }
  return static_cast<size_t>(v);
}

[[noreturn]] void WrongDetector(std::string_view key, DetectorKind kind) {
  throw InvalidArgumentError("parameter '" + std::string(key) +
                             "' does not apply to detector " +
                             std::string(DetectorName(kind)));
}

template <typename Fn>
auto InStage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), "stage '" + std::string(stage) + "': " + e.what());
  }
}

std::vector<size_t> FlagAtThreshold(const AnomalyRanking& ranking, double threshold) {
  std::vector<size_t> out;
  for (const auto& e : ranking.entries) {
    if (e.score < threshold) break;
    out.push_back(e.row);
  }
  return out;
}

}  // namespace

std::string_view DetectorName(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kIsolationForest: return "iforest";
    case DetectorKind::kAutoencoder: return "autoencoder";
    case DetectorKind::kDbscan: return "dbscan";
  }
  return "unknown";
}

DetectorKind ParseDetectorKind(std::string_view name) {
  if (name == "iforest") return DetectorKind::kIsolationForest;
  if (name == "autoencoder") return DetectorKind::kAutoencoder;
  if (name == "dbscan") return DetectorKind::kDbscan;
  throw InvalidArgumentError("unknown detector '" + std::string(name) +
                             "' (expected iforest, autoencoder or dbscan)");
}

void PipelineConfig::Set(std::string_view key, std::string_view value) {
  if (key == "window") {
    const double s = ParseReal(key, value);
    if (!(s > 0.0)) throw InvalidArgumentError("parameter 'window' must be positive");
    resample_window = SecondsToDuration(s);
  } else if (key == "top_k") {
    top_k = ParsePositive(key, value);
  } else if (key == "seed") {
    seed = ParseInteger<uint64_t>(key, value);
  } else if (key == "n_jobs") {
    n_jobs = ParseInteger<int>(key, value);
  } else if (key == "threshold") {
    const double t = ParseReal(key, value);
    if (!(t >= 0.0 && t <= 1.0)) {
      throw InvalidArgumentError("parameter 'threshold' must lie in [0, 1]");
    }
    threshold = t;
  } else if (key == "n_estimators" || key == "contamination" ||
             key == "subsample_size") {
    if (detector != DetectorKind::kIsolationForest) WrongDetector(key, detector);
    if (key == "n_estimators") {
      iforest.n_estimators = static_cast<int>(ParsePositive(key, value));
    } else if (key == "subsample_size") {
      iforest.subsample_size = ParsePositive(key, value);
    } else {
      const double c = ParseReal(key, value);
      if (!(c > 0.0 && c < 1.0)) {
        throw InvalidArgumentError("parameter 'contamination' must lie in (0, 1)");
      }
      iforest.contamination = c;
    }
  } else if (key == "epochs" || key == "batch_size" || key == "learning_rate" ||
             key == "beta1" || key == "beta2" || key == "epsilon") {
    if (detector != DetectorKind::kAutoencoder) WrongDetector(key, detector);
    if (key == "epochs") {
      const int e = ParseInteger<int>(key, value);
      if (e < 0) throw InvalidArgumentError("parameter 'epochs' must be >= 0");
      autoencoder.epochs = e;
    } else if (key == "batch_size") {
      autoencoder.batch_size = ParsePositive(key, value);
    } else {
      const double v = ParseReal(key, value);
      if (!(v > 0.0)) {
        throw InvalidArgumentError("parameter '" + std::string(key) + "' must be positive");
      }
      if ((key == "beta1" || key == "beta2") && !(v < 1.0)) {
        throw InvalidArgumentError("parameter '" + std::string(key) + "' must be < 1");
      }
      if (key == "learning_rate") autoencoder.adam.learning_rate = v;
      else if (key == "beta1") autoencoder.adam.beta1 = v;
      else if (key == "beta2") autoencoder.adam.beta2 = v;
      else autoencoder.adam.epsilon = v;
    }
  } else if (key == "eps" || key == "min_samples" || key == "n_neighbors") {
    if (detector != DetectorKind::kDbscan) WrongDetector(key, detector);
    if (key == "eps") {
      const double e = ParseReal(key, value);
      if (!(e > 0.0)) throw InvalidArgumentError("parameter 'eps' must be positive");
      dbscan.eps = e;
    } else if (key == "min_samples") {
      dbscan.min_samples = ParsePositive(key, value);
    } else {
      n_neighbors = ParsePositive(key, value);
    }
  } else {
    throw InvalidArgumentError("unknown parameter '" + std::string(key) + "'");
  }
}

ParamList PipelineConfig::DetectorParams() const {
  ParamList out;
  switch (detector) {
    case DetectorKind::kIsolationForest:
      out.emplace_back("n_estimators", std::to_string(iforest.n_estimators));
      out.emplace_back("contamination", FormatNumber(iforest.contamination));
      out.emplace_back("subsample_size", std::to_string(iforest.subsample_size));
      break;
    case DetectorKind::kAutoencoder:
      out.emplace_back("epochs", std::to_string(autoencoder.epochs));
      out.emplace_back("batch_size", std::to_string(autoencoder.batch_size));
      out.emplace_back("learning_rate", FormatNumber(autoencoder.adam.learning_rate));
      out.emplace_back("beta1", FormatNumber(autoencoder.adam.beta1));
      out.emplace_back("beta2", FormatNumber(autoencoder.adam.beta2));
      out.emplace_back("epsilon", FormatNumber(autoencoder.adam.epsilon));
      break;
    case DetectorKind::kDbscan:
      out.emplace_back("eps", FormatNumber(dbscan.eps));
      out.emplace_back("min_samples", std::to_string(dbscan.min_samples));
      out.emplace_back("n_neighbors", std::to_string(n_neighbors));
      break;
  }
  out.emplace_back("window", FormatNumber(DurationToSeconds(resample_window)));
  out.emplace_back("seed", std::to_string(seed));
  if (threshold) out.emplace_back("threshold", FormatNumber(*threshold));
  return out;
}

void PipelineConfig::Validate() const {
  if (top_k < 1) throw InvalidArgumentError("top_k must be >= 1");
  if (resample_window <= Duration::zero()) {
    throw InvalidArgumentError("window must be positive");
  }
  switch (detector) {
    case DetectorKind::kIsolationForest: iforest.Validate(); break;
    case DetectorKind::kDbscan:
      dbscan.Validate();
      if (n_neighbors < 1) throw InvalidArgumentError("n_neighbors must be >= 1");
      break;
    case DetectorKind::kAutoencoder:
      if (autoencoder.batch_size < 1) throw InvalidArgumentError("batch_size must be >= 1");
      break;
  }
}

AnomalyRanking Rank(const ScoreSeries& scores) {
  const auto& s = scores.normalized_scores;
  const auto& ts = scores.timestamps;
  std::vector<size_t> order(s.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (s[a] != s[b]) return s[a] > s[b];
    if (ts[a] != ts[b]) return ts[a] < ts[b];
    return a < b;
  });
  AnomalyRanking ranking;
  ranking.entries.reserve(order.size());
  for (size_t k = 0; k < order.size(); ++k) {
    ranking.entries.push_back({k + 1, ts[order[k]], s[order[k]], order[k]});
  }
  return ranking;
}

PreprocessResult Preprocess(const SensorFrame& frame, Duration window) {
  PreprocessResult out;
  auto cleaned = InStage("clean", [&] { return DropMissing(frame); });
  out.dropped_rows = cleaned.dropped;
  if (cleaned.frame.empty()) {
    throw InvalidArgumentError("stage 'clean': no complete rows remain (" +
                               std::to_string(cleaned.dropped) + " dropped)");
  }
  const SensorFrame resampled =
      InStage("resample", [&] { return Resample(cleaned.frame, window); });
  out.matrix = InStage("scale", [&] {
    return FitMinMax(FeatureMatrix::FromFrame(resampled));
  });
  return out;
}

PipelineResult ScoreMatrix(const FeatureMatrix& matrix, const PipelineConfig& config) {
  config.Validate();
  PipelineResult out;
  InStage("detect", [&] {
    switch (config.detector) {
      case DetectorKind::kIsolationForest: {
        IsolationForestParams p = config.iforest;
        p.seed = config.seed;
        p.n_jobs = config.n_jobs;
        const auto forest = IsolationForest::Fit(matrix, p);
        out.scores = forest.ScoreMatrix(matrix);
        out.ranking = Rank(out.scores);
        out.flagged = ThresholdByContamination(out.scores, p.contamination);
        break;
      }
      case DetectorKind::kAutoencoder: {
        const auto arch = AutoencoderModel::DefaultArchitecture(matrix.cols());
        TrainOptions opts = config.autoencoder;
        opts.seed = DeriveSeed(config.seed, kTrainStream);
        auto trained = Train(InitModel(arch, DeriveSeed(config.seed, kInitStream)),
                             matrix, opts);
        out.scores = ReconstructionScores(trained.model, matrix, config.n_jobs);
        out.ranking = Rank(out.scores);
        out.model = std::move(trained.model);
        break;
      }
      case DetectorKind::kDbscan: {
        auto det = DetectDbscan(matrix, config.dbscan, config.n_neighbors,
                                config.n_jobs);
        out.scores = std::move(det.scores);
        out.ranking = Rank(out.scores);
        for (const auto& e : out.ranking.entries) {
          if (det.labeling.kinds[e.row] == PointKind::kNoise) out.flagged.push_back(e.row);
        }
        break;
      }
    }
  });
  if (config.threshold) out.flagged = FlagAtThreshold(out.ranking, *config.threshold);
  return out;
}

PipelineResult RunPipeline(const SensorFrame& frame, const PipelineConfig& config) {
  config.Validate();
  auto pre = Preprocess(frame, config.resample_window);
  PipelineResult out = ScoreMatrix(pre.matrix, config);
  out.dropped_rows = pre.dropped_rows;
  return out;
}

EvalReport Summarize(const AnomalyRanking& ranking, size_t top_k) {
  if (ranking.entries.empty()) throw InvalidArgumentError("ranking is empty");
  if (top_k == 0) throw InvalidArgumentError("top_k must be >= 1");
  EvalReport report;
  report.top_k = top_k;
  const size_t k = std::min(top_k, ranking.entries.size());
  report.top_entries.assign(ranking.entries.begin(),
                            ranking.entries.begin() + static_cast<long>(k));
  return report;
}

EvalReport Evaluate(const AnomalyRanking& ranking, const GroundTruth& truth,
                    size_t top_k) {
  EvalReport report = Summarize(ranking, top_k);
  report.truth = truth;
  for (const auto& e : ranking.entries) {
    const Duration gap = e.timestamp >= truth.event_time
                             ? e.timestamp - truth.event_time
                             : truth.event_time - e.timestamp;
    if (gap <= truth.tolerance) {
      if (!report.hit_rank || e.rank < *report.hit_rank) report.hit_rank = e.rank;
    }
  }
  report.hit_at_k = report.hit_rank && *report.hit_rank <= top_k;
  return report;
}

void ParamGrid::Add(std::string key, std::vector<std::string> values) {
  if (values.empty()) {
    throw InvalidArgumentError("grid parameter '" + key + "' has no values");
  }
  for (const auto& axis : axes) {
    if (axis.first == key) {
      throw InvalidArgumentError("grid parameter '" + key + "' given twice");
    }
  }
  auto pos = std::lower_bound(axes.begin(), axes.end(), key,
                              [](const auto& axis, const std::string& k) {
                                return axis.first < k;
                              });
  axes.insert(pos, {std::move(key), std::move(values)});
}

size_t ParamGrid::CombinationCount() const {
  if (axes.empty()) return 0;
  size_t n = 1;
  for (const auto& axis : axes) {
    n *= axis.second.size();
    // Saturate rather than overflow; callers only compare against the cap.
    if (n > kMaxGridCombinations * 1000) return n;
  }
  return n;
}

ParamList ParamGrid::Combination(size_t index) const {
  ParamList out(axes.size());
  for (size_t a = axes.size(); a-- > 0;) {
    const auto& values = axes[a].second;
    out[a] = {axes[a].first, values[index % values.size()]};
    index /= values.size();
  }
  return out;
}

bool GridRowBetter(const GridRow& a, const GridRow& b) {
  const size_t ra = a.report.hit_rank.value_or(std::numeric_limits<size_t>::max());
  const size_t rb = b.report.hit_rank.value_or(std::numeric_limits<size_t>::max());
  if (ra != rb) return ra < rb;
  if (a.margin != b.margin) return a.margin > b.margin;
  for (size_t i = 0; i < std::min(a.params.size(), b.params.size()); ++i) {
    const auto& va = a.params[i].second;
    const auto& vb = b.params[i].second;
    const auto na = ParseCell(va);
    const auto nb = ParseCell(vb);
    if (na && nb) {
      if (*na != *nb) return *na < *nb;
    } else if (va != vb) {
      return va < vb;
    }
  }
  return false;
}

GridSearchResult GridSearch(const SensorFrame& frame, const PipelineConfig& base,
                            const ParamGrid& grid, const GroundTruth& truth) {
  const size_t count = grid.CombinationCount();
  if (count == 0) throw InvalidArgumentError("parameter grid is empty");
  if (count > kMaxGridCombinations) {
    throw InvalidArgumentError("parameter grid has " + std::to_string(count) +
                               " combinations (limit " +
                               std::to_string(kMaxGridCombinations) + ")");
  }
  // Resolve every combination before running anything so a bad value fails
  // fast.
  std::vector<PipelineConfig> configs;
  configs.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    PipelineConfig cfg = base;
    for (const auto& [k, v] : grid.Combination(i)) cfg.Set(k, v);
    cfg.Validate();
    configs.push_back(cfg);
  }

  std::map<Duration::rep, PreprocessResult> preprocessed;
  GridSearchResult result;
  for (size_t i = 0; i < count; ++i) {
    const PipelineConfig& cfg = configs[i];
    auto it = preprocessed.find(cfg.resample_window.count());
    if (it == preprocessed.end()) {
      it = preprocessed
               .emplace(cfg.resample_window.count(),
                        Preprocess(frame, cfg.resample_window))
               .first;
    }
    const PipelineResult run = ScoreMatrix(it->second.matrix, cfg);
    GridRow row;
    row.params = grid.Combination(i);
    row.report = Evaluate(run.ranking, truth, cfg.top_k);
    row.report.detector = std::string(DetectorName(cfg.detector));
    row.report.params = cfg.DetectorParams();
    row.report.rows = run.scores.timestamps.size();
    row.report.flagged = run.flagged.size();
    const auto& e = run.ranking.entries;
    row.margin = e.size() >= 2 ? e[0].score - e[1].score : e[0].score;
    result.table.push_back(std::move(row));
  }
  for (size_t i = 1; i < result.table.size(); ++i) {
    if (GridRowBetter(result.table[i], result.table[result.best_index])) {
      result.best_index = i;
    }
  }
  return result;
}

}  // namespace bridgewatch
