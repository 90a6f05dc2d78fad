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
#include <fstream>
#include <limits>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bridgewatch/bridgewatch.h"
#include "bridgewatch/detect.hpp"
#include "bridgewatch/error.hpp"
#include "bridgewatch/formats.hpp"
#include "bridgewatch/ingest.hpp"
#include "bridgewatch/plot.hpp"
#include "bridgewatch/synthgen.hpp"
#include "text.hpp"

namespace bw = bridgewatch;

struct bw_frame {
  bw::SensorFrame frame;
};
struct bw_truth {
  bw::GroundTruth truth;
};
struct bw_synth_config {
  bw::SynthConfig config;
};
struct bw_pipeline_config {
  bw::PipelineConfig config;
};
struct bw_result {
  bw::PipelineResult result;
};
struct bw_scores {
  bw::ScoreSeries scores;
};
struct bw_ranking {
  bw::AnomalyRanking ranking;
};
struct bw_report {
  bw::EvalReport report;
  std::string text;
};
struct bw_grid {
  bw::ParamGrid grid;
};
struct bw_grid_result {
  bw::GridSearchResult result;
};
struct bw_plot {
  bw::PlotSpec spec;
};

namespace {

thread_local std::string g_last_error;

bw_status Fail(bw_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
bw_status Guard(Fn&& fn) {
  try {
    fn();
    return BW_OK;
  } catch (const bw::Error& e) {
    switch (e.code()) {
      case bw::ErrorCode::kInvalidArgument: return Fail(BW_ERR_INVALID_ARGUMENT, e.what());
      case bw::ErrorCode::kParse: return Fail(BW_ERR_PARSE, e.what());
      case bw::ErrorCode::kIo: return Fail(BW_ERR_IO, e.what());
      case bw::ErrorCode::kInternal: break;
    }
    return Fail(BW_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(BW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(BW_ERR_INTERNAL, e.what());
  }
}

void Require(const void* p, const char* what) {
  if (p == nullptr) {
    throw bw::InvalidArgumentError(std::string(what) + " must not be NULL");
  }
}

std::ifstream OpenIn(const char* path) {
  Require(path, "path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bw::IoError(std::string("cannot open ") + path);
  return in;
}

template <typename Fn>
void WriteFile(const char* path, Fn&& write) {
  Require(path, "path");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bw::IoError(std::string("cannot write ") + path);
  write(out);
  out.flush();
  if (!out) throw bw::IoError(std::string("failed writing ") + path);
}

int64_t Micros(bw::Instant t) { return t.time_since_epoch().count(); }
bw::Instant FromMicros(int64_t us) { return bw::Instant{bw::Duration{us}}; }

std::vector<std::string> SplitList(std::string_view text) {
  std::vector<std::string> out;
  for (auto part : bw::SplitFields(text)) {
    part = bw::Trim(part);
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

extern "C" {

const char* bw_version(void) { return "1.0.0"; }

const char* bw_last_error(void) { return g_last_error.c_str(); }

const char* bw_status_name(bw_status status) {
  switch (status) {
    case BW_OK: return "ok";
    case BW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BW_ERR_PARSE: return "parse error";
    case BW_ERR_IO: return "i/o error";
    case BW_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

bw_status bw_frame_load_csv(const char* path, const char* const* channels,
                            size_t n_channels, const char* timestamp_format,
                            bw_frame** out) {
  return Guard([&] {
    Require(out, "out");
    bw::IngestConfig config;
    if (n_channels > 0) {
      Require(channels, "channels");
      config.expected_channels.clear();
      for (size_t i = 0; i < n_channels; ++i) {
        Require(channels[i], "channel name");
        config.expected_channels.emplace_back(channels[i]);
      }
    }
    if (timestamp_format != nullptr) config.timestamp_format = timestamp_format;
    auto in = OpenIn(path);
    *out = new bw_frame{bw::ParseCsv(in, config)};
  });
}

bw_status bw_frame_save_csv(const bw_frame* frame, const char* path) {
  return Guard([&] {
    Require(frame, "frame");
    WriteFile(path, [&](std::ostream& o) { bw::WriteCsv(o, frame->frame); });
  });
}

void bw_frame_free(bw_frame* frame) { delete frame; }

size_t bw_frame_rows(const bw_frame* frame) { return frame ? frame->frame.rows() : 0; }

size_t bw_frame_channel_count(const bw_frame* frame) {
  return frame ? frame->frame.channel_count() : 0;
}

const char* bw_frame_channel_name(const bw_frame* frame, size_t index) {
  if (!frame || index >= frame->frame.channel_count()) return nullptr;
  return frame->frame.channels()[index].c_str();
}

int64_t bw_frame_timestamp_us(const bw_frame* frame, size_t row) {
  if (!frame || row >= frame->frame.rows()) return 0;
  return Micros(frame->frame.timestamps()[row]);
}

double bw_frame_value(const bw_frame* frame, size_t row, size_t channel) {
  if (!frame || row >= frame->frame.rows() || channel >= frame->frame.channel_count()) {
    return kNaN;
  }
  return frame->frame.value(row, channel).value_or(kNaN);
}

bw_status bw_frame_drop_missing(const bw_frame* frame, bw_frame** out,
                                size_t* dropped) {
  return Guard([&] {
    Require(frame, "frame");
    Require(out, "out");
    auto r = bw::DropMissing(frame->frame);
    if (dropped) *dropped = r.dropped;
    *out = new bw_frame{std::move(r.frame)};
  });
}

bw_status bw_frame_resample(const bw_frame* frame, double window_seconds,
                            bw_frame** out) {
  return Guard([&] {
    Require(frame, "frame");
    Require(out, "out");
    *out = new bw_frame{
        bw::Resample(frame->frame, bw::SecondsToDuration(window_seconds))};
  });
}

bw_status bw_frame_inject_missing(const bw_frame* frame, double fraction,
                                  uint64_t seed, bw_frame** out) {
  return Guard([&] {
    Require(frame, "frame");
    Require(out, "out");
    *out = new bw_frame{bw::InjectMissing(frame->frame, fraction, seed)};
  });
}

bw_status bw_truth_create(int64_t event_time_us, double tolerance_seconds,
                          bw_truth** out) {
  return Guard([&] {
    Require(out, "out");
    if (!(tolerance_seconds > 0.0)) {
      throw bw::InvalidArgumentError("tolerance must be positive");
    }
    *out = new bw_truth{{FromMicros(event_time_us),
                         bw::SecondsToDuration(tolerance_seconds)}};
  });
}

bw_status bw_truth_load(const char* path, bw_truth** out) {
  return Guard([&] {
    Require(out, "out");
    auto in = OpenIn(path);
    *out = new bw_truth{bw::ReadGroundTruth(in)};
  });
}

bw_status bw_truth_save(const bw_truth* truth, const char* path) {
  return Guard([&] {
    Require(truth, "truth");
    WriteFile(path, [&](std::ostream& o) { bw::WriteGroundTruth(o, truth->truth); });
  });
}

int64_t bw_truth_event_time_us(const bw_truth* truth) {
  return truth ? Micros(truth->truth.event_time) : 0;
}

double bw_truth_tolerance_seconds(const bw_truth* truth) {
  return truth ? bw::DurationToSeconds(truth->truth.tolerance) : 0.0;
}

void bw_truth_free(bw_truth* truth) { delete truth; }

bw_status bw_synth_config_create(bw_synth_config** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new bw_synth_config{};
  });
}

bw_status bw_synth_config_set(bw_synth_config* config, const char* key,
                              const char* value) {
  return Guard([&] {
    Require(config, "config");
    Require(key, "key");
    Require(value, "value");
    const std::string k = key;
    auto& c = config->config;
    auto number = [&]() {
      const auto v = bw::ParseCell(value);
      if (!v) {
        throw bw::InvalidArgumentError(k + ": expected a number, got '" + value + "'");
      }
      return *v;
    };
    auto instant = [&]() {
      const auto t = bw::TryParseTimestamp(bw::Trim(value));
      if (!t) {
        throw bw::InvalidArgumentError(k + ": malformed timestamp '" +
                                       std::string(value) +
                                       "' (expected YYYY-MM-DDTHH:MM:SSZ)");
      }
      return *t;
    };
    auto integer = [&]() {
      const double v = number();
      if (v != std::floor(v) || v < 0 || v > 9.007199254740992e15) {
        throw bw::InvalidArgumentError(k + ": expected a non-negative integer");
      }
      return static_cast<uint64_t>(v);
    };
    if (k == "start") c.start_time = instant();
    else if (k == "accident") c.accident_time = instant();
    else if (k == "days") c.days = static_cast<int>(integer());
    else if (k == "rate") c.sample_rate_hz = number();
    else if (k == "spike") c.spike_magnitude = number();
    else if (k == "strain_shift") c.strain_shift = number();
    else if (k == "traffic_rate") c.traffic_rate_per_hour = number();
    else if (k == "seed") c.seed = integer();
    else if (k == "n_jobs") c.n_jobs = static_cast<int>(number());
    else if (k == "accident_channels") c.accident_channels = SplitList(value);
    else throw bw::InvalidArgumentError("unknown synth setting '" + k + "'");
  });
}

void bw_synth_config_free(bw_synth_config* config) { delete config; }

bw_status bw_synth_generate(const bw_synth_config* config, bw_frame** frame,
                            bw_truth** truth) {
  return Guard([&] {
    Require(config, "config");
    Require(frame, "frame");
    auto data = bw::Generate(config->config);
    auto* f = new bw_frame{std::move(data.frame)};
    if (truth) *truth = new bw_truth{data.truth};
    *frame = f;
  });
}

bw_status bw_pipeline_config_create(const char* detector, bw_pipeline_config** out) {
  return Guard([&] {
    Require(out, "out");
    Require(detector, "detector");
    auto* c = new bw_pipeline_config{};
    c->config.detector = bw::ParseDetectorKind(detector);
    *out = c;
  });
}

bw_status bw_pipeline_config_set(bw_pipeline_config* config, const char* key,
                                 const char* value) {
  return Guard([&] {
    Require(config, "config");
    Require(key, "key");
    Require(value, "value");
    config->config.Set(key, value);
  });
}

size_t bw_pipeline_config_top_k(const bw_pipeline_config* config) {
  return config ? config->config.top_k : 0;
}

void bw_pipeline_config_free(bw_pipeline_config* config) { delete config; }

bw_status bw_pipeline_run(const bw_frame* frame, const bw_pipeline_config* config,
                          bw_result** out) {
  return Guard([&] {
    Require(frame, "frame");
    Require(config, "config");
    Require(out, "out");
    *out = new bw_result{bw::RunPipeline(frame->frame, config->config)};
  });
}

size_t bw_result_rows(const bw_result* result) {
  return result ? result->result.scores.timestamps.size() : 0;
}

size_t bw_result_flagged_count(const bw_result* result) {
  return result ? result->result.flagged.size() : 0;
}

size_t bw_result_dropped_rows(const bw_result* result) {
  return result ? result->result.dropped_rows : 0;
}

bw_status bw_result_save_scores(const bw_result* result, const char* path) {
  return Guard([&] {
    Require(result, "result");
    WriteFile(path, [&](std::ostream& o) { bw::WriteScoresCsv(o, result->result.scores); });
  });
}

bw_status bw_result_save_ranking(const bw_result* result, const char* path) {
  return Guard([&] {
    Require(result, "result");
    WriteFile(path,
              [&](std::ostream& o) { bw::WriteRankingCsv(o, result->result.ranking); });
  });
}

bw_status bw_result_save_model(const bw_result* result, const char* path) {
  return Guard([&] {
    Require(result, "result");
    if (!result->result.model) {
      throw bw::InvalidArgumentError("result carries no autoencoder model");
    }
    WriteFile(path, [&](std::ostream& o) { bw::SaveModel(o, *result->result.model); });
  });
}

bw_status bw_result_scores(const bw_result* result, bw_scores** out) {
  return Guard([&] {
    Require(result, "result");
    Require(out, "out");
    *out = new bw_scores{result->result.scores};
  });
}

bw_status bw_result_ranking(const bw_result* result, bw_ranking** out) {
  return Guard([&] {
    Require(result, "result");
    Require(out, "out");
    *out = new bw_ranking{result->result.ranking};
  });
}

bw_status bw_result_report(const bw_result* result, const bw_pipeline_config* config,
                           const bw_truth* truth, bw_report** out) {
  return Guard([&] {
    Require(result, "result");
    Require(config, "config");
    Require(out, "out");
    const auto& r = result->result;
    const auto& c = config->config;
    bw::EvalReport report = truth ? bw::Evaluate(r.ranking, truth->truth, c.top_k)
                                  : bw::Summarize(r.ranking, c.top_k);
    report.detector = std::string(bw::DetectorName(c.detector));
    report.params = c.DetectorParams();
    report.rows = r.scores.timestamps.size();
    report.flagged = r.flagged.size();
    std::ostringstream text;
    bw::WriteReport(text, report);
    *out = new bw_report{std::move(report), text.str()};
  });
}

void bw_result_free(bw_result* result) { delete result; }

bw_status bw_scores_load_csv(const char* path, bw_scores** out) {
  return Guard([&] {
    Require(out, "out");
    auto in = OpenIn(path);
    *out = new bw_scores{bw::ReadScoresCsv(in)};
  });
}

size_t bw_scores_rows(const bw_scores* scores) {
  return scores ? scores->scores.timestamps.size() : 0;
}

int64_t bw_scores_timestamp_us(const bw_scores* scores, size_t row) {
  if (!scores || row >= scores->scores.timestamps.size()) return 0;
  return Micros(scores->scores.timestamps[row]);
}

double bw_scores_raw(const bw_scores* scores, size_t row) {
  if (!scores || row >= scores->scores.raw_scores.size()) return kNaN;
  return scores->scores.raw_scores[row];
}

double bw_scores_normalized(const bw_scores* scores, size_t row) {
  if (!scores || row >= scores->scores.normalized_scores.size()) return kNaN;
  return scores->scores.normalized_scores[row];
}

void bw_scores_free(bw_scores* scores) { delete scores; }

bw_status bw_ranking_load_csv(const char* path, bw_ranking** out) {
  return Guard([&] {
    Require(out, "out");
    auto in = OpenIn(path);
    *out = new bw_ranking{bw::ReadRankingCsv(in)};
  });
}

size_t bw_ranking_size(const bw_ranking* ranking) {
  return ranking ? ranking->ranking.entries.size() : 0;
}

int64_t bw_ranking_timestamp_us(const bw_ranking* ranking, size_t index) {
  if (!ranking || index >= ranking->ranking.entries.size()) return 0;
  return Micros(ranking->ranking.entries[index].timestamp);
}

double bw_ranking_score(const bw_ranking* ranking, size_t index) {
  if (!ranking || index >= ranking->ranking.entries.size()) return kNaN;
  return ranking->ranking.entries[index].score;
}

void bw_ranking_free(bw_ranking* ranking) { delete ranking; }

bw_status bw_evaluate(const bw_ranking* ranking, const bw_truth* truth, size_t top_k,
                      bw_report** out) {
  return Guard([&] {
    Require(ranking, "ranking");
    Require(truth, "truth");
    Require(out, "out");
    auto report = bw::Evaluate(ranking->ranking, truth->truth, top_k);
    std::ostringstream text;
    bw::WriteReport(text, report);
    *out = new bw_report{std::move(report), text.str()};
  });
}

size_t bw_report_hit_rank(const bw_report* report) {
  return report && report->report.hit_rank ? *report->report.hit_rank : 0;
}

int bw_report_hit_at_k(const bw_report* report) {
  return report && report->report.hit_at_k ? 1 : 0;
}

bw_status bw_report_save(const bw_report* report, const char* path) {
  return Guard([&] {
    Require(report, "report");
    WriteFile(path, [&](std::ostream& o) { o << report->text; });
  });
}

const char* bw_report_text(const bw_report* report) {
  return report ? report->text.c_str() : "";
}

void bw_report_free(bw_report* report) { delete report; }

bw_status bw_grid_load(const char* path, const char* detector, bw_grid** out) {
  return Guard([&] {
    Require(out, "out");
    Require(detector, "detector");
    const auto kind = bw::ParseDetectorKind(detector);
    auto in = OpenIn(path);
    *out = new bw_grid{bw::ParseGridFile(in, kind)};
  });
}

size_t bw_grid_combinations(const bw_grid* grid) {
  return grid ? grid->grid.CombinationCount() : 0;
}

void bw_grid_free(bw_grid* grid) { delete grid; }

bw_status bw_grid_search(const bw_frame* frame, const bw_pipeline_config* base,
                         const bw_grid* grid, const bw_truth* truth,
                         bw_grid_result** out) {
  return Guard([&] {
    Require(frame, "frame");
    Require(base, "base");
    Require(grid, "grid");
    Require(truth, "truth");
    Require(out, "out");
    *out = new bw_grid_result{
        bw::GridSearch(frame->frame, base->config, grid->grid, truth->truth)};
  });
}

size_t bw_grid_result_size(const bw_grid_result* result) {
  return result ? result->result.table.size() : 0;
}

size_t bw_grid_result_best_index(const bw_grid_result* result) {
  return result ? result->result.best_index : 0;
}

size_t bw_grid_result_hit_rank(const bw_grid_result* result, size_t index) {
  if (!result || index >= result->result.table.size()) return 0;
  return result->result.table[index].report.hit_rank.value_or(0);
}

bw_status bw_grid_result_save_table(const bw_grid_result* result, const char* path) {
  return Guard([&] {
    Require(result, "result");
    WriteFile(path, [&](std::ostream& o) { bw::WriteGridTable(o, result->result); });
  });
}

bw_status bw_grid_result_save_best(const bw_grid_result* result, const char* path) {
  return Guard([&] {
    Require(result, "result");
    WriteFile(path, [&](std::ostream& o) { bw::WriteBestParams(o, result->result); });
  });
}

void bw_grid_result_free(bw_grid_result* result) { delete result; }

bw_status bw_plot_create(int width, int height, const char* title, bw_plot** out) {
  return Guard([&] {
    Require(out, "out");
    if (width <= 0 || height <= 0) {
      throw bw::InvalidArgumentError("plot dimensions must be positive");
    }
    auto* p = new bw_plot{};
    p->spec.width = width;
    p->spec.height = height;
    if (title) p->spec.title = title;
    *out = p;
  });
}

bw_status bw_plot_set_timestamps(bw_plot* plot, const int64_t* timestamps_us,
                                 size_t n) {
  return Guard([&] {
    Require(plot, "plot");
    if (n > 0) Require(timestamps_us, "timestamps");
    if (!plot->spec.series.empty()) {
      throw bw::InvalidArgumentError("timestamps must be set before series");
    }
    plot->spec.timestamps.clear();
    for (size_t i = 0; i < n; ++i) plot->spec.timestamps.push_back(FromMicros(timestamps_us[i]));
  });
}

bw_status bw_plot_add_series(bw_plot* plot, const char* name, const double* values,
                             size_t n) {
  return Guard([&] {
    Require(plot, "plot");
    Require(name, "name");
    if (n > 0) Require(values, "values");
    if (n != plot->spec.timestamps.size()) {
      throw bw::InvalidArgumentError("series '" + std::string(name) + "' has " +
                                     std::to_string(n) + " values for " +
                                     std::to_string(plot->spec.timestamps.size()) +
                                     " timestamps");
    }
    plot->spec.series.push_back({name, std::vector<double>(values, values + n)});
  });
}

bw_status bw_plot_add_marker(bw_plot* plot, int64_t time_us, int kind,
                             const char* label) {
  return Guard([&] {
    Require(plot, "plot");
    if (kind != 0 && kind != 1) throw bw::InvalidArgumentError("marker kind must be 0 or 1");
    plot->spec.markers.push_back(
        {FromMicros(time_us),
         kind == 1 ? bw::MarkerKind::kGroundTruth : bw::MarkerKind::kAnomaly,
         label ? label : ""});
  });
}

bw_status bw_plot_save_svg(const bw_plot* plot, const char* path) {
  return Guard([&] {
    Require(plot, "plot");
    const std::string svg = bw::RenderTimelineSvg(plot->spec);
    WriteFile(path, [&](std::ostream& o) { o << svg; });
  });
}

void bw_plot_free(bw_plot* plot) { delete plot; }

}  // extern "C"
