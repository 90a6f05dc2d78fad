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

// Command-line front end. Everything goes through the C API in
// bridgewatch/bridgewatch.h.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or validation failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bridgewatch/bridgewatch.h"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

// Carries an exit code out of a subcommand.
struct CommandFailure {
  int exit_code;
};

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, HandleDeleter<T, Free>>;

using Frame = Handle<bw_frame, bw_frame_free>;
using Truth = Handle<bw_truth, bw_truth_free>;
using SynthConfig = Handle<bw_synth_config, bw_synth_config_free>;
using PipelineConfig = Handle<bw_pipeline_config, bw_pipeline_config_free>;
using Result = Handle<bw_result, bw_result_free>;
using Scores = Handle<bw_scores, bw_scores_free>;
using Ranking = Handle<bw_ranking, bw_ranking_free>;
using Report = Handle<bw_report, bw_report_free>;
using Grid = Handle<bw_grid, bw_grid_free>;
using GridResult = Handle<bw_grid_result, bw_grid_result_free>;
using Plot = Handle<bw_plot, bw_plot_free>;

void Check(bw_status status, const std::string& context) {
  if (status == BW_OK) return;
  std::fprintf(stderr, "bridgewatch: %s: %s\n", context.c_str(), bw_last_error());
  throw CommandFailure{status == BW_ERR_IO || status == BW_ERR_INTERNAL ? kExitIo
                                                                         : kExitUsage};
}

[[noreturn]] void Usage(const std::string& message) {
  std::fprintf(stderr, "bridgewatch: %s\n", message.c_str());
  throw CommandFailure{kExitUsage};
}

std::string OutPath(const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "bridgewatch: cannot create %s: %s\n", dir.c_str(),
                 ec.message().c_str());
    throw CommandFailure{kExitIo};
  }
  return (std::filesystem::path(dir) / name).string();
}

std::vector<std::string> SplitComma(const std::string& text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t end = text.find(',', start);
    const std::string part =
        text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) out.push_back(part);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

struct FrameOptions {
  std::string input;
  std::string channels;
  std::string timestamp_format;
};

void AddFrameOptions(CLI::App* cmd, FrameOptions& o, bool required = true) {
  auto* opt = cmd->add_option("--input,-i", o.input, "Input sensor CSV");
  if (required) opt->required();
  cmd->add_option("--channels", o.channels,
                  "Comma-separated channel list (default: acx,acy,acz,adc2 for devices A and B)");
  cmd->add_option("--timestamp-format", o.timestamp_format,
                  "Timestamp pattern (default %Y-%m-%dT%H:%M:%SZ)");
}

Frame LoadFrame(const FrameOptions& o) {
  const auto names = SplitComma(o.channels);
  std::vector<const char*> ptrs;
  for (const auto& n : names) ptrs.push_back(n.c_str());
  bw_frame* raw = nullptr;
  Check(bw_frame_load_csv(o.input.c_str(), ptrs.empty() ? nullptr : ptrs.data(),
                          ptrs.size(),
                          o.timestamp_format.empty() ? nullptr : o.timestamp_format.c_str(),
                          &raw),
        o.input);
  return Frame(raw);
}

Truth LoadTruth(const std::string& path) {
  bw_truth* raw = nullptr;
  Check(bw_truth_load(path.c_str(), &raw), path);
  return Truth(raw);
}

struct PipelineOptions {
  std::string detector = "dbscan";
  std::vector<std::string> params;
  std::optional<uint64_t> seed;
  std::optional<double> window;
  std::optional<size_t> top_k;
};

void AddPipelineOptions(CLI::App* cmd, PipelineOptions& o) {
  cmd->add_option("--detector,-d", o.detector, "iforest | autoencoder | dbscan")
      ->capture_default_str();
  cmd->add_option("--param,-p", o.params, "Detector parameter key=value (repeatable)");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--window", o.window, "Resample window in seconds (default 60)");
  cmd->add_option("--top-k", o.top_k, "Ranking depth for reports (default 5)");
}

PipelineConfig MakePipelineConfig(const PipelineOptions& o) {
  bw_pipeline_config* raw = nullptr;
  Check(bw_pipeline_config_create(o.detector.c_str(), &raw), "--detector");
  PipelineConfig config(raw);
  auto set = [&](const std::string& key, const std::string& value) {
    Check(bw_pipeline_config_set(config.get(), key.c_str(), value.c_str()),
          "parameter " + key);
  };
  if (o.seed) set("seed", std::to_string(*o.seed));
  if (o.window) set("window", std::to_string(*o.window));
  if (o.top_k) set("top_k", std::to_string(*o.top_k));
  for (const auto& kv : o.params) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      Usage("--param expects key=value, got '" + kv + "'");
    }
    set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return config;
}

// ---- synth ----------------------------------------------------------------

struct SynthOptions {
  std::string out = ".";
  std::optional<uint64_t> seed;
  std::optional<int> days;
  std::optional<double> rate;
  std::string start;
  std::string accident;
  std::optional<double> spike;
  std::string accident_channels;
  double missing = 0.0;
  int n_jobs = 1;
};

void RunSynth(const SynthOptions& o) {
  bw_synth_config* raw = nullptr;
  Check(bw_synth_config_create(&raw), "synth");
  SynthConfig config(raw);
  auto set = [&](const char* key, const std::string& value, const char* flag) {
    Check(bw_synth_config_set(config.get(), key, value.c_str()), flag);
  };
  if (o.seed) set("seed", std::to_string(*o.seed), "--seed");
  if (o.days) set("days", std::to_string(*o.days), "--days");
  if (o.rate) set("rate", std::to_string(*o.rate), "--rate");
  if (!o.start.empty()) set("start", o.start, "--start");
  if (!o.accident.empty()) set("accident", o.accident, "--accident");
  if (o.spike) set("spike", std::to_string(*o.spike), "--spike");
  if (!o.accident_channels.empty()) {
    set("accident_channels", o.accident_channels, "--accident-channels");
  }
  set("n_jobs", std::to_string(o.n_jobs), "--n-jobs");

  bw_frame* frame_raw = nullptr;
  bw_truth* truth_raw = nullptr;
  Check(bw_synth_generate(config.get(), &frame_raw, &truth_raw), "synth");
  Frame frame(frame_raw);
  Truth truth(truth_raw);
  if (o.missing > 0.0) {
    bw_frame* holed = nullptr;
    Check(bw_frame_inject_missing(frame.get(), o.missing, o.seed.value_or(0), &holed),
          "--missing");
    frame.reset(holed);
  }
  const std::string csv = OutPath(o.out, "synth.csv");
  const std::string sidecar = OutPath(o.out, "truth.txt");
  Check(bw_frame_save_csv(frame.get(), csv.c_str()), csv);
  Check(bw_truth_save(truth.get(), sidecar.c_str()), sidecar);
  std::printf("wrote %zu rows x %zu channels to %s\nground truth: %s\n",
              bw_frame_rows(frame.get()), bw_frame_channel_count(frame.get()),
              csv.c_str(), sidecar.c_str());
}

// ---- ingest ---------------------------------------------------------------

void RunIngest(const FrameOptions& f, const std::string& out, double window) {
  Frame frame = LoadFrame(f);
  bw_frame* cleaned_raw = nullptr;
  size_t dropped = 0;
  Check(bw_frame_drop_missing(frame.get(), &cleaned_raw, &dropped), "drop missing");
  Frame cleaned(cleaned_raw);
  bw_frame* resampled_raw = nullptr;
  Check(bw_frame_resample(cleaned.get(), window, &resampled_raw), "resample");
  Frame resampled(resampled_raw);
  const std::string path = OutPath(out, "ingested.csv");
  Check(bw_frame_save_csv(resampled.get(), path.c_str()), path);
  std::printf("read %zu rows, dropped %zu with missing values, wrote %zu rows to %s\n",
              bw_frame_rows(frame.get()), dropped, bw_frame_rows(resampled.get()),
              path.c_str());
}

// ---- detect ---------------------------------------------------------------

void RunDetect(const FrameOptions& f, const PipelineOptions& p, const std::string& out,
               const std::string& truth_path) {
  PipelineConfig config = MakePipelineConfig(p);
  std::optional<Truth> truth;
  if (!truth_path.empty()) truth = LoadTruth(truth_path);
  Frame frame = LoadFrame(f);

  bw_result* raw = nullptr;
  Check(bw_pipeline_run(frame.get(), config.get(), &raw), "pipeline");
  Result result(raw);

  const std::string scores = OutPath(out, "scores.csv");
  const std::string ranking = OutPath(out, "ranking.csv");
  const std::string report_path = OutPath(out, "report.txt");
  Check(bw_result_save_scores(result.get(), scores.c_str()), scores);
  Check(bw_result_save_ranking(result.get(), ranking.c_str()), ranking);
  if (p.detector == "autoencoder") {
    const std::string model = OutPath(out, "model.txt");
    Check(bw_result_save_model(result.get(), model.c_str()), model);
  }
  bw_report* report_raw = nullptr;
  Check(bw_result_report(result.get(), config.get(), truth ? truth->get() : nullptr,
                         &report_raw),
        "report");
  Report report(report_raw);
  Check(bw_report_save(report.get(), report_path.c_str()), report_path);
  std::fputs(bw_report_text(report.get()), stdout);
}

// ---- grid -----------------------------------------------------------------

void RunGrid(const FrameOptions& f, const PipelineOptions& p, const std::string& out,
             const std::string& grid_path, const std::string& truth_path) {
  PipelineConfig base = MakePipelineConfig(p);
  bw_grid* grid_raw = nullptr;
  Check(bw_grid_load(grid_path.c_str(), p.detector.c_str(), &grid_raw), grid_path);
  Grid grid(grid_raw);
  Truth truth = LoadTruth(truth_path);
  Frame frame = LoadFrame(f);

  bw_grid_result* result_raw = nullptr;
  Check(bw_grid_search(frame.get(), base.get(), grid.get(), truth.get(), &result_raw),
        "grid search");
  GridResult result(result_raw);
  const std::string table = OutPath(out, "grid.csv");
  const std::string best = OutPath(out, "best_params.txt");
  Check(bw_grid_result_save_table(result.get(), table.c_str()), table);
  Check(bw_grid_result_save_best(result.get(), best.c_str()), best);
  const size_t best_index = bw_grid_result_best_index(result.get());
  const size_t hit = bw_grid_result_hit_rank(result.get(), best_index);
  std::printf("%zu combinations; best #%zu (hit_rank=%s)\nwrote %s and %s\n",
              bw_grid_result_size(result.get()), best_index + 1,
              hit ? std::to_string(hit).c_str() : "none", table.c_str(), best.c_str());
}

// ---- eval -----------------------------------------------------------------

void RunEval(const std::string& ranking_path, const std::string& truth_path,
             size_t top_k, const std::string& out) {
  bw_ranking* ranking_raw = nullptr;
  Check(bw_ranking_load_csv(ranking_path.c_str(), &ranking_raw), ranking_path);
  Ranking ranking(ranking_raw);
  Truth truth = LoadTruth(truth_path);
  bw_report* report_raw = nullptr;
  Check(bw_evaluate(ranking.get(), truth.get(), top_k, &report_raw), "evaluate");
  Report report(report_raw);
  if (!out.empty()) {
    const std::string path = OutPath(out, "report.txt");
    Check(bw_report_save(report.get(), path.c_str()), path);
  }
  std::fputs(bw_report_text(report.get()), stdout);
}

// ---- plot -----------------------------------------------------------------

struct PlotOptions {
  FrameOptions frame;
  std::string scores;
  std::string ranking;
  std::string truth;
  std::string out = "timeline.svg";
  std::string title;
  std::string series;
  size_t top_k = 5;
  int width = 1200;
  int height = 400;
};

void RunPlot(const PlotOptions& o) {
  if (o.frame.input.empty() == o.scores.empty()) {
    Usage("plot needs exactly one of --input or --scores");
  }
  bw_plot* plot_raw = nullptr;
  Check(bw_plot_create(o.width, o.height, o.title.c_str(), &plot_raw), "plot");
  Plot plot(plot_raw);

  if (!o.scores.empty()) {
    bw_scores* raw = nullptr;
    Check(bw_scores_load_csv(o.scores.c_str(), &raw), o.scores);
    Scores scores(raw);
    const size_t n = bw_scores_rows(scores.get());
    std::vector<int64_t> ts(n);
    std::vector<double> values(n);
    for (size_t i = 0; i < n; ++i) {
      ts[i] = bw_scores_timestamp_us(scores.get(), i);
      values[i] = bw_scores_normalized(scores.get(), i);
    }
    Check(bw_plot_set_timestamps(plot.get(), ts.data(), n), "plot");
    Check(bw_plot_add_series(plot.get(), "normalized score", values.data(), n), "plot");
  } else {
    Frame frame = LoadFrame(o.frame);
    const size_t n = bw_frame_rows(frame.get());
    std::vector<int64_t> ts(n);
    for (size_t i = 0; i < n; ++i) ts[i] = bw_frame_timestamp_us(frame.get(), i);
    Check(bw_plot_set_timestamps(plot.get(), ts.data(), n), "plot");
    const auto wanted = SplitComma(o.series);
    for (size_t c = 0; c < bw_frame_channel_count(frame.get()); ++c) {
      const std::string name = bw_frame_channel_name(frame.get(), c);
      if (!wanted.empty() &&
          std::find(wanted.begin(), wanted.end(), name) == wanted.end()) {
        continue;
      }
      std::vector<double> values(n);
      for (size_t i = 0; i < n; ++i) values[i] = bw_frame_value(frame.get(), i, c);
      Check(bw_plot_add_series(plot.get(), name.c_str(), values.data(), n), "plot");
    }
  }
  if (!o.ranking.empty()) {
    bw_ranking* raw = nullptr;
    Check(bw_ranking_load_csv(o.ranking.c_str(), &raw), o.ranking);
    Ranking ranking(raw);
    for (size_t i = 0; i < o.top_k && i < bw_ranking_size(ranking.get()); ++i) {
      const std::string label = "#" + std::to_string(i + 1);
      Check(bw_plot_add_marker(plot.get(), bw_ranking_timestamp_us(ranking.get(), i), 0,
                               label.c_str()),
            "plot");
    }
  }
  if (!o.truth.empty()) {
    Truth truth = LoadTruth(o.truth);
    Check(bw_plot_add_marker(plot.get(), bw_truth_event_time_us(truth.get()), 1,
                             "ground truth"),
          "plot");
  }
  std::error_code ec;
  const auto parent = std::filesystem::path(o.out).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  Check(bw_plot_save_svg(plot.get(), o.out.c_str()), o.out);
  std::printf("wrote %s\n", o.out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bridgewatch: anomaly detection for bridge sensor logs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bw_version()));

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic sensor log with one accident");
  synth_cmd->add_option("--out,-o", synth.out, "Output directory")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--days", synth.days, "Days of data (default 11)");
  synth_cmd->add_option("--rate", synth.rate, "Sample rate in Hz (default 5)");
  synth_cmd->add_option("--start", synth.start, "Start instant, ISO-8601 UTC");
  synth_cmd->add_option("--accident", synth.accident, "Accident instant, ISO-8601 UTC");
  synth_cmd->add_option("--spike", synth.spike, "Accident spike in noise sigmas (default 25)");
  synth_cmd->add_option("--accident-channels", synth.accident_channels,
                        "Comma-separated channels hit by the accident (default all)");
  synth_cmd->add_option("--missing", synth.missing, "Fraction of cells to blank out");
  synth_cmd->add_option("--n-jobs", synth.n_jobs, "Generator threads")->capture_default_str();

  FrameOptions ingest_frame;
  std::string ingest_out = ".";
  double ingest_window = 60.0;
  auto* ingest_cmd = app.add_subcommand("ingest", "Clean and resample a sensor CSV");
  AddFrameOptions(ingest_cmd, ingest_frame);
  ingest_cmd->add_option("--out,-o", ingest_out, "Output directory")->capture_default_str();
  ingest_cmd->add_option("--window", ingest_window, "Resample window in seconds")
      ->capture_default_str();

  FrameOptions detect_frame;
  PipelineOptions detect_pipeline;
  std::string detect_out = ".";
  std::string detect_truth;
  auto* detect_cmd = app.add_subcommand("detect", "Score, rank and report anomalies");
  AddFrameOptions(detect_cmd, detect_frame);
  AddPipelineOptions(detect_cmd, detect_pipeline);
  detect_cmd->add_option("--out,-o", detect_out, "Output directory")->capture_default_str();
  detect_cmd->add_option("--truth", detect_truth, "Ground-truth sidecar to evaluate against");

  FrameOptions grid_frame;
  PipelineOptions grid_pipeline;
  std::string grid_out = ".";
  std::string grid_file;
  std::string grid_truth;
  auto* grid_cmd = app.add_subcommand("grid", "Grid-search detector parameters");
  AddFrameOptions(grid_cmd, grid_frame);
  AddPipelineOptions(grid_cmd, grid_pipeline);
  grid_cmd->add_option("--grid,-g", grid_file, "Grid file (key=v1,v2 per line)")->required();
  grid_cmd->add_option("--truth", grid_truth, "Ground-truth sidecar")->required();
  grid_cmd->add_option("--out,-o", grid_out, "Output directory")->capture_default_str();

  std::string eval_ranking;
  std::string eval_truth;
  std::string eval_out;
  size_t eval_top_k = 5;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a ranking against a ground truth");
  eval_cmd->add_option("--ranking,-r", eval_ranking, "Ranking CSV")->required();
  eval_cmd->add_option("--truth", eval_truth, "Ground-truth sidecar")->required();
  eval_cmd->add_option("--top-k", eval_top_k, "Ranking depth")->capture_default_str();
  eval_cmd->add_option("--out,-o", eval_out, "Directory for report.txt");

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render a timeline SVG");
  AddFrameOptions(plot_cmd, plot.frame, /*required=*/false);
  plot_cmd->add_option("--scores", plot.scores, "Scores CSV to draw instead of channels");
  plot_cmd->add_option("--series", plot.series, "Comma-separated channels to draw");
  plot_cmd->add_option("--ranking", plot.ranking, "Ranking CSV; marks the top-k entries");
  plot_cmd->add_option("--top-k", plot.top_k, "Ranked markers to draw")->capture_default_str();
  plot_cmd->add_option("--truth", plot.truth, "Ground-truth sidecar to mark");
  plot_cmd->add_option("--title", plot.title, "Plot title");
  plot_cmd->add_option("--width", plot.width, "Width in pixels")->capture_default_str();
  plot_cmd->add_option("--height", plot.height, "Height in pixels")->capture_default_str();
  plot_cmd->add_option("--out,-o", plot.out, "Output SVG path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*synth_cmd) RunSynth(synth);
    else if (*ingest_cmd) RunIngest(ingest_frame, ingest_out, ingest_window);
    else if (*detect_cmd) RunDetect(detect_frame, detect_pipeline, detect_out, detect_truth);
    else if (*grid_cmd) RunGrid(grid_frame, grid_pipeline, grid_out, grid_file, grid_truth);
    else if (*eval_cmd) RunEval(eval_ranking, eval_truth, eval_top_k, eval_out);
    else if (*plot_cmd) RunPlot(plot);
  } catch (const CommandFailure& f) {
    return f.exit_code;
  }
  return 0;
}
