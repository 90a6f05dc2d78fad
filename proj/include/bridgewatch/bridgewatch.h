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

/* C interface to the bridgewatch anomaly-detection library.
 *
 * Every object is an opaque handle created by a *_create / *_load / producer
 * call and released with the matching *_free (NULL is accepted). Functions
 * that can fail return bw_status; on failure bw_last_error() describes the
 * problem for the calling thread until the next failing call. Returned
 * strings are owned by the handle they came from. */

#ifndef BRIDGEWATCH_BRIDGEWATCH_H_
#define BRIDGEWATCH_BRIDGEWATCH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BRIDGEWATCH_BUILDING)
#    define BW_API __declspec(dllexport)
#  else
#    define BW_API __declspec(dllimport)
#  endif
#else
#  define BW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bw_status {
  BW_OK = 0,
  BW_ERR_INVALID_ARGUMENT = 1,
  BW_ERR_PARSE = 2,
  BW_ERR_IO = 3,
  BW_ERR_INTERNAL = 4
} bw_status;

typedef struct bw_frame bw_frame;
typedef struct bw_truth bw_truth;
typedef struct bw_synth_config bw_synth_config;
typedef struct bw_pipeline_config bw_pipeline_config;
typedef struct bw_result bw_result;
typedef struct bw_scores bw_scores;
typedef struct bw_ranking bw_ranking;
typedef struct bw_report bw_report;
typedef struct bw_grid bw_grid;
typedef struct bw_grid_result bw_grid_result;
typedef struct bw_plot bw_plot;

BW_API const char* bw_version(void);
BW_API const char* bw_last_error(void);
BW_API const char* bw_status_name(bw_status status);

/* ---- Frames ------------------------------------------------------------ */

/* channels may be NULL (n_channels 0) for the default eight channels;
 * timestamp_format may be NULL for ISO-8601. */
BW_API bw_status bw_frame_load_csv(const char* path, const char* const* channels,
                                   size_t n_channels, const char* timestamp_format,
                                   bw_frame** out);
BW_API bw_status bw_frame_save_csv(const bw_frame* frame, const char* path);
BW_API void bw_frame_free(bw_frame* frame);

BW_API size_t bw_frame_rows(const bw_frame* frame);
BW_API size_t bw_frame_channel_count(const bw_frame* frame);
BW_API const char* bw_frame_channel_name(const bw_frame* frame, size_t index);
/* Microseconds since the Unix epoch. */
BW_API int64_t bw_frame_timestamp_us(const bw_frame* frame, size_t row);
/* NaN when missing. */
BW_API double bw_frame_value(const bw_frame* frame, size_t row, size_t channel);

BW_API bw_status bw_frame_drop_missing(const bw_frame* frame, bw_frame** out,
                                       size_t* dropped);
BW_API bw_status bw_frame_resample(const bw_frame* frame, double window_seconds,
                                   bw_frame** out);
BW_API bw_status bw_frame_inject_missing(const bw_frame* frame, double fraction,
                                         uint64_t seed, bw_frame** out);

/* ---- Ground truth ------------------------------------------------------ */

BW_API bw_status bw_truth_create(int64_t event_time_us, double tolerance_seconds,
                                 bw_truth** out);
BW_API bw_status bw_truth_load(const char* path, bw_truth** out);
BW_API bw_status bw_truth_save(const bw_truth* truth, const char* path);
BW_API int64_t bw_truth_event_time_us(const bw_truth* truth);
BW_API double bw_truth_tolerance_seconds(const bw_truth* truth);
BW_API void bw_truth_free(bw_truth* truth);

/* ---- Synthetic data ---------------------------------------------------- */

BW_API bw_status bw_synth_config_create(bw_synth_config** out);
/* Keys: start, accident (ISO-8601), days, rate, spike, strain_shift,
 * traffic_rate, seed, n_jobs, accident_channels (comma list). */
BW_API bw_status bw_synth_config_set(bw_synth_config* config, const char* key,
                                     const char* value);
BW_API void bw_synth_config_free(bw_synth_config* config);
BW_API bw_status bw_synth_generate(const bw_synth_config* config, bw_frame** frame,
                                   bw_truth** truth);

/* ---- Pipeline ---------------------------------------------------------- */

/* detector: "iforest", "autoencoder" or "dbscan". */
BW_API bw_status bw_pipeline_config_create(const char* detector,
                                           bw_pipeline_config** out);
BW_API bw_status bw_pipeline_config_set(bw_pipeline_config* config,
                                        const char* key, const char* value);
BW_API size_t bw_pipeline_config_top_k(const bw_pipeline_config* config);
BW_API void bw_pipeline_config_free(bw_pipeline_config* config);

BW_API bw_status bw_pipeline_run(const bw_frame* frame,
                                 const bw_pipeline_config* config, bw_result** out);
BW_API size_t bw_result_rows(const bw_result* result);
BW_API size_t bw_result_flagged_count(const bw_result* result);
BW_API size_t bw_result_dropped_rows(const bw_result* result);
BW_API bw_status bw_result_save_scores(const bw_result* result, const char* path);
BW_API bw_status bw_result_save_ranking(const bw_result* result, const char* path);
/* Fails with BW_ERR_INVALID_ARGUMENT unless the detector was autoencoder. */
BW_API bw_status bw_result_save_model(const bw_result* result, const char* path);
BW_API bw_status bw_result_scores(const bw_result* result, bw_scores** out);
BW_API bw_status bw_result_ranking(const bw_result* result, bw_ranking** out);
/* truth may be NULL for a report without hit fields. */
BW_API bw_status bw_result_report(const bw_result* result,
                                  const bw_pipeline_config* config,
                                  const bw_truth* truth, bw_report** out);
BW_API void bw_result_free(bw_result* result);

/* ---- Scores and rankings ---------------------------------------------- */

BW_API bw_status bw_scores_load_csv(const char* path, bw_scores** out);
BW_API size_t bw_scores_rows(const bw_scores* scores);
BW_API int64_t bw_scores_timestamp_us(const bw_scores* scores, size_t row);
BW_API double bw_scores_raw(const bw_scores* scores, size_t row);
BW_API double bw_scores_normalized(const bw_scores* scores, size_t row);
BW_API void bw_scores_free(bw_scores* scores);

BW_API bw_status bw_ranking_load_csv(const char* path, bw_ranking** out);
BW_API size_t bw_ranking_size(const bw_ranking* ranking);
BW_API int64_t bw_ranking_timestamp_us(const bw_ranking* ranking, size_t index);
BW_API double bw_ranking_score(const bw_ranking* ranking, size_t index);
BW_API void bw_ranking_free(bw_ranking* ranking);

/* ---- Evaluation -------------------------------------------------------- */

BW_API bw_status bw_evaluate(const bw_ranking* ranking, const bw_truth* truth,
                             size_t top_k, bw_report** out);
/* 0 when no ranked entry falls inside the tolerance window. */
BW_API size_t bw_report_hit_rank(const bw_report* report);
BW_API int bw_report_hit_at_k(const bw_report* report);
BW_API bw_status bw_report_save(const bw_report* report, const char* path);
/* Report text; owned by the report. */
BW_API const char* bw_report_text(const bw_report* report);
BW_API void bw_report_free(bw_report* report);

/* ---- Grid search ------------------------------------------------------- */

BW_API bw_status bw_grid_load(const char* path, const char* detector, bw_grid** out);
BW_API size_t bw_grid_combinations(const bw_grid* grid);
BW_API void bw_grid_free(bw_grid* grid);

BW_API bw_status bw_grid_search(const bw_frame* frame,
                                const bw_pipeline_config* base, const bw_grid* grid,
                                const bw_truth* truth, bw_grid_result** out);
BW_API size_t bw_grid_result_size(const bw_grid_result* result);
BW_API size_t bw_grid_result_best_index(const bw_grid_result* result);
/* 0 when the combination has no hit. */
BW_API size_t bw_grid_result_hit_rank(const bw_grid_result* result, size_t index);
BW_API bw_status bw_grid_result_save_table(const bw_grid_result* result,
                                           const char* path);
BW_API bw_status bw_grid_result_save_best(const bw_grid_result* result,
                                          const char* path);
BW_API void bw_grid_result_free(bw_grid_result* result);

/* ---- Timeline plots ---------------------------------------------------- */

BW_API bw_status bw_plot_create(int width, int height, const char* title,
                                bw_plot** out);
/* Shared x axis; must be set before adding series. */
BW_API bw_status bw_plot_set_timestamps(bw_plot* plot, const int64_t* timestamps_us,
                                        size_t n);
BW_API bw_status bw_plot_add_series(bw_plot* plot, const char* name,
                                    const double* values, size_t n);
/* kind: 0 = anomaly, 1 = ground truth. label may be NULL. */
BW_API bw_status bw_plot_add_marker(bw_plot* plot, int64_t time_us, int kind,
                                    const char* label);
BW_API bw_status bw_plot_save_svg(const bw_plot* plot, const char* path);
BW_API void bw_plot_free(bw_plot* plot);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* BRIDGEWATCH_BRIDGEWATCH_H_ */
