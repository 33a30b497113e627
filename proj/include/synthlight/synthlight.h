/*
 * Copyright 2026 The Synthlight Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libsynthlight.
 *
 * Every fallible call returns an sl_status. On failure a description is
 * available from sl_last_error() on the same thread until the next call.
 * Objects are opaque handles released by their *_destroy function; strings
 * returned through char** out-parameters are released with sl_string_free.
 * Light states are encoded 0 = red, 1 = yellow, 2 = green.
 */

#ifndef SYNTHLIGHT_SYNTHLIGHT_H_
#define SYNTHLIGHT_SYNTHLIGHT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SL_API __declspec(dllexport)
#else
#define SL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sl_status {
  SL_OK = 0,
  SL_ERR_INVALID_ARGUMENT = 1,
  SL_ERR_CONFIG = 2,
  SL_ERR_IO = 3,
  SL_ERR_PARSE = 4,
  SL_ERR_DIMENSION = 5,
  SL_ERR_INSUFFICIENT_FOREGROUNDS = 6,
  SL_ERR_EMPTY_SUBSET = 7,
  SL_ERR_COUNT_MISMATCH = 8,
  SL_ERR_INTERNAL = 9
} sl_status;

typedef enum sl_content { SL_CONTENT_FULL_SCENE = 0, SL_CONTENT_LIGHTS_ONLY = 1 } sl_content;

typedef enum sl_pairing { SL_PAIRING_TRAINING = 0, SL_PAIRING_VALIDATION = 1 } sl_pairing;

typedef enum sl_dataset_mode {
  SL_MODE_FULLY_CONTEXTUALIZED = 0,
  SL_MODE_UNCONTEXTUALIZED = 1,
  SL_MODE_TEMPLATES_ONLY = 2,
  SL_MODE_EXTERNAL = 3
} sl_dataset_mode;

typedef enum sl_overlap_mode { SL_OVERLAP_SMALLEST = 0, SL_OVERLAP_LARGEST = 1 } sl_overlap_mode;

SL_API const char* sl_version(void);
SL_API const char* sl_last_error(void);
/* 1-based input line of the last parse failure, 0 if it had none. */
SL_API size_t sl_last_error_line(void);
SL_API void sl_string_free(char* s);

/* Scene configuration. */
typedef struct sl_scene_config sl_scene_config;

SL_API sl_status sl_scene_config_create_default(sl_scene_config** out);
/* JSON object whose keys override the defaults; unknown keys are rejected. */
SL_API sl_status sl_scene_config_from_json(const char* json, sl_scene_config** out);
SL_API sl_status sl_scene_config_load(const char* path, sl_scene_config** out);
SL_API sl_status sl_scene_config_to_json(const sl_scene_config* config, char** out_json);
SL_API void sl_scene_config_destroy(sl_scene_config* config);

/* A single rendered foreground held in memory. */
typedef struct sl_label {
  int state;
  double xmin;
  double ymin;
  double xmax;
  double ymax;
} sl_label;

typedef struct sl_foreground sl_foreground;

SL_API sl_status sl_foreground_render(const sl_scene_config* config, uint64_t scene_seed,
                                      sl_content content, sl_foreground** out);
SL_API int sl_foreground_width(const sl_foreground* fg);
SL_API int sl_foreground_height(const sl_foreground* fg);
/* Row-major RGBA, width * height * 4 bytes, owned by the handle. */
SL_API const uint8_t* sl_foreground_pixels(const sl_foreground* fg);
SL_API size_t sl_foreground_label_count(const sl_foreground* fg);
SL_API sl_status sl_foreground_label(const sl_foreground* fg, size_t index, sl_label* out);
SL_API void sl_foreground_destroy(sl_foreground* fg);

typedef struct sl_generate_options {
  uint64_t seed;
  size_t count;
  sl_content content;
  int jobs; /* 0 = all cores */
  int dump_scenes;
} sl_generate_options;

/* Writes fg_NNNNNN.png and fg_NNNNNN.json into out_dir (created if absent). */
SL_API sl_status sl_generate_foregrounds(const sl_scene_config* config,
                                         const sl_generate_options* options, const char* out_dir);
/* Same layout, with each labeled light drawn as a flat 2D template. */
SL_API sl_status sl_generate_templates(const sl_scene_config* config,
                                       const sl_generate_options* options, const char* out_dir);

/* Background preparation. */
typedef struct sl_prepare_result {
  size_t written;
  size_t excluded_tagged;
  size_t excluded_small;
  size_t unreadable;
} sl_prepare_result;

/* Reads a COCO-style index, drops images carrying any of filter_tags (the
 * default traffic categories when tag_count is 0) or smaller than 120 px, and
 * writes 640x480 center crops plus out_dir/backgrounds.json. */
SL_API sl_status sl_prepare_backgrounds(const char* index_path, const char* image_root,
                                        const char* const* filter_tags, size_t tag_count,
                                        const char* out_dir, const char* extension, int jobs,
                                        sl_prepare_result* out);

/* Splits an annotated manifest into positive/negative pool files. */
SL_API sl_status sl_split_pos_neg(const char* manifest_path, const char* image_root,
                                  const char* positive_out, const char* negative_out,
                                  size_t* positives, size_t* negatives);

/* Dataset assembly. */
typedef struct sl_compose_options {
  uint64_t seed;
  size_t count;
  sl_pairing pairing;
  sl_dataset_mode mode;
  const char* extension; /* ".jpg" or ".png"; NULL = ".jpg" */
  int jobs;
} sl_compose_options;

/* Composes img_NNNNNN images into out_dir and writes the manifest last, via
 * a temporary file and rename. manifest_path NULL = out_dir/manifest.json. */
SL_API sl_status sl_compose_dataset(const char* foreground_dir, const char* background_dir,
                                    const sl_compose_options* options, const char* out_dir,
                                    const char* manifest_path);

/* Manifest procedures. */
SL_API sl_status sl_rebalance(const char* manifest_path, size_t target_count,
                              const char* out_path, size_t draws[3]);
/* count_delta receives, per state, kept minus original box counts. */
SL_API sl_status sl_resolve_overlaps(const char* manifest_path, sl_overlap_mode mode,
                                     const char* out_path, int64_t count_delta[3]);
/* map_json: {"label": "red|yellow|green", ...}; NULL selects the LISA map. */
SL_API sl_status sl_remap_labels(const char* source_path, const char* map_json,
                                 const char* out_path, size_t* dropped);

typedef struct sl_manifest_stats {
  size_t records;
  size_t counted[3];
  size_t declared[3];
} sl_manifest_stats;

/* Fills out and returns SL_ERR_COUNT_MISMATCH when declared != counted. */
SL_API sl_status sl_manifest_get_stats(const char* manifest_path, sl_manifest_stats* out);

/* Evaluation. */
typedef struct sl_eval_report sl_eval_report;

SL_API sl_status sl_evaluate(const char* manifest_path, const char* predictions_path,
                             double threshold, double box_factor, sl_eval_report** out);
/* Threshold sweep; the report's P/R/F1 are those at the best threshold. */
SL_API sl_status sl_sweep_threshold(const char* manifest_path, const char* predictions_path,
                                    double box_factor, sl_eval_report** out);
/* Box-validation sweep; the report's metrics use the chosen factor. */
SL_API sl_status sl_box_validate(const char* manifest_path, const char* predictions_path,
                                 sl_eval_report** out);

SL_API double sl_eval_report_map(const sl_eval_report* report);
/* Returns 0 and leaves *ap untouched when the class has no ground truth. */
SL_API int sl_eval_report_class_ap(const sl_eval_report* report, int state, double* ap);
SL_API double sl_eval_report_precision(const sl_eval_report* report);
SL_API double sl_eval_report_recall(const sl_eval_report* report);
SL_API double sl_eval_report_f1(const sl_eval_report* report);
SL_API double sl_eval_report_threshold(const sl_eval_report* report);
SL_API double sl_eval_report_box_factor(const sl_eval_report* report);
SL_API sl_status sl_eval_report_to_json(const sl_eval_report* report, char** out_json);
SL_API sl_status sl_eval_report_table(const sl_eval_report* report, char** out_text);
SL_API void sl_eval_report_destroy(sl_eval_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SYNTHLIGHT_SYNTHLIGHT_H_ */
