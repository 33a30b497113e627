// Copyright 2026 The Synthlight Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthlight/synthlight.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "json.hpp"
#include "synthlight/datasets/assemble.hpp"
#include "synthlight/datasets/backgrounds.hpp"
#include "synthlight/datasets/manifest.hpp"
#include "synthlight/datasets/procedures.hpp"
#include "synthlight/eval/metrics.hpp"
#include "synthlight/eval/predictions.hpp"
#include "synthlight/render/scene_render.hpp"
#include "synthlight/scenegen/scene_json.hpp"

struct sl_scene_config {
  synthlight::scenegen::SceneBuilder builder;
};

struct sl_foreground {
  synthlight::render::ForegroundRender render;
};

struct sl_eval_report {
  synthlight::eval::EvalReport report;
};

namespace {

namespace sl = synthlight;
namespace fs = std::filesystem;

thread_local std::string g_last_error;
thread_local std::size_t g_last_error_line = 0;

sl_status to_status(sl::ErrorCode code) {
  switch (code) {
    case sl::ErrorCode::kInvalidArgument:
    case sl::ErrorCode::kBehindCamera:
      return SL_ERR_INVALID_ARGUMENT;
    case sl::ErrorCode::kConfigInvalid:
      return SL_ERR_CONFIG;
    case sl::ErrorCode::kIo:
      return SL_ERR_IO;
    case sl::ErrorCode::kParse:
      return SL_ERR_PARSE;
    case sl::ErrorCode::kDimensionMismatch:
      return SL_ERR_DIMENSION;
    case sl::ErrorCode::kInsufficientForegrounds:
      return SL_ERR_INSUFFICIENT_FOREGROUNDS;
    case sl::ErrorCode::kEmptySubset:
      return SL_ERR_EMPTY_SUBSET;
    case sl::ErrorCode::kCountMismatch:
      return SL_ERR_COUNT_MISMATCH;
  }
  return SL_ERR_INTERNAL;
}

sl_status fail(sl_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
sl_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  g_last_error_line = 0;
  try {
    return fn();
  } catch (const sl::ParseError& e) {
    g_last_error_line = e.line();
    return fail(SL_ERR_PARSE, e.what());
  } catch (const sl::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SL_ERR_INTERNAL, "out of memory");
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SL_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SL_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define SL_REQUIRE(cond, what)                                     \
  do {                                                             \
    if (!(cond)) return fail(SL_ERR_INVALID_ARGUMENT, what);       \
  } while (0)

sl_status make_config(sl::scenegen::SceneConfig cfg, sl_scene_config** out) {
  *out = new sl_scene_config{sl::scenegen::SceneBuilder(std::move(cfg))};
  return SL_OK;
}

sl::render::ForegroundContent to_content(sl_content c) {
  return c == SL_CONTENT_LIGHTS_ONLY ? sl::render::ForegroundContent::kLightsOnly
                                     : sl::render::ForegroundContent::kFullScene;
}

sl::datasets::ForegroundOptions to_options(const sl_generate_options& o) {
  sl::datasets::ForegroundOptions opts;
  opts.seed = o.seed;
  opts.count = o.count;
  opts.content = to_content(o.content);
  opts.jobs = o.jobs;
  opts.dump_scenes = o.dump_scenes != 0;
  return opts;
}

struct EvalInputs {
  std::vector<sl::eval::Detection> detections;
  std::vector<sl::eval::GroundTruth> truths;
};

EvalInputs load_eval_inputs(const char* manifest_path, const char* predictions_path) {
  const auto manifest = sl::datasets::load_manifest(manifest_path);
  return {sl::eval::load_predictions(predictions_path), sl::eval::ground_truths(manifest)};
}

}  // namespace

extern "C" {

const char* sl_version(void) { return sl::kVersion.data(); }

const char* sl_last_error(void) { return g_last_error.c_str(); }

size_t sl_last_error_line(void) { return g_last_error_line; }

void sl_string_free(char* s) { std::free(s); }

sl_status sl_scene_config_create_default(sl_scene_config** out) {
  return guarded([&] {
    SL_REQUIRE(out, "null output pointer");
    return make_config({}, out);
  });
}

sl_status sl_scene_config_from_json(const char* json, sl_scene_config** out) {
  return guarded([&] {
    SL_REQUIRE(json && out, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(SL_ERR_CONFIG, std::string("scene config: ") + e.what());
    }
    return make_config(sl::scenegen::scene_config_from_json(j), out);
  });
}

sl_status sl_scene_config_load(const char* path, sl_scene_config** out) {
  return guarded([&] {
    SL_REQUIRE(path && out, "null argument");
    return make_config(sl::scenegen::load_scene_config(path), out);
  });
}

sl_status sl_scene_config_to_json(const sl_scene_config* config, char** out_json) {
  return guarded([&] {
    SL_REQUIRE(config && out_json, "null argument");
    *out_json = copy_string(sl::scenegen::to_json(config->builder.config()).dump(2) + "\n");
    return SL_OK;
  });
}

void sl_scene_config_destroy(sl_scene_config* config) { delete config; }

sl_status sl_foreground_render(const sl_scene_config* config, uint64_t scene_seed, sl_content content,
                               sl_foreground** out) {
  return guarded([&] {
    SL_REQUIRE(config && out, "null argument");
    const auto scene = config->builder.build(scene_seed);
    *out = new sl_foreground{sl::render::render_foreground(scene, config->builder, to_content(content))};
    return SL_OK;
  });
}

int sl_foreground_width(const sl_foreground* fg) { return fg ? fg->render.pixels.width() : 0; }

int sl_foreground_height(const sl_foreground* fg) { return fg ? fg->render.pixels.height() : 0; }

const uint8_t* sl_foreground_pixels(const sl_foreground* fg) {
  return fg ? fg->render.pixels.data().data() : nullptr;
}

size_t sl_foreground_label_count(const sl_foreground* fg) { return fg ? fg->render.labels.size() : 0; }

sl_status sl_foreground_label(const sl_foreground* fg, size_t index, sl_label* out) {
  return guarded([&] {
    SL_REQUIRE(fg && out, "null argument");
    SL_REQUIRE(index < fg->render.labels.size(), "label index out of range");
    const auto& l = fg->render.labels[index];
    *out = {static_cast<int>(sl::state_index(l.state)), l.box.x_min, l.box.y_min, l.box.x_max, l.box.y_max};
    return SL_OK;
  });
}

void sl_foreground_destroy(sl_foreground* fg) { delete fg; }

sl_status sl_generate_foregrounds(const sl_scene_config* config, const sl_generate_options* options,
                                  const char* out_dir) {
  return guarded([&] {
    SL_REQUIRE(config && options && out_dir, "null argument");
    sl::datasets::generate_foregrounds(config->builder, to_options(*options), out_dir);
    return SL_OK;
  });
}

sl_status sl_generate_templates(const sl_scene_config* config, const sl_generate_options* options,
                                const char* out_dir) {
  return guarded([&] {
    SL_REQUIRE(config && options && out_dir, "null argument");
    sl::datasets::generate_template_foregrounds(config->builder, to_options(*options), out_dir);
    return SL_OK;
  });
}

sl_status sl_prepare_backgrounds(const char* index_path, const char* image_root,
                                 const char* const* filter_tags, size_t tag_count, const char* out_dir,
                                 const char* extension, int jobs, sl_prepare_result* out) {
  return guarded([&] {
    SL_REQUIRE(index_path && out_dir, "null argument");
    SL_REQUIRE(tag_count == 0 || filter_tags, "null filter tag list");
    std::vector<std::string> tags;
    for (size_t i = 0; i < tag_count; ++i) {
      SL_REQUIRE(filter_tags[i], "null filter tag");
      tags.emplace_back(filter_tags[i]);
    }
    if (tags.empty()) tags = sl::datasets::default_filter_tags();
    const auto entries = sl::datasets::read_coco_index(index_path, image_root ? image_root : "");
    const auto report = sl::datasets::prepare_backgrounds(entries, tags, out_dir,
                                                          extension ? extension : ".jpg", jobs);
    sl::datasets::write_file_atomic(fs::path(out_dir) / "backgrounds.json",
                                    sl::datasets::pool_to_json(report.pool));
    if (out) {
      *out = {report.pool.entries.size(), report.excluded_tagged, report.excluded_small,
              report.unreadable.size()};
    }
    return SL_OK;
  });
}

sl_status sl_split_pos_neg(const char* manifest_path, const char* image_root, const char* positive_out,
                           const char* negative_out, size_t* positives, size_t* negatives) {
  return guarded([&] {
    SL_REQUIRE(manifest_path && positive_out && negative_out, "null argument");
    const auto manifest = sl::datasets::load_manifest(manifest_path);
    const auto [pos, neg] = sl::datasets::split_pos_neg(manifest, image_root ? image_root : "");
    sl::datasets::write_file_atomic(positive_out, sl::datasets::pool_to_json(pos));
    sl::datasets::write_file_atomic(negative_out, sl::datasets::pool_to_json(neg));
    if (positives) *positives = pos.entries.size();
    if (negatives) *negatives = neg.entries.size();
    return SL_OK;
  });
}

sl_status sl_compose_dataset(const char* foreground_dir, const char* background_dir,
                             const sl_compose_options* options, const char* out_dir,
                             const char* manifest_path) {
  return guarded([&] {
    SL_REQUIRE(foreground_dir && background_dir && options && out_dir, "null argument");
    SL_REQUIRE(options->mode >= SL_MODE_FULLY_CONTEXTUALIZED && options->mode <= SL_MODE_EXTERNAL,
               "unknown dataset mode");
    sl::datasets::AssembleOptions opts;
    opts.count = options->count;
    opts.seed = options->seed;
    opts.pairing = options->pairing == SL_PAIRING_VALIDATION ? sl::datasets::Pairing::kValidation
                                                             : sl::datasets::Pairing::kTraining;
    opts.mode = static_cast<sl::datasets::DatasetMode>(options->mode);
    opts.extension = options->extension ? options->extension : ".jpg";
    SL_REQUIRE(opts.extension == ".jpg" || opts.extension == ".png", "extension must be .jpg or .png");
    opts.jobs = options->jobs;
    const auto fgs = sl::datasets::list_foregrounds(foreground_dir);
    const auto bgs = sl::datasets::list_images(background_dir);
    const auto manifest = sl::datasets::assemble(fgs, bgs, opts, out_dir);
    const fs::path target = manifest_path ? fs::path(manifest_path) : fs::path(out_dir) / "manifest.json";
    sl::datasets::save_manifest(target, manifest);
    return SL_OK;
  });
}

sl_status sl_rebalance(const char* manifest_path, size_t target_count, const char* out_path,
                       size_t draws[3]) {
  return guarded([&] {
    SL_REQUIRE(manifest_path && out_path, "null argument");
    const auto result = sl::datasets::rebalance_by_state(sl::datasets::load_manifest(manifest_path), target_count);
    sl::datasets::save_manifest(out_path, result.manifest);
    if (draws) {
      for (int k = 0; k < 3; ++k) draws[k] = result.draws[static_cast<std::size_t>(k)];
    }
    return SL_OK;
  });
}

sl_status sl_resolve_overlaps(const char* manifest_path, sl_overlap_mode mode, const char* out_path,
                              int64_t count_delta[3]) {
  return guarded([&] {
    SL_REQUIRE(manifest_path && out_path, "null argument");
    auto manifest = sl::datasets::load_manifest(manifest_path);
    const auto before = sl::datasets::recount(manifest.records);
    const auto m = mode == SL_OVERLAP_LARGEST ? sl::datasets::OverlapMode::kLargest
                                              : sl::datasets::OverlapMode::kSmallest;
    for (auto& r : manifest.records) r = sl::datasets::resolve_overlaps(r, m);
    manifest.counts = sl::datasets::recount(manifest.records);
    sl::datasets::save_manifest(out_path, manifest);
    if (count_delta) {
      for (std::size_t k = 0; k < 3; ++k) {
        count_delta[k] = static_cast<int64_t>(manifest.counts[k]) - static_cast<int64_t>(before[k]);
      }
    }
    return SL_OK;
  });
}

sl_status sl_remap_labels(const char* source_path, const char* map_json, const char* out_path,
                          size_t* dropped) {
  return guarded([&] {
    SL_REQUIRE(source_path && out_path, "null argument");
    sl::datasets::LabelMap map = sl::datasets::lisa_label_map();
    if (map_json) {
      map.clear();
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(map_json);
      } catch (const nlohmann::json::parse_error& e) {
        return fail(SL_ERR_CONFIG, std::string("label map: ") + e.what());
      }
      if (!j.is_object()) return fail(SL_ERR_CONFIG, "label map must be a JSON object");
      for (const auto& [label, state] : j.items()) {
        const auto s = state.is_string() ? sl::parse_state(state.get<std::string>()) : std::nullopt;
        if (!s) return fail(SL_ERR_CONFIG, "label map: '" + label + "' maps to an unknown state");
        map.emplace(label, *s);
      }
    }
    const auto sources = sl::datasets::parse_source_records(sl::datasets::read_text_file(source_path));
    std::vector<sl::datasets::AnnotationRecord> records;
    std::size_t drops = 0;
    for (const auto& r : sources) records.push_back(sl::datasets::remap_labels(r, map, drops));
    sl::datasets::save_manifest(out_path, sl::datasets::make_manifest(std::move(records), 0,
                                                                      sl::datasets::DatasetMode::kExternal));
    if (dropped) *dropped = drops;
    return SL_OK;
  });
}

sl_status sl_manifest_get_stats(const char* manifest_path, sl_manifest_stats* out) {
  return guarded([&] {
    SL_REQUIRE(manifest_path && out, "null argument");
    const auto manifest = sl::datasets::load_manifest(manifest_path);
    const auto counted = sl::datasets::recount(manifest.records);
    out->records = manifest.records.size();
    for (std::size_t k = 0; k < 3; ++k) {
      out->counted[k] = counted[k];
      out->declared[k] = manifest.counts[k];
    }
    if (counted != manifest.counts) {
      return fail(SL_ERR_COUNT_MISMATCH, "declared counts differ from the records");
    }
    return SL_OK;
  });
}

sl_status sl_evaluate(const char* manifest_path, const char* predictions_path, double threshold,
                      double box_factor, sl_eval_report** out) {
  return guarded([&] {
    SL_REQUIRE(manifest_path && predictions_path && out, "null argument");
    SL_REQUIRE(threshold >= 0.0 && threshold <= 1.0, "threshold outside [0, 1]");
    SL_REQUIRE(box_factor > 0.0, "box factor must be positive");
    const auto in = load_eval_inputs(manifest_path, predictions_path);
    *out = new sl_eval_report{sl::eval::evaluate(in.detections, in.truths, threshold, box_factor)};
    return SL_OK;
  });
}

sl_status sl_sweep_threshold(const char* manifest_path, const char* predictions_path, double box_factor,
                             sl_eval_report** out) {
  return guarded([&] {
    SL_REQUIRE(manifest_path && predictions_path && out, "null argument");
    SL_REQUIRE(box_factor > 0.0, "box factor must be positive");
    const auto in = load_eval_inputs(manifest_path, predictions_path);
    const auto scaled = sl::eval::scale_detections(in.detections, box_factor);
    auto sweep = sl::eval::sweep_thresholds(scaled, in.truths);
    auto report = sl::eval::evaluate(in.detections, in.truths, sweep.best_threshold, box_factor);
    report.sweep = std::move(sweep);
    *out = new sl_eval_report{std::move(report)};
    return SL_OK;
  });
}

sl_status sl_box_validate(const char* manifest_path, const char* predictions_path, sl_eval_report** out) {
  return guarded([&] {
    SL_REQUIRE(manifest_path && predictions_path && out, "null argument");
    const auto in = load_eval_inputs(manifest_path, predictions_path);
    auto bv = sl::eval::box_validation_sweep(in.detections, in.truths);
    auto report = sl::eval::evaluate(in.detections, in.truths, 0.0, bv.best_factor);
    report.box_validation = std::move(bv);
    *out = new sl_eval_report{std::move(report)};
    return SL_OK;
  });
}

double sl_eval_report_map(const sl_eval_report* r) { return r ? r->report.ap.map : 0.0; }

int sl_eval_report_class_ap(const sl_eval_report* r, int state, double* ap) {
  if (!r || state < 0 || state > 2) return 0;
  const auto& v = r->report.ap.per_class_ap[static_cast<std::size_t>(state)];
  if (!v) return 0;
  if (ap) *ap = *v;
  return 1;
}

double sl_eval_report_precision(const sl_eval_report* r) { return r ? r->report.f1.precision : 0.0; }

double sl_eval_report_recall(const sl_eval_report* r) { return r ? r->report.f1.recall : 0.0; }

double sl_eval_report_f1(const sl_eval_report* r) { return r ? r->report.f1.f1 : 0.0; }

double sl_eval_report_threshold(const sl_eval_report* r) { return r ? r->report.threshold : 0.0; }

double sl_eval_report_box_factor(const sl_eval_report* r) { return r ? r->report.box_factor : 1.0; }

sl_status sl_eval_report_to_json(const sl_eval_report* r, char** out_json) {
  return guarded([&] {
    SL_REQUIRE(r && out_json, "null argument");
    *out_json = copy_string(sl::eval::report_to_json(r->report));
    return SL_OK;
  });
}

sl_status sl_eval_report_table(const sl_eval_report* r, char** out_text) {
  return guarded([&] {
    SL_REQUIRE(r && out_text, "null argument");
    *out_text = copy_string(sl::eval::report_table(r->report));
    return SL_OK;
  });
}

void sl_eval_report_destroy(sl_eval_report* r) { delete r; }

}  // extern "C"
