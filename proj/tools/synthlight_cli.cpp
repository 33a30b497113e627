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

// synthlight: command-line front end over the libsynthlight C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "synthlight/synthlight.h"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

// Process exit codes.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitIoConfig = 2;
constexpr int kExitPoolExhausted = 3;
constexpr int kExitBadPredictions = 4;
constexpr int kExitCountMismatch = 5;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(sl_status s) {
  switch (s) {
    case SL_OK:
      return kExitOk;
    case SL_ERR_INSUFFICIENT_FOREGROUNDS:
      return kExitPoolExhausted;
    case SL_ERR_PARSE:
      return sl_last_error_line() > 0 ? kExitBadPredictions : kExitIoConfig;
    case SL_ERR_COUNT_MISMATCH:
      return kExitCountMismatch;
    case SL_ERR_INTERNAL:
      return kExitInternal;
    default:
      return kExitIoConfig;
  }
}

int report(sl_status s) {
  if (s != SL_OK) std::cerr << "synthlight: " << sl_last_error() << "\n";
  return exit_code(s);
}

// RunConfig file: {"seed", "scene", "counts": {...}, "paths": {...}, "mode", "image_format"}.
struct RunConfig {
  std::optional<std::uint64_t> seed;
  Json scene = Json::object();
  Json counts = Json::object();
  Json paths = Json::object();
  std::optional<std::string> mode;
  std::optional<std::string> image_format;

  static RunConfig load(const std::string& path) {
    RunConfig rc;
    if (path.empty()) return rc;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw std::runtime_error("config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") {
        if (!value.is_number_unsigned()) throw std::runtime_error("config: seed must be a non-negative integer");
        rc.seed = value.get<std::uint64_t>();
      } else if (key == "scene" && value.is_object()) {
        rc.scene = value;
      } else if (key == "counts" && value.is_object()) {
        rc.counts = value;
      } else if (key == "paths" && value.is_object()) {
        rc.paths = value;
      } else if (key == "mode" && value.is_string()) {
        rc.mode = value.get<std::string>();
      } else if (key == "image_format" && value.is_string()) {
        rc.image_format = value.get<std::string>();
      } else {
        throw std::runtime_error("config: unexpected or mistyped key '" + key + "'");
      }
    }
    return rc;
  }

  std::string path(const char* key) const {
    return paths.contains(key) && paths[key].is_string() ? paths[key].get<std::string>() : "";
  }

  std::optional<std::size_t> count(const char* key) const {
    if (!counts.contains(key)) return std::nullopt;
    if (!counts[key].is_number_unsigned()) throw std::runtime_error(std::string("config: counts.") + key + " must be >= 0");
    return counts[key].get<std::size_t>();
  }
};

// Flag > SYNTHLIGHT_SEED > config > 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const RunConfig& rc) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SYNTHLIGHT_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError("SYNTHLIGHT_SEED is not an integer");
    return v;
  }
  return rc.seed.value_or(0);
}

std::string pick(const std::string& flag, const std::string& config_value, const char* what) {
  const std::string v = flag.empty() ? config_value : flag;
  if (v.empty()) throw UsageError(std::string("missing ") + what);
  return v;
}

std::string extension_for(const std::string& format) {
  if (format == "jpg" || format == "jpeg") return ".jpg";
  if (format == "png") return ".png";
  throw UsageError("image format must be jpg or png");
}

sl_status load_scene(const RunConfig& rc, sl_scene_config** out) {
  return sl_scene_config_from_json(rc.scene.dump().c_str(), out);
}

struct ScopedConfig {
  sl_scene_config* ptr = nullptr;
  ~ScopedConfig() { sl_scene_config_destroy(ptr); }
};

struct ScopedReport {
  sl_eval_report* ptr = nullptr;
  ~ScopedReport() { sl_eval_report_destroy(ptr); }
};

std::string take_string(char* s) {
  std::string out = s ? s : "";
  sl_string_free(s);
  return out;
}

int emit_report(sl_eval_report* report, const std::string& report_path) {
  char* table = nullptr;
  if (sl_status s = sl_eval_report_table(report, &table); s != SL_OK) return ::report(s);
  std::cout << take_string(table);
  if (!report_path.empty()) {
    char* json = nullptr;
    if (sl_status s = sl_eval_report_to_json(report, &json); s != SL_OK) return ::report(s);
    std::ofstream out(report_path, std::ios::binary);
    out << take_string(json);
    if (!out) {
      std::cerr << "synthlight: cannot write " << report_path << "\n";
      return kExitIoConfig;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic traffic-light dataset toolkit"};
  app.set_version_flag("--version", std::string(sl_version()));
  app.require_subcommand(1);
  app.fallthrough();  // global options may also follow the subcommand

  std::string config_path;
  std::optional<std::uint64_t> seed_flag;
  int jobs = 0;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed_flag, "Master seed (overrides SYNTHLIGHT_SEED and the config)");
  app.add_option("--jobs", jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  // gen-foregrounds / gen-templates
  std::string fg_out;
  std::optional<std::size_t> fg_count;
  std::string content = "full";
  bool dump_scenes = false;
  auto* gen = app.add_subcommand("gen-foregrounds", "Render labeled foreground scenes");
  gen->add_option("--out", fg_out, "Output directory");
  gen->add_option("--count", fg_count, "Number of foregrounds");
  gen->add_option("--content", content, "full | lights-only")->check(CLI::IsMember({"full", "lights-only"}));
  gen->add_flag("--dump-scenes", dump_scenes, "Also write the scene graph of every foreground");
  auto* tmpl = app.add_subcommand("gen-templates", "Render Templates Only foregrounds");
  tmpl->add_option("--out", fg_out, "Output directory");
  tmpl->add_option("--count", fg_count, "Number of foregrounds");

  // prep-backgrounds
  std::string index_path, image_root, bg_out, format;
  std::vector<std::string> filter_tags;
  auto* prep = app.add_subcommand("prep-backgrounds", "Filter and crop background images");
  prep->add_option("--index", index_path, "COCO-style annotation index")->required()->check(CLI::ExistingFile);
  prep->add_option("--images", image_root, "Directory the index's file names are relative to");
  prep->add_option("--out", bg_out, "Output directory");
  prep->add_option("--filter-tag", filter_tags, "Excluded category (repeatable; default traffic set)");
  prep->add_option("--format", format, "jpg | png");

  // split-pos-neg
  std::string split_manifest, split_pos, split_neg;
  auto* split = app.add_subcommand("split-pos-neg", "Split an annotated dataset into positive/negative pools");
  split->add_option("--manifest", split_manifest, "Annotated manifest")->required();
  split->add_option("--images", image_root, "Image directory of the manifest");
  split->add_option("--positive", split_pos, "Positive pool JSON")->required();
  split->add_option("--negative", split_neg, "Negative pool JSON")->required();

  // compose
  std::string fg_dir, bg_dir, out_dir, manifest_out, pairing = "train", mode;
  std::optional<std::size_t> compose_count;
  auto* compose = app.add_subcommand("compose", "Blend foregrounds onto backgrounds");
  compose->add_option("--foregrounds", fg_dir, "Foreground directory");
  compose->add_option("--backgrounds", bg_dir, "Background directory");
  compose->add_option("--out", out_dir, "Output directory");
  compose->add_option("--count", compose_count, "Number of images (validation: default = backgrounds)");
  compose->add_option("--pairing", pairing, "train | validation")->check(CLI::IsMember({"train", "validation"}));
  compose->add_option("--mode", mode, "fully_contextualized | uncontextualized | templates_only | external");
  compose->add_option("--format", format, "jpg | png");
  compose->add_option("--manifest", manifest_out, "Manifest path (default <out>/manifest.json)");

  // manifest procedures
  std::string in_manifest, out_manifest, overlap_mode = "smallest", map_path;
  std::size_t target = 0;
  auto* rebalance = app.add_subcommand("rebalance", "Round-robin class rebalancing");
  rebalance->add_option("--manifest", in_manifest, "Input manifest")->required();
  rebalance->add_option("--target", target, "Number of output records")->required();
  rebalance->add_option("--out", out_manifest, "Output manifest")->required();
  auto* overlaps = app.add_subcommand("resolve-overlaps", "Keep one box per overlapping cluster");
  overlaps->add_option("--manifest", in_manifest, "Input manifest")->required();
  overlaps->add_option("--mode", overlap_mode, "smallest | largest")->check(CLI::IsMember({"smallest", "largest"}));
  overlaps->add_option("--out", out_manifest, "Output manifest")->required();
  auto* remap = app.add_subcommand("remap-labels", "Map source labels to light states");
  remap->add_option("--input", in_manifest, "Records with source labels")->required();
  remap->add_option("--map", map_path, "JSON label map (default: LISA)");
  remap->add_option("--out", out_manifest, "Output manifest")->required();

  // evaluation
  std::string predictions, report_path;
  double threshold = 0.0;
  double box_factor = 1.0;
  auto add_eval_inputs = [&](CLI::App* sub) {
    sub->add_option("--manifest", in_manifest, "Ground-truth manifest")->required();
    sub->add_option("--predictions", predictions, "Predictions (JSON lines)")->required();
    sub->add_option("--report", report_path, "Write the report JSON here");
  };
  auto* evaluate = app.add_subcommand("evaluate", "mAP and P/R/F1 of predictions");
  add_eval_inputs(evaluate);
  evaluate->add_option("--threshold", threshold, "Confidence threshold for P/R/F1")->check(CLI::Range(0.0, 1.0));
  evaluate->add_option("--box-factor", box_factor, "Area factor applied to prediction boxes")->check(CLI::PositiveNumber);
  auto* sweep = app.add_subcommand("sweep-threshold", "Best F1 over thresholds 0.01..1.00");
  add_eval_inputs(sweep);
  sweep->add_option("--box-factor", box_factor, "Area factor applied to prediction boxes")->check(CLI::PositiveNumber);
  auto* boxval = app.add_subcommand("box-validate", "Best area factor in 0.4..1.9 by mAP");
  add_eval_inputs(boxval);

  auto* stats = app.add_subcommand("stats", "Per-state box counts of a manifest");
  stats->add_option("--manifest", in_manifest, "Manifest")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const RunConfig rc = RunConfig::load(config_path);

    if (gen->parsed() || tmpl->parsed()) {
      const std::string out = pick(fg_out, rc.path("foregrounds"), "--out");
      const std::size_t count = fg_count ? *fg_count : rc.count("foregrounds").value_or(0);
      ScopedConfig cfg;
      if (sl_status s = load_scene(rc, &cfg.ptr); s != SL_OK) return report(s);
      sl_generate_options opts{resolve_seed(seed_flag, rc), count,
                               content == "lights-only" ? SL_CONTENT_LIGHTS_ONLY : SL_CONTENT_FULL_SCENE,
                               jobs, dump_scenes ? 1 : 0};
      const sl_status s = gen->parsed() ? sl_generate_foregrounds(cfg.ptr, &opts, out.c_str())
                                        : sl_generate_templates(cfg.ptr, &opts, out.c_str());
      if (s == SL_OK) std::cout << "wrote " << count << " foregrounds to " << out << "\n";
      return report(s);
    }

    if (prep->parsed()) {
      const std::string out = pick(bg_out, rc.path("backgrounds"), "--out");
      const std::string ext = extension_for(format.empty() ? rc.image_format.value_or("jpg") : format);
      std::vector<const char*> tags;
      for (const auto& t : filter_tags) tags.push_back(t.c_str());
      sl_prepare_result res{};
      const sl_status s = sl_prepare_backgrounds(index_path.c_str(), image_root.c_str(), tags.data(), tags.size(),
                                                 out.c_str(), ext.c_str(), jobs, &res);
      if (s == SL_OK) {
        std::cout << "written " << res.written << "  excluded (tags) " << res.excluded_tagged
                  << "  excluded (size) " << res.excluded_small << "  unreadable " << res.unreadable << "\n";
      }
      return report(s);
    }

    if (split->parsed()) {
      std::size_t pos = 0, neg = 0;
      const sl_status s = sl_split_pos_neg(split_manifest.c_str(), image_root.c_str(), split_pos.c_str(),
                                           split_neg.c_str(), &pos, &neg);
      if (s == SL_OK) std::cout << "positive " << pos << "  negative " << neg << "\n";
      return report(s);
    }

    if (compose->parsed()) {
      const std::string fgs = pick(fg_dir, rc.path("foregrounds"), "--foregrounds");
      const std::string bgs = pick(bg_dir, rc.path("backgrounds"), "--backgrounds");
      const std::string out = pick(out_dir, rc.path("output"), "--out");
      const std::string mode_name = mode.empty() ? rc.mode.value_or("fully_contextualized") : mode;
      static const std::vector<std::string> kModes = {"fully_contextualized", "uncontextualized",
                                                      "templates_only", "external"};
      const auto it = std::find(kModes.begin(), kModes.end(), mode_name);
      if (it == kModes.end()) throw UsageError("unknown mode " + mode_name);
      const bool validation = pairing == "validation";
      std::size_t count = 0;
      if (compose_count) {
        count = *compose_count;
      } else if (auto c = rc.count(validation ? "val_images" : "train_images")) {
        count = *c;
      } else if (validation) {
        std::error_code ec;
        for (const auto& de : fs::directory_iterator(bgs, ec)) {
          const auto e = de.path().extension();
          count += (e == ".jpg" || e == ".jpeg" || e == ".png") ? 1 : 0;
        }
      }
      const std::string ext = extension_for(format.empty() ? rc.image_format.value_or("jpg") : format);
      sl_compose_options opts{resolve_seed(seed_flag, rc), count,
                              validation ? SL_PAIRING_VALIDATION : SL_PAIRING_TRAINING,
                              static_cast<sl_dataset_mode>(it - kModes.begin()), ext.c_str(), jobs};
      const std::string manifest = manifest_out.empty() ? rc.path("manifest") : manifest_out;
      const sl_status s = sl_compose_dataset(fgs.c_str(), bgs.c_str(), &opts, out.c_str(),
                                             manifest.empty() ? nullptr : manifest.c_str());
      if (s == SL_OK) std::cout << "composed " << count << " images into " << out << "\n";
      return report(s);
    }

    if (rebalance->parsed()) {
      std::size_t draws[3] = {0, 0, 0};
      const sl_status s = sl_rebalance(in_manifest.c_str(), target, out_manifest.c_str(), draws);
      if (s == SL_OK) std::cout << "draws  yellow " << draws[0] << "  red " << draws[1] << "  green " << draws[2] << "\n";
      return report(s);
    }

    if (overlaps->parsed()) {
      int64_t delta[3] = {0, 0, 0};
      const sl_status s = sl_resolve_overlaps(in_manifest.c_str(),
                                              overlap_mode == "largest" ? SL_OVERLAP_LARGEST : SL_OVERLAP_SMALLEST,
                                              out_manifest.c_str(), delta);
      if (s == SL_OK) {
        std::cout << "count change  red " << delta[0] << "  yellow " << delta[1] << "  green " << delta[2] << "\n";
      }
      return report(s);
    }

    if (remap->parsed()) {
      std::string map_json;
      if (!map_path.empty()) {
        std::ifstream in(map_path);
        if (!in) throw std::runtime_error("cannot open " + map_path);
        std::stringstream ss;
        ss << in.rdbuf();
        map_json = ss.str();
      }
      std::size_t dropped = 0;
      const sl_status s = sl_remap_labels(in_manifest.c_str(), map_path.empty() ? nullptr : map_json.c_str(),
                                          out_manifest.c_str(), &dropped);
      if (s == SL_OK && dropped > 0) std::cerr << "warning: dropped " << dropped << " boxes with unmapped labels\n";
      return report(s);
    }

    if (evaluate->parsed() || sweep->parsed() || boxval->parsed()) {
      ScopedReport r;
      sl_status s;
      if (evaluate->parsed()) {
        s = sl_evaluate(in_manifest.c_str(), predictions.c_str(), threshold, box_factor, &r.ptr);
      } else if (sweep->parsed()) {
        s = sl_sweep_threshold(in_manifest.c_str(), predictions.c_str(), box_factor, &r.ptr);
      } else {
        s = sl_box_validate(in_manifest.c_str(), predictions.c_str(), &r.ptr);
      }
      if (s != SL_OK) return report(s);
      return emit_report(r.ptr, report_path);
    }

    if (stats->parsed()) {
      sl_manifest_stats st{};
      const sl_status s = sl_manifest_get_stats(in_manifest.c_str(), &st);
      if (s == SL_OK || s == SL_ERR_COUNT_MISMATCH) {
        std::printf("records %zu\n%-8s %8s %8s\n", st.records, "state", "counted", "declared");
        const char* names[3] = {"red", "yellow", "green"};
        for (int k = 0; k < 3; ++k) std::printf("%-8s %8zu %8zu\n", names[k], st.counted[k], st.declared[k]);
      }
      return report(s);
    }
  } catch (const UsageError& e) {
    std::cerr << "synthlight: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "synthlight: " << e.what() << "\n";
    return kExitIoConfig;
  }
  return kExitUsage;
}
