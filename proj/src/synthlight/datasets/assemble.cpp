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

#include "synthlight/datasets/assemble.hpp"

#include <cstdio>
#include <numeric>

#include "json.hpp"
#include "synthlight/compose/augment.hpp"
#include "synthlight/core/parallel.hpp"
#include "synthlight/core/rng.hpp"
#include "synthlight/datasets/templates.hpp"
#include "synthlight/render/labels.hpp"
#include "synthlight/scenegen/scene_json.hpp"

namespace synthlight::datasets {
namespace {

using Json = nlohmann::ordered_json;

std::string indexed_name(const char* prefix, std::size_t index, std::string_view ext) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%06zu", prefix, index);
  return std::string(buf) + std::string(ext);
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

void write_labels(const std::filesystem::path& path, const ForegroundLabels& fl) {
  write_file_atomic(path, foreground_labels_to_json(fl));
}

}  // namespace

std::string foreground_labels_to_json(const ForegroundLabels& fl) {
  Json root;
  root["seed"] = fl.seed;
  root["index"] = fl.index;
  root["width"] = fl.width;
  root["height"] = fl.height;
  Json labels = Json::array();
  for (const auto& l : fl.labels) {
    Json j;
    j["state"] = std::string(to_string(l.state));
    j["xmin"] = l.box.x_min;
    j["ymin"] = l.box.y_min;
    j["xmax"] = l.box.x_max;
    j["ymax"] = l.box.y_max;
    labels.push_back(std::move(j));
  }
  root["labels"] = std::move(labels);
  return root.dump(2) + "\n";
}

ForegroundLabels parse_foreground_labels(std::string_view text) {
  try {
    const Json root = Json::parse(text);
    ForegroundLabels fl;
    fl.seed = root.at("seed").get<std::uint64_t>();
    fl.index = root.at("index").get<std::size_t>();
    fl.width = root.at("width").get<int>();
    fl.height = root.at("height").get<int>();
    for (const Json& j : root.at("labels")) {
      const auto state = parse_state(j.at("state").get<std::string>());
      if (!state) throw Error(ErrorCode::kParse, "foreground labels: unknown state");
      fl.labels.push_back({*state, {j.at("xmin").get<double>(), j.at("ymin").get<double>(),
                                    j.at("xmax").get<double>(), j.at("ymax").get<double>()}});
    }
    return fl;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("foreground labels: ") + e.what());
  }
}

std::vector<ForegroundEntry> list_foregrounds(const std::filesystem::path& dir) {
  std::vector<ForegroundEntry> out;
  std::error_code ec;
  for (const auto& de : std::filesystem::directory_iterator(dir, ec)) {
    if (!de.is_regular_file() || de.path().extension() != ".png") continue;
    std::filesystem::path labels = de.path();
    labels.replace_extension(".json");
    if (std::filesystem::exists(labels)) out.push_back({de.path(), labels});
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(out.begin(), out.end(),
            [](const ForegroundEntry& a, const ForegroundEntry& b) { return a.image < b.image; });
  return out;
}

void generate_foregrounds(const scenegen::SceneBuilder& builder, const ForegroundOptions& opts,
                          const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  parallel_for(opts.count, static_cast<unsigned>(std::max(opts.jobs, 0)), [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(opts.seed, i, kSceneSalt);
    const scenegen::SceneGraph scene = builder.build(seed);
    const render::ForegroundRender fg = render::render_foreground(scene, builder, opts.content);
    write_png(out_dir / indexed_name("fg", i, ".png"), fg.pixels);
    write_labels(out_dir / indexed_name("fg", i, ".json"),
                 {seed, i, fg.pixels.width(), fg.pixels.height(), fg.labels});
    if (opts.dump_scenes) {
      write_file_atomic(out_dir / indexed_name("fg", i, ".scene.json"), scenegen::to_json(scene).dump(2) + "\n");
    }
  });
}

void generate_template_foregrounds(const scenegen::SceneBuilder& builder, const ForegroundOptions& opts,
                                   const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  const auto& cfg = builder.config();
  parallel_for(opts.count, static_cast<unsigned>(std::max(opts.jobs, 0)), [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(opts.seed, i, kSceneSalt);
    const scenegen::SceneGraph scene = builder.build(seed);
    const auto labels = render::label_lights(scene, scene.camera, cfg.traffic_light_dims);
    Image canvas(scene.image_width, scene.image_height, 4, 0);
    Rng rng(derive_seed(opts.seed, i, kTemplateSalt));
    for (const auto& l : labels) {
      render_template(sample_template_spec(rng, l.state), l.box, canvas, cfg.traffic_light_dims);
    }
    write_png(out_dir / indexed_name("fg", i, ".png"), canvas);
    write_labels(out_dir / indexed_name("fg", i, ".json"),
                 {seed, i, canvas.width(), canvas.height(), labels});
  });
}

std::vector<std::pair<std::size_t, std::size_t>> plan_pairs(std::size_t foregrounds,
                                                            std::size_t backgrounds,
                                                            std::size_t count, std::uint64_t seed,
                                                            Pairing pairing) {
  std::vector<std::pair<std::size_t, std::size_t>> plan;
  if (count == 0) return plan;
  plan.reserve(count);
  if (pairing == Pairing::kTraining) {
    if (foregrounds == 0 || backgrounds == 0) {
      throw Error(ErrorCode::kInsufficientForegrounds, "empty foreground or background pool");
    }
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng(derive_seed(seed, i, kPairSalt));
      const auto fg = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(foregrounds) - 1));
      const auto bg = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(backgrounds) - 1));
      plan.emplace_back(fg, bg);
    }
    return plan;
  }
  if (count > backgrounds) {
    throw Error(ErrorCode::kInsufficientForegrounds,
                "validation needs " + std::to_string(count) + " backgrounds, pool has " +
                    std::to_string(backgrounds));
  }
  if (count > foregrounds) {
    throw Error(ErrorCode::kInsufficientForegrounds,
                "validation needs " + std::to_string(count) + " distinct foregrounds, pool has " +
                    std::to_string(foregrounds));
  }
  std::vector<std::size_t> perm(foregrounds);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(derive_seed(seed, 0, kValidationSalt));
  shuffle(std::span<std::size_t>(perm), rng);
  for (std::size_t i = 0; i < count; ++i) plan.emplace_back(perm[i], i);
  return plan;
}

DatasetManifest assemble(const std::vector<ForegroundEntry>& foregrounds,
                         const std::vector<std::filesystem::path>& backgrounds,
                         const AssembleOptions& opts, const std::filesystem::path& out_dir) {
  const auto plan = plan_pairs(foregrounds.size(), backgrounds.size(), opts.count, opts.seed, opts.pairing);
  ensure_dir(out_dir);
  std::vector<AnnotationRecord> records(plan.size());
  parallel_for(plan.size(), static_cast<unsigned>(std::max(opts.jobs, 0)), [&](std::size_t i) {
    const auto& fg_entry = foregrounds[plan[i].first];
    const Image fg = read_image(fg_entry.image);
    const ForegroundLabels labels = parse_foreground_labels(read_text_file(fg_entry.labels));
    const Image bg = read_image(backgrounds[plan[i].second]);
    const compose::ComposedSample sample =
        compose::compose_sample(fg, labels.labels, bg, derive_seed(opts.seed, i, kComposeSalt));
    AnnotationRecord& rec = records[i];
    rec.image = indexed_name("img", i, opts.extension);
    rec.width = sample.pixels.width();
    rec.height = sample.pixels.height();
    for (const auto& l : sample.labels) {
      if (auto b = round_box(l, rec.width, rec.height)) rec.boxes.push_back(*b);
    }
    write_image(out_dir / rec.image, sample.pixels);
  });
  return make_manifest(std::move(records), opts.seed, opts.mode);
}

}  // namespace synthlight::datasets
