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

#include <set>

#include "doctest.h"
#include "json.hpp"
#include "synthlight/core/image.hpp"
#include "synthlight/core/rng.hpp"
#include "synthlight/datasets/assemble.hpp"
#include "synthlight/datasets/backgrounds.hpp"
#include "synthlight/datasets/manifest.hpp"
#include "synthlight/datasets/procedures.hpp"
#include "synthlight/datasets/templates.hpp"
#include "test_support.hpp"

namespace ds = synthlight::datasets;
namespace fs = std::filesystem;
using synthlight::Error;
using synthlight::ErrorCode;
using synthlight::Image;
using synthlight::LightState;
using synthlight::Rect;
using synthlight::testing::TempDir;

namespace {

ds::AnnotationBox box(LightState s, int x0, int y0, int x1, int y1) { return {s, x0, y0, x1, y1}; }

ds::AnnotationRecord record(const std::string& name, std::vector<ds::AnnotationBox> boxes) {
  return {name, 1280, 960, std::move(boxes)};
}

constexpr auto R = LightState::kRed;
constexpr auto Y = LightState::kYellow;
constexpr auto G = LightState::kGreen;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

Image gradient(int w, int h) {
  Image img(w, h, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img.at(x, y, 0) = static_cast<std::uint8_t>(x % 256);
      img.at(x, y, 1) = static_cast<std::uint8_t>(y % 256);
      img.at(x, y, 2) = static_cast<std::uint8_t>((x * 7 + y) % 256);
    }
  return img;
}

}  // namespace

TEST_SUITE("datasets") {

TEST_CASE("manifest text is canonical and round-trips byte for byte") {
  auto m = ds::make_manifest({record("img_000000.jpg", {box(R, 1, 2, 30, 40), box(G, 5, 6, 7, 8)}),
                              record("img_000001.jpg", {})},
                             42, ds::DatasetMode::kUncontextualized);
  CHECK(m.counts == synthlight::StateCounts{1, 0, 1});
  const std::string text = ds::serialize_manifest(m);
  CHECK(ds::serialize_manifest(ds::parse_manifest(text)) == text);
  const auto j = nlohmann::ordered_json::parse(text);
  CHECK(j["metadata"]["seed"] == 42);
  CHECK(j["metadata"]["mode"] == "uncontextualized");
  std::vector<std::string> keys;
  for (const auto& [k, v] : j["metadata"]["counts"].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"red", "yellow", "green"});
  std::vector<std::string> box_keys;
  for (const auto& [k, v] : j["records"][0]["boxes"][0].items()) box_keys.push_back(k);
  CHECK(box_keys == std::vector<std::string>{"state", "xmin", "ymin", "xmax", "ymax"});
  CHECK(text.back() == '\n');
}

TEST_CASE("manifest parsing validates boxes and modes") {
  const std::string good = R"({"metadata":{"seed":1,"mode":"external","counts":{"red":1,"yellow":0,"green":0}},
    "records":[{"image":"a.jpg","width":10,"height":10,"boxes":[{"state":"red","xmin":0,"ymin":0,"xmax":10,"ymax":10}]}]})";
  CHECK(ds::parse_manifest(good).mode == ds::DatasetMode::kExternal);
  auto bad = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    t.replace(t.find(from), from.size(), to);
    return code_of([&] { ds::parse_manifest(t); });
  };
  CHECK(bad(R"("xmax":10)", R"("xmax":11)") == ErrorCode::kParse);
  CHECK(bad(R"("xmin":0)", R"("xmin":10)") == ErrorCode::kParse);
  CHECK(bad(R"("state":"red")", R"("state":"blue")") == ErrorCode::kParse);
  CHECK(bad(R"("mode":"external")", R"("mode":"other")") == ErrorCode::kParse);
  CHECK(bad(R"("records":[)", R"("recs":[)") == ErrorCode::kParse);
  CHECK(code_of([] { ds::parse_manifest("{not json"); }) == ErrorCode::kParse);
}

TEST_CASE("box rounding is half-up, clamped, and drops empty boxes") {
  const auto b = ds::round_box({G, {0.5, 1.49, 10.5, 20.51}}, 640, 480);
  REQUIRE(b);
  CHECK(*b == box(G, 1, 1, 11, 21));
  CHECK(*ds::round_box({R, {-3.0, -0.2, 700.0, 480.4}}, 640, 480) == box(R, 0, 0, 640, 480));
  CHECK_FALSE(ds::round_box({R, {10.1, 5.0, 10.4, 9.0}}, 640, 480));
}

TEST_CASE("manifest saving is atomic and leaves no temporary behind") {
  TempDir dir;
  const auto path = dir / "m.json";
  ds::save_manifest(path, ds::make_manifest({}, 0, ds::DatasetMode::kFullyContextualized));
  CHECK(fs::exists(path));
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path())) ++files;
  CHECK(files == 1);
  CHECK(ds::load_manifest(path).records.empty());
  CHECK(code_of([&] { ds::load_manifest(dir / "missing.json"); }) == ErrorCode::kIo);
}

TEST_CASE("rebalance subsets follow the yellow, red, green precedence") {
  CHECK(ds::balance_subset(record("a", {box(R, 0, 0, 1, 1), box(Y, 0, 0, 1, 1)})) == ds::BalanceSubset::kYellow);
  CHECK(ds::balance_subset(record("b", {box(G, 0, 0, 1, 1), box(R, 0, 0, 1, 1)})) == ds::BalanceSubset::kRed);
  CHECK(ds::balance_subset(record("c", {box(G, 0, 0, 1, 1)})) == ds::BalanceSubset::kGreen);
  CHECK_FALSE(ds::balance_subset(record("d", {})));
}

TEST_CASE("rebalance with one record per subset repeats each evenly") {
  const auto m = ds::make_manifest({record("y", {box(Y, 0, 0, 1, 1)}), record("r", {box(R, 0, 0, 1, 1)}),
                                    record("g", {box(G, 0, 0, 1, 1)})},
                                   3, ds::DatasetMode::kExternal);
  const auto out = ds::rebalance_by_state(m, 6);
  REQUIRE(out.manifest.records.size() == 6);
  std::vector<std::string> names;
  for (const auto& r : out.manifest.records) names.push_back(r.image);
  CHECK(names == std::vector<std::string>{"y", "r", "g", "y", "r", "g"});
  CHECK(out.draws == std::array<std::size_t, 3>{2, 2, 2});
  CHECK(out.manifest.counts == synthlight::StateCounts{2, 2, 2});
}

TEST_CASE("rebalance cycles subsets of unequal size") {
  std::vector<ds::AnnotationRecord> recs;
  for (int i = 0; i < 5; ++i) recs.push_back(record("g" + std::to_string(i), {box(G, 0, 0, 1, 1)}));
  recs.push_back(record("y0", {box(Y, 0, 0, 1, 1)}));
  for (int i = 0; i < 2; ++i) recs.push_back(record("r" + std::to_string(i), {box(R, 0, 0, 1, 1)}));
  recs.push_back(record("none", {}));
  const auto m = ds::make_manifest(recs, 0, ds::DatasetMode::kExternal);
  for (std::size_t target : {0, 1, 2, 7, 100}) {
    const auto out = ds::rebalance_by_state(m, target);
    CHECK(out.manifest.records.size() == target);
    CHECK(out.subset_sizes == std::array<std::size_t, 3>{1, 2, 5});
    const auto [lo, hi] = std::minmax_element(out.draws.begin(), out.draws.end());
    CHECK(*hi - *lo <= 1);
  }
  const auto out = ds::rebalance_by_state(m, 8);
  std::vector<std::string> names;
  for (const auto& r : out.manifest.records) names.push_back(r.image);
  CHECK(names == std::vector<std::string>{"y0", "r0", "g0", "y0", "r1", "g1", "y0", "r0"});
}

TEST_CASE("rebalance requires every subset") {
  const auto m = ds::make_manifest({record("y", {box(Y, 0, 0, 1, 1)}), record("r", {box(R, 0, 0, 1, 1)})}, 0,
                                   ds::DatasetMode::kExternal);
  CHECK(code_of([&] { ds::rebalance_by_state(m, 3); }) == ErrorCode::kEmptySubset);
  CHECK(ds::rebalance_by_state(m, 0).manifest.records.empty());
}

TEST_CASE("overlap resolution keeps one box per cluster") {
  const auto outer = box(R, 10, 10, 50, 50), inner = box(G, 20, 20, 30, 30);
  const auto rec = record("x", {outer, inner});
  CHECK(ds::resolve_overlaps(rec, ds::OverlapMode::kSmallest).boxes == std::vector{inner});
  CHECK(ds::resolve_overlaps(rec, ds::OverlapMode::kLargest).boxes == std::vector{outer});

  const auto disjoint = record("d", {box(R, 0, 0, 5, 5), box(Y, 10, 10, 15, 15), box(G, 5, 0, 9, 5)});
  CHECK(ds::resolve_overlaps(disjoint, ds::OverlapMode::kSmallest).boxes == disjoint.boxes);
  CHECK(ds::resolve_overlaps(disjoint, ds::OverlapMode::kLargest).boxes == disjoint.boxes);
}

TEST_CASE("overlap clusters are transitive and keep the original order") {
  // a-b overlap, b-c overlap, a-c do not; d is alone.
  const auto a = box(R, 0, 0, 10, 10), b = box(Y, 8, 0, 30, 10), c = box(G, 28, 0, 33, 10),
             d = box(R, 100, 100, 101, 101);
  const auto rec = record("t", {d, a, b, c});
  CHECK(ds::resolve_overlaps(rec, ds::OverlapMode::kSmallest).boxes == std::vector{d, c});
  CHECK(ds::resolve_overlaps(rec, ds::OverlapMode::kLargest).boxes == std::vector{d, b});
  // Equal areas: the earliest box wins.
  const auto e = box(R, 0, 0, 10, 10), f = box(G, 5, 5, 15, 15);
  CHECK(ds::resolve_overlaps(record("e", {e, f}), ds::OverlapMode::kSmallest).boxes == std::vector{e});
}

TEST_CASE("label remapping uses the map and counts dropped boxes") {
  ds::SourceRecord src{"s.png", 1280, 960,
                       {{"goLeft", 1, 1, 5, 5}, {"stop", 2, 2, 6, 6}, {"warningLeft", 3, 3, 7, 7},
                        {"pedestrian", 0, 0, 2, 2}, {"go", 9, 9, 12, 12}}};
  std::size_t dropped = 0;
  const auto out = ds::remap_labels(src, ds::lisa_label_map(), dropped);
  CHECK(dropped == 1);
  REQUIRE(out.boxes.size() == 4);
  CHECK(out.boxes[0] == box(G, 1, 1, 5, 5));
  CHECK(out.boxes[1].state == R);
  CHECK(out.boxes[2].state == Y);
  CHECK(out.boxes[3].state == G);

  const ds::LabelMap identity{{"red", R}, {"yellow", Y}, {"green", G}};
  ds::SourceRecord plain{"p.png", 100, 100, {{"red", 1, 1, 5, 5}, {"green", 2, 2, 9, 9}}};
  dropped = 0;
  const auto same = ds::remap_labels(plain, identity, dropped);
  CHECK(dropped == 0);
  CHECK(same.boxes == std::vector{box(R, 1, 1, 5, 5), box(G, 2, 2, 9, 9)});
}

TEST_CASE("COCO index reading collects tags and light counts") {
  const std::string index = R"({
    "images":[{"id":1,"file_name":"a.jpg","width":800,"height":600},
              {"id":2,"file_name":"b.jpg","width":100,"height":3000}],
    "annotations":[{"image_id":1,"category_id":3},{"image_id":1,"category_id":10},{"image_id":1,"category_id":10}],
    "categories":[{"id":3,"name":"Car"},{"id":10,"name":"traffic light"}]})";
  const auto entries = ds::parse_coco_index(index, "/data");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].path == fs::path("/data/a.jpg"));
  CHECK(entries[0].tags == std::vector<std::string>{"car", "traffic light"});
  CHECK(entries[0].light_count == 2);
  CHECK(entries[1].tags.empty());
  CHECK(ds::has_filtered_tag(entries[0], ds::default_filter_tags()));
  CHECK_FALSE(ds::has_filtered_tag(entries[1], ds::default_filter_tags()));
  CHECK(code_of([] { ds::parse_coco_index("[]", "."); }) == ErrorCode::kParse);
}

TEST_CASE("default filter tags cover the traffic categories") {
  const auto& tags = ds::default_filter_tags();
  for (const char* t : {"traffic light", "bicycle", "car", "bus", "motorcycle", "truck", "stop sign"}) {
    CHECK(std::find(tags.begin(), tags.end(), t) != tags.end());
  }
}

TEST_CASE("fit and crop keeps the central region") {
  const Image wide = gradient(1000, 480);
  const Image out = ds::fit_and_crop(wide);
  REQUIRE(out.width() == 640);
  REQUIRE(out.height() == 480);
  for (int y = 0; y < 480; y += 37)
    for (int x = 0; x < 640; x += 41) REQUIRE(out.at(x, y, 2) == wide.at(x + 180, y, 2));
  for (auto [w, h] : {std::pair{320, 240}, {1920, 1080}, {500, 900}, {640, 480}}) {
    const Image o = ds::fit_and_crop(gradient(w, h));
    CHECK(o.width() == 640);
    CHECK(o.height() == 480);
  }
}

TEST_CASE("background preparation filters, crops, and reports") {
  TempDir dir;
  fs::create_directories(dir / "raw");
  synthlight::write_png(dir / "raw/wide.png", gradient(1000, 480));
  synthlight::write_png(dir / "raw/car.png", gradient(800, 600));
  synthlight::write_png(dir / "raw/thin.png", gradient(100, 3000));
  synthlight::write_png(dir / "raw/small_actual.png", gradient(90, 90));
  synthlight::testing::spit(dir / "raw/broken.png", "not an image");
  std::vector<ds::BackgroundEntry> entries{
      {dir / "raw/wide.png", 1000, 480, {}, 0},
      {dir / "raw/car.png", 800, 600, {"car"}, 0},
      {dir / "raw/thin.png", 100, 3000, {}, 0},
      {dir / "raw/small_actual.png", 0, 0, {}, 0},
      {dir / "raw/broken.png", 0, 0, {}, 0},
  };
  const auto report = ds::prepare_backgrounds(entries, ds::default_filter_tags(), dir / "out", ".png", 2);
  CHECK(report.excluded_tagged == 1);
  CHECK(report.excluded_small == 2);
  CHECK(report.unreadable.size() == 1);
  REQUIRE(report.pool.entries.size() == 1);
  CHECK(report.pool.polarity == ds::BackgroundPolarity::kNonTraffic);
  const Image written = synthlight::read_image(report.pool.entries[0].path);
  CHECK(written.width() == 640);
  CHECK(written.height() == 480);
  CHECK(written == ds::fit_and_crop(gradient(1000, 480)));
}

TEST_CASE("positive and negative split partitions the records") {
  const auto m = ds::make_manifest({record("two", {box(R, 0, 0, 2, 2), box(G, 3, 3, 5, 5)}), record("zero", {}),
                                    record("one", {box(Y, 0, 0, 1, 1)})},
                                   0, ds::DatasetMode::kExternal);
  const auto [pos, neg] = ds::split_pos_neg(m, "/imgs");
  CHECK(pos.entries.size() == 2);
  CHECK(neg.entries.size() == 1);
  CHECK(pos.polarity == ds::BackgroundPolarity::kTrafficPositive);
  CHECK(neg.polarity == ds::BackgroundPolarity::kTrafficNegative);
  CHECK(neg.entries[0].path == fs::path("/imgs/zero"));
  CHECK(pos.entries[0].light_count == 2);
}

TEST_CASE("template quad is symmetric at the image center") {
  ds::TemplateSpec spec;
  spec.shrink = 0.25;
  const Rect label{310, 230, 330, 250};
  const auto q = ds::template_quad(spec, label, {640, 480});
  CHECK(q[0].x == doctest::Approx(310));
  CHECK(q[0].y == doctest::Approx(230));
  CHECK(q[2].x == doctest::Approx(330));
  CHECK(q[2].y == doctest::Approx(250));
  CHECK(q[1].y - q[2].y == doctest::Approx(q[0].y - q[3].y));
}

TEST_CASE("template quad without rotation or shrink equals the label") {
  ds::TemplateSpec spec;
  const Rect label{12.5, 40, 31, 95};
  const auto q = ds::template_quad(spec, label, {640, 480});
  CHECK(q[0].x == doctest::Approx(12.5));
  CHECK(q[0].y == doctest::Approx(40));
  CHECK(q[1].x == doctest::Approx(31));
  CHECK(q[2].y == doctest::Approx(95));
  CHECK(q[3].x == doctest::Approx(12.5));
}

TEST_CASE("template left of center has a shorter left side") {
  ds::TemplateSpec spec;
  spec.shrink = 0.25;
  const Rect label{80, 220, 100, 260};  // center x = 90, offset (90 - 320) / 320
  const auto q = ds::template_quad(spec, label, {640, 480});
  const double off = (90.0 - 320.0) / 320.0;
  const double left = q[3].y - q[0].y;
  const double right = q[2].y - q[1].y;
  CHECK(right == doctest::Approx(40.0));
  CHECK(left / right == doctest::Approx(1.0 - 0.25 * std::abs(off)));
}

TEST_CASE("template rotation and sampling ranges") {
  synthlight::Rng rng(3);
  std::set<ds::TemplateVariant> variants;
  for (int i = 0; i < 500; ++i) {
    const auto spec = ds::sample_template_spec(rng, LightState::kGreen);
    CHECK(std::abs(spec.rotation_degrees) <= ds::kMaxTemplateRotationDegrees);
    CHECK(spec.state == LightState::kGreen);
    CHECK(spec.shrink == ds::kDefaultTemplateShrink);
    variants.insert(spec.variant);
  }
  CHECK(variants.size() == 3);
}

TEST_CASE("rendered template stays inside its label and shows the lit bulb") {
  ds::TemplateSpec spec;
  spec.state = LightState::kGreen;
  spec.tone = {20, 230, 120};
  Image canvas(640, 480, 4, 0);
  const Rect label{200, 100, 240, 204};
  ds::render_template(spec, label, canvas);
  std::size_t covered = 0, lit = 0;
  for (int y = 0; y < 480; ++y) {
    for (int x = 0; x < 640; ++x) {
      if (canvas.at(x, y, 3) == 0) continue;
      ++covered;
      REQUIRE(x >= 200);
      REQUIRE(x < 240);
      REQUIRE(y >= 100);
      REQUIRE(y < 204);
      if (canvas.at(x, y, 1) == 230) {
        ++lit;
        REQUIRE(y >= 100 + 2 * 104 / 3 - 1);  // bottom bulb for green
      }
    }
  }
  CHECK(covered == 40 * 104);
  CHECK(lit > 0);
}

TEST_CASE("validation pairing uses every foreground at most once") {
  const auto pairs = ds::plan_pairs(10, 7, 7, 5, ds::Pairing::kValidation);
  REQUIRE(pairs.size() == 7);
  std::set<std::size_t> fgs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    fgs.insert(pairs[i].first);
    CHECK(pairs[i].second == i);
    CHECK(pairs[i].first < 10);
  }
  CHECK(fgs.size() == 7);
  CHECK(code_of([] { ds::plan_pairs(6, 7, 7, 5, ds::Pairing::kValidation); }) ==
        ErrorCode::kInsufficientForegrounds);
  CHECK(code_of([] { ds::plan_pairs(10, 5, 7, 5, ds::Pairing::kValidation); }) ==
        ErrorCode::kInsufficientForegrounds);
}

TEST_CASE("training pairing draws with replacement and is deterministic") {
  const auto a = ds::plan_pairs(3, 4, 500, 9, ds::Pairing::kTraining);
  CHECK(a == ds::plan_pairs(3, 4, 500, 9, ds::Pairing::kTraining));
  CHECK_FALSE(a == ds::plan_pairs(3, 4, 500, 10, ds::Pairing::kTraining));
  std::set<std::size_t> f, b;
  for (auto [fi, bi] : a) {
    f.insert(fi);
    b.insert(bi);
  }
  CHECK(f.size() == 3);
  CHECK(b.size() == 4);
  CHECK(ds::plan_pairs(3, 4, 0, 9, ds::Pairing::kTraining).empty());
}

TEST_CASE("foreground label files round-trip") {
  ds::ForegroundLabels fl{123, 4, 640, 480, {{Y, {1.25, 2.5, 30.125, 60.0}}}};
  const auto back = ds::parse_foreground_labels(ds::foreground_labels_to_json(fl));
  CHECK(back.seed == 123);
  CHECK(back.index == 4);
  CHECK(back.labels == fl.labels);
}

TEST_CASE("assembly writes images and a consistent manifest") {
  TempDir dir;
  const synthlight::scenegen::SceneBuilder builder{synthlight::scenegen::SceneConfig{}};
  ds::ForegroundOptions fo;
  fo.seed = 3;
  fo.count = 4;
  fo.jobs = 2;
  ds::generate_foregrounds(builder, fo, dir / "fg");
  const auto fgs = ds::list_foregrounds(dir / "fg");
  REQUIRE(fgs.size() == 4);
  fs::create_directories(dir / "bg");
  for (int i = 0; i < 3; ++i) {
    synthlight::write_png(dir / ("bg/bg_" + std::to_string(i) + ".png"), gradient(640 + i, 480));
  }
  const auto bgs = ds::list_images(dir / "bg");
  REQUIRE(bgs.size() == 3);

  ds::AssembleOptions opts;
  opts.count = 5;
  opts.seed = 11;
  opts.extension = ".png";
  opts.jobs = 2;
  const auto m = ds::assemble(fgs, bgs, opts, dir / "out");
  REQUIRE(m.records.size() == 5);
  CHECK(m.counts == ds::recount(m.records));
  for (const auto& r : m.records) {
    const Image img = synthlight::read_image(dir / "out" / r.image);
    CHECK(img.width() == 1280);
    CHECK(img.height() == 960);
    CHECK(r.width == 1280);
  }
  opts.jobs = 1;
  const auto again = ds::assemble(fgs, bgs, opts, dir / "out2");
  CHECK(ds::serialize_manifest(again) == ds::serialize_manifest(m));
  CHECK(synthlight::testing::slurp(dir / "out/img_000004.png") ==
        synthlight::testing::slurp(dir / "out2/img_000004.png"));

  opts.count = 0;
  const auto empty = ds::assemble(fgs, bgs, opts, dir / "out3");
  CHECK(empty.records.empty());
  CHECK(empty.counts == synthlight::StateCounts{0, 0, 0});
}

TEST_CASE("assembled labels are the foreground labels scaled by two") {
  TempDir dir;
  const synthlight::scenegen::SceneBuilder builder{synthlight::scenegen::SceneConfig{}};
  ds::ForegroundOptions fo;
  fo.seed = 8;
  fo.count = 3;
  ds::generate_foregrounds(builder, fo, dir / "fg");
  const auto fgs = ds::list_foregrounds(dir / "fg");
  synthlight::write_png(dir / "bg.png", gradient(640, 480));
  ds::AssembleOptions opts;
  opts.count = 3;
  opts.pairing = ds::Pairing::kValidation;
  opts.extension = ".png";
  const auto pairs = ds::plan_pairs(3, 3, 3, opts.seed, ds::Pairing::kValidation);
  const auto m = ds::assemble(fgs, {dir / "bg.png", dir / "bg.png", dir / "bg.png"}, opts, dir / "out");
  for (std::size_t i = 0; i < 3; ++i) {
    const auto fl = ds::parse_foreground_labels(synthlight::testing::slurp(fgs[pairs[i].first].labels));
    std::vector<ds::AnnotationBox> expect;
    for (const auto& l : fl.labels) {
      const synthlight::LabeledBox scaled{l.state, {2 * l.box.x_min, 2 * l.box.y_min, 2 * l.box.x_max, 2 * l.box.y_max}};
      if (auto b = ds::round_box(scaled, 1280, 960)) expect.push_back(*b);
    }
    CHECK(m.records[i].boxes == expect);
  }
}

}  // TEST_SUITE
