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

#include <cmath>

#include "doctest.h"
#include "reference.hpp"
#include "synthlight/compose/augment.hpp"
#include "synthlight/core/image.hpp"
#include "synthlight/core/rng.hpp"

namespace cp = synthlight::compose;
namespace ref = synthlight::reference;
using synthlight::Image;
using synthlight::Rng;

namespace {

Image random_image(int w, int h, int channels, std::uint64_t seed) {
  Image img(w, h, channels);
  Rng rng(seed);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return img;
}

// RGBA foreground with an opaque rectangle and a disc, transparent elsewhere.
Image shapes_foreground() {
  Image fg(640, 480, 4, 0);
  for (int y = 0; y < 480; ++y) {
    for (int x = 0; x < 640; ++x) {
      const bool rect = x >= 100 && x < 220 && y >= 60 && y < 300;
      const bool disc = (x - 450) * (x - 450) + (y - 300) * (y - 300) < 70 * 70;
      if (!rect && !disc) continue;
      fg.at(x, y, 0) = static_cast<std::uint8_t>(rect ? 200 : 30);
      fg.at(x, y, 1) = static_cast<std::uint8_t>(rect ? 40 : 220);
      fg.at(x, y, 2) = static_cast<std::uint8_t>((x + y) % 256);
      fg.at(x, y, 3) = 255;
    }
  }
  return fg;
}

// Dense 2D Gaussian convolution with edge replication.
double dense_blur_at(const std::vector<double>& plane, int w, int h, int x, int y, double sigma) {
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  double num = 0.0, den = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double k = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      const int xx = std::clamp(x + dx, 0, w - 1), yy = std::clamp(y + dy, 0, h - 1);
      num += k * plane[static_cast<std::size_t>(yy) * w + xx];
      den += k;
    }
  }
  return num / den;
}

}  // namespace

TEST_SUITE("compose") {

TEST_CASE("brightness with identity parameters leaves the image unchanged") {
  const Image img = random_image(31, 17, 3, 1);
  CHECK(cp::brightness(img, 0.0, 1.0) == img);
}

TEST_CASE("brightness arithmetic and clamping") {
  Image img(3, 1, 3);
  img.at(0, 0, 0) = 200;
  img.at(1, 0, 0) = 100;
  img.at(2, 0, 0) = 10;
  CHECK(cp::brightness(img, 120.0, 1.0).at(0, 0, 0) == 255);
  CHECK(cp::brightness(img, -20.0, 0.75).at(1, 0, 0) == 60);
  CHECK(cp::brightness(img, -20.0, 0.75).at(2, 0, 0) == 0);
  // round((v + A) c) for a sweep of parameters against direct arithmetic.
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(-120, 120), c = rng.uniform(0.75, 1.25);
    const auto out = cp::brightness(img, a, c);
    for (int x = 0; x < 3; ++x) {
      const double v = (img.at(x, 0, 0) + a) * c;
      const int expect = v <= 0 ? 0 : v >= 255 ? 255 : int(std::floor(v + 0.5));
      REQUIRE(out.at(x, 0, 0) == expect);
    }
  }
}

TEST_CASE("brightness keeps alpha") {
  Image img(2, 2, 4, 77);
  const auto out = cp::brightness(img, 50.0, 1.1);
  CHECK(out.at(1, 1, 3) == 77);
  CHECK(out.at(1, 1, 0) == synthlight::clamp_u8((77 + 50.0) * 1.1));
}

TEST_CASE("foreground and background offsets differ by forty on unclamped pixels") {
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const auto p = cp::AugmentationParams::sample(rng);
    CHECK(p.add_foreground - p.add_background == 40.0);
    CHECK(p.add_background >= -120.0);
    CHECK(p.add_background < 120.0);
    CHECK(p.gain >= 0.75);
    CHECK(p.gain < 1.25);
    CHECK(p.sigma_foreground >= 0.0);
    CHECK(p.sigma_foreground < 3.0);
    CHECK(p.sigma_final >= 0.0);
    CHECK(p.sigma_final < 3.0);
    CHECK(p.noise_amplitude == 15);
    Image px(1, 1, 3, 100);
    const int bg = cp::brightness(px, p.add_background, 1.0).at(0, 0, 0);
    const int fg = cp::brightness(px, p.add_foreground, 1.0).at(0, 0, 0);
    if (bg > 0 && fg < 255) CHECK(std::abs((fg - bg) - 40) <= 1);
  }
}

TEST_CASE("zero noise is the identity") {
  const Image img = random_image(20, 10, 4, 3);
  CHECK(cp::histogram_noise(img, [] { return 0; }) == img);
  Rng rng(1);
  CHECK(cp::histogram_noise(img, rng, 0) == img);
}

TEST_CASE("noise on mid gray is uniform over the asymmetric interval") {
  const Image gray(200, 200, 3, 128);
  Rng rng(99);
  const Image out = cp::histogram_noise(gray, rng);
  double sum = 0.0;
  int lo = 999, hi = -999;
  for (auto v : out.data()) {
    const int d = int(v) - 128;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    sum += v;
  }
  const double mean = sum / out.data().size();
  // Mean of a uniform integer on [-15, 14] is -0.5; sd of the mean ~0.05.
  CHECK(mean == doctest::Approx(127.5).epsilon(0.002));
  CHECK(lo == -15);
  CHECK(hi == 14);
}

TEST_CASE("noise clamps and keeps alpha") {
  Image img(4, 4, 4, 250);
  const Image out = cp::histogram_noise(img, [] { return 14; });
  CHECK(out.at(0, 0, 0) == 255);
  CHECK(out.at(0, 0, 3) == 250);
}

TEST_CASE("blur with zero sigma is the identity") {
  const Image img = random_image(33, 21, 3, 5);
  CHECK(cp::gaussian_blur(img, 0.0) == img);
}

TEST_CASE("blur preserves constant images") {
  for (double sigma : {0.4, 1.0, 2.9}) {
    const Image img(40, 30, 3, 173);
    CHECK(cp::gaussian_blur(img, sigma) == img);
  }
}

TEST_CASE("impulse response matches a dense 2D Gaussian") {
  constexpr int kW = 41;
  std::vector<double> plane(kW * kW, 0.0);
  plane[20 * kW + 20] = 1.0;
  const auto out = cp::gaussian_blur_plane(plane, kW, kW, 1.0);
  // Continuous normalization 1 / (2 pi sigma^2).
  CHECK(out[20 * kW + 20] == doctest::Approx(1.0 / (2.0 * synthlight::kPi)).epsilon(1e-3));
  for (int y = 14; y <= 26; ++y)
    for (int x = 14; x <= 26; ++x)
      REQUIRE(out[y * kW + x] == doctest::Approx(dense_blur_at(plane, kW, kW, x, y, 1.0)).epsilon(1e-12));
}

TEST_CASE("separable blur equals dense convolution with edge replication") {
  constexpr int kW = 23, kH = 17;
  Rng rng(8);
  std::vector<double> plane(kW * kH);
  for (double& v : plane) v = rng.uniform(0, 255);
  const auto out = cp::gaussian_blur_plane(plane, kW, kH, 1.7);
  for (int y = 0; y < kH; ++y)
    for (int x = 0; x < kW; ++x)
      REQUIRE(out[y * kW + x] == doctest::Approx(dense_blur_at(plane, kW, kH, x, y, 1.7)).epsilon(1e-9));
}

TEST_CASE("mask levels follow the erosion count") {
  SUBCASE("all ones stays one under edge replication") {
    Image m(9, 7, 1, 1);
    const auto mask = cp::build_mask(m);
    for (int y = 0; y < 7; ++y)
      for (int x = 0; x < 9; ++x) REQUIRE(mask.value(x, y) == 1.0);
  }
  SUBCASE("square interior, ring, and border") {
    Image m(20, 20, 1, 0);
    for (int y = 5; y < 15; ++y)
      for (int x = 5; x < 15; ++x) m.at(x, y, 0) = 1;
    const auto mask = cp::build_mask(m);
    CHECK(mask.level(5, 5) == 1);   // removed by the first erosion
    CHECK(mask.level(6, 9) == 2);   // survives one erosion only
    CHECK(mask.level(7, 9) == 3);
    CHECK(mask.level(4, 9) == 0);
    CHECK(mask.value(6, 6) == doctest::Approx(2.0 / 3.0));
  }
}

TEST_CASE("mask matches the brute-force oracle on random blobs") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 30, h = 25;
    std::vector<std::uint8_t> bits(w * h);
    for (auto& b : bits) b = rng.bernoulli(0.8) ? 1 : 0;
    Image m(w, h, 1);
    m.data() = bits;
    const auto mask = cp::build_mask(m);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) REQUIRE(mask.level(x, y) == ref::mask_level(bits, w, h, x, y));
  }
}

TEST_CASE("mask support is nested") {
  Rng rng(13);
  const int w = 50, h = 40;
  Image m(w, h, 1);
  for (auto& b : m.data()) b = rng.bernoulli(0.9) ? 1 : 0;
  const auto mask = cp::build_mask(m);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = mask.value(x, y);
      REQUIRE((v == 0.0 || std::abs(v - 1.0 / 3) < 1e-12 || std::abs(v - 2.0 / 3) < 1e-12 || v == 1.0));
      REQUIRE((v >= 1.0 / 3 - 1e-12) == (m.at(x, y, 0) != 0));
    }
  }
}

TEST_CASE("blend identities and arithmetic") {
  const Image b(4, 3, 3, 60), f(4, 3, 3, 180);
  cp::BlendMask ones(4, 3), zeros(4, 3), twothirds(4, 3);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 4; ++x) {
      ones.level(x, y) = 3;
      twothirds.level(x, y) = 2;
    }
  CHECK(cp::blend(b, f, ones) == f);
  CHECK(cp::blend(b, f, zeros) == b);
  CHECK(cp::blend(b, f, twothirds).at(2, 1, 0) == 140);
}

TEST_CASE("blend rounds like the floating-point formula") {
  for (int bv = 0; bv < 256; bv += 5) {
    for (int fv = 0; fv < 256; fv += 7) {
      const Image b(1, 1, 3, std::uint8_t(bv)), f(1, 1, 3, std::uint8_t(fv));
      for (int k = 0; k <= 3; ++k) {
        cp::BlendMask m(1, 1);
        m.level(0, 0) = std::uint8_t(k);
        REQUIRE(cp::blend(b, f, m).at(0, 0, 1) == ref::blend_pixel(bv, fv, k));
      }
    }
  }
}

TEST_CASE("blend rejects mismatched dimensions") {
  const Image b(4, 3, 3), f(4, 4, 3);
  try {
    cp::blend(b, f, cp::BlendMask(4, 3));
    FAIL("expected an error");
  } catch (const synthlight::Error& e) {
    CHECK(e.code() == synthlight::ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("identity composition reproduces foreground interiors and blends the border band") {
  const Image fg = shapes_foreground();
  const Image bg = random_image(640, 480, 3, 21);
  const auto identity = cp::AugmentationParams::identity();
  const auto out = cp::compose_sample(fg, {}, bg, 5, &identity);
  REQUIRE(out.pixels.width() == 1280);
  REQUIRE(out.pixels.height() == 960);
  const Image f = synthlight::resize_bilinear(synthlight::convert_channels(fg, 3), 1280, 960);
  const Image b = synthlight::resize_bilinear(bg, 1280, 960);
  const Image a = synthlight::resize_nearest(synthlight::extract_channel(fg, 3), 1280, 960);
  std::vector<std::uint8_t> bits(a.data().size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = a.data()[i] >= 128;
  int max_err = 0;
  std::size_t band = 0;
  for (int y = 0; y < 960; ++y) {
    for (int x = 0; x < 1280; ++x) {
      const int k = ref::mask_level(bits, 1280, 960, x, y);
      band += k == 1 || k == 2;
      for (int c = 0; c < 3; ++c) {
        const int expect = ref::blend_pixel(b.at(x, y, c), f.at(x, y, c), k);
        max_err = std::max(max_err, std::abs(expect - int(out.pixels.at(x, y, c))));
      }
    }
  }
  CHECK(band > 0);
  CHECK(max_err == 0);
}

TEST_CASE("composition is deterministic and scales labels by two") {
  const Image fg = shapes_foreground();
  const Image bg = random_image(700, 500, 3, 22);
  const std::vector<synthlight::LabeledBox> labels{{synthlight::LightState::kYellow, {10.25, 20.5, 30.75, 41.0}}};
  const auto a = cp::compose_sample(fg, labels, bg, 77);
  const auto b = cp::compose_sample(fg, labels, bg, 77);
  const auto c = cp::compose_sample(fg, labels, bg, 78);
  CHECK(a.pixels == b.pixels);
  CHECK_FALSE(a.pixels == c.pixels);
  REQUIRE(a.labels.size() == 1);
  CHECK(a.labels[0].state == synthlight::LightState::kYellow);
  CHECK(a.labels[0].box == synthlight::Rect{20.5, 41.0, 61.5, 82.0});
  CHECK(a.provenance.seed == 77);
  CHECK(a.provenance.params.add_foreground - a.provenance.params.add_background == 40.0);
}

TEST_CASE("composition validates its inputs") {
  const Image bg(640, 480, 3);
  CHECK_THROWS_AS(cp::compose_sample(Image(640, 480, 3), {}, bg, 1), synthlight::Error);
  CHECK_THROWS_AS(cp::compose_sample(Image(320, 240, 4), {}, bg, 1), synthlight::Error);
  CHECK_THROWS_AS(cp::compose_sample(Image(640, 480, 4), {}, Image(600, 480, 3), 1), synthlight::Error);
}

}  // TEST_SUITE
