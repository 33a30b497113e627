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

#include "synthlight/compose/augment.hpp"

#include <cmath>

namespace synthlight::compose {

AugmentationParams AugmentationParams::sample(Rng& rng) {
  AugmentationParams p;
  p.add_background = rng.uniform(-120.0, 120.0);
  p.gain = rng.uniform(0.75, 1.25);
  p.add_foreground = p.add_background + kForegroundOffset;
  p.noise_amplitude = kNoiseAmplitude;
  p.sigma_foreground = rng.uniform(0.0, 3.0);
  p.sigma_final = rng.uniform(0.0, 3.0);
  return p;
}

Image brightness(const Image& image, double add, double gain) {
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) lut[v] = clamp_u8((v + add) * gain);
  Image out = image;
  const int ch = image.channels();
  const int color = ch == 4 ? 3 : ch;
  auto& d = out.data();
  for (std::size_t i = 0; i < d.size(); i += ch) {
    for (int c = 0; c < color; ++c) d[i + c] = lut[d[i + c]];
  }
  return out;
}

Image histogram_noise(const Image& image, Rng& rng, int amplitude) {
  if (amplitude <= 0) return image;
  return histogram_noise(image, [&] { return static_cast<long>(rng.uniform_int(-amplitude, amplitude - 1)); });
}

namespace {

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = w;
    sum += w;
  }
  for (double& w : k) w /= sum;
  return k;
}

// Separable blur of `channels` interleaved planes with edge replication. Every
// output sample sums k[j] * input over j in ascending order, in both passes.
// Horizontally blurred rows live in a ring of 2r + 1 rows; `emit(y, row)`
// receives each finished output row.
template <class T, class Emit>
void blur_interleaved(const T* in, int width, int height, int channels, const std::vector<double>& k,
                      Emit&& emit) {
  const int r = static_cast<int>(k.size() / 2);
  const int taps = 2 * r + 1;
  const std::size_t row_len = static_cast<std::size_t>(width) * channels;
  std::vector<double> ring(row_len * static_cast<std::size_t>(taps));
  std::vector<int> ring_row(static_cast<std::size_t>(taps), -1);
  std::vector<double> padded(static_cast<std::size_t>(width + 2 * r) * channels);
  std::vector<double> out(row_len);

  auto horizontal = [&](int sy) -> const double* {
    const auto slot = static_cast<std::size_t>(sy % taps);
    double* dst = ring.data() + slot * row_len;
    if (ring_row[slot] == sy) return dst;
    const T* src = in + static_cast<std::size_t>(sy) * row_len;
    for (int x = -r; x < width + r; ++x) {
      const int sx = std::clamp(x, 0, width - 1);
      for (int c = 0; c < channels; ++c) {
        padded[static_cast<std::size_t>(x + r) * channels + c] = static_cast<double>(src[sx * channels + c]);
      }
    }
    std::fill(dst, dst + row_len, 0.0);
    for (int j = 0; j < taps; ++j) {
      const double w = k[static_cast<std::size_t>(j)];
      const double* shifted = padded.data() + static_cast<std::size_t>(j) * channels;
      for (std::size_t i = 0; i < row_len; ++i) dst[i] += w * shifted[i];
    }
    ring_row[slot] = sy;
    return dst;
  };

  for (int y = 0; y < height; ++y) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int j = -r; j <= r; ++j) {
      const double w = k[static_cast<std::size_t>(j + r)];
      const double* src = horizontal(std::clamp(y + j, 0, height - 1));
      for (std::size_t i = 0; i < row_len; ++i) out[i] += w * src[i];
    }
    emit(y, out.data());
  }
}

}  // namespace

std::vector<double> gaussian_blur_plane(std::span<const double> plane, int width, int height,
                                        double sigma) {
  if (static_cast<std::size_t>(width) * height != plane.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "plane size does not match dimensions");
  }
  std::vector<double> out(plane.begin(), plane.end());
  if (!(sigma > 0.0) || plane.empty()) return out;
  blur_interleaved(plane.data(), width, height, 1, gaussian_kernel(sigma), [&](int y, const double* row) {
    std::copy(row, row + width, out.begin() + static_cast<std::ptrdiff_t>(y) * width);
  });
  return out;
}

Image gaussian_blur(const Image& image, double sigma) {
  if (!(sigma > 0.0) || image.empty()) return image;
  const std::size_t row_len = static_cast<std::size_t>(image.width()) * image.channels();
  Image out(image.width(), image.height(), image.channels());
  blur_interleaved(image.data().data(), image.width(), image.height(), image.channels(),
                   gaussian_kernel(sigma), [&](int y, const double* row) {
                     std::uint8_t* dst = out.row(y);
                     for (std::size_t i = 0; i < row_len; ++i) dst[i] = clamp_u8(row[i]);
                   });
  return out;
}

std::vector<std::uint8_t> erode3x3(std::span<const std::uint8_t> mask, int width, int height) {
  if (static_cast<std::size_t>(width) * height != mask.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "mask size does not match dimensions");
  }
  std::vector<std::uint8_t> out(mask.size(), 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      bool keep = true;
      for (int dy = -1; dy <= 1 && keep; ++dy) {
        const int yy = std::clamp(y + dy, 0, height - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = std::clamp(x + dx, 0, width - 1);
          if (mask[static_cast<std::size_t>(yy) * width + xx] == 0) {
            keep = false;
            break;
          }
        }
      }
      out[static_cast<std::size_t>(y) * width + x] = keep ? 1 : 0;
    }
  }
  return out;
}

BlendMask build_mask(const Image& binary_alpha) {
  if (binary_alpha.channels() != 1) {
    throw Error(ErrorCode::kDimensionMismatch, "mask must have a single channel");
  }
  const int w = binary_alpha.width();
  const int h = binary_alpha.height();
  std::vector<std::uint8_t> m0(binary_alpha.data().size());
  for (std::size_t i = 0; i < m0.size(); ++i) m0[i] = binary_alpha.data()[i] != 0 ? 1 : 0;
  const auto m1 = erode3x3(m0, w, h);
  const auto m2 = erode3x3(m1, w, h);
  BlendMask mask(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      mask.level(x, y) = static_cast<std::uint8_t>(m0[i] + m1[i] + m2[i]);
    }
  }
  return mask;
}

Image blend(const Image& background, const Image& foreground, const BlendMask& mask) {
  if (!background.same_shape(foreground) || background.width() != mask.width() ||
      background.height() != mask.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "blend inputs differ in size or channels");
  }
  Image out(background.width(), background.height(), background.channels());
  const int ch = background.channels();
  for (int y = 0; y < mask.height(); ++y) {
    const std::uint8_t* b = background.row(y);
    const std::uint8_t* f = foreground.row(y);
    std::uint8_t* o = out.row(y);
    for (int x = 0; x < mask.width(); ++x) {
      const int k = mask.level(x, y);
      for (int c = 0; c < ch; ++c) {
        const int i = x * ch + c;
        // round(((3 - k) B + k F) / 3); thirds never land on .5
        o[i] = static_cast<std::uint8_t>(((3 - k) * b[i] + k * f[i] + 1) / 3);
      }
    }
  }
  return out;
}

ComposedSample compose_sample(const Image& foreground, std::span<const LabeledBox> labels,
                              const Image& background, std::uint64_t seed,
                              const AugmentationParams* forced) {
  if (foreground.channels() != 4 || foreground.width() * 2 != kOutputWidth ||
      foreground.height() * 2 != kOutputHeight) {
    throw Error(ErrorCode::kDimensionMismatch, "foreground must be 640x480 RGBA");
  }
  if (background.width() < foreground.width() || background.height() < foreground.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "background smaller than 640x480");
  }
  Rng rng(seed);
  const AugmentationParams params = forced ? *forced : AugmentationParams::sample(rng);

  Image fg_rgb = resize_bilinear(convert_channels(foreground, 3), kOutputWidth, kOutputHeight);
  Image alpha = resize_nearest(extract_channel(foreground, 3), kOutputWidth, kOutputHeight);
  for (auto& a : alpha.data()) a = a >= 128 ? 1 : 0;
  Image bg = resize_bilinear(convert_channels(background, 3), kOutputWidth, kOutputHeight);

  bg = brightness(bg, params.add_background, params.gain);
  fg_rgb = brightness(fg_rgb, params.add_foreground, params.gain);
  fg_rgb = histogram_noise(fg_rgb, rng, params.noise_amplitude);
  fg_rgb = gaussian_blur(fg_rgb, params.sigma_foreground);
  const BlendMask mask = build_mask(alpha);

  ComposedSample out;
  out.pixels = gaussian_blur(blend(bg, fg_rgb, mask), params.sigma_final);
  out.labels.reserve(labels.size());
  for (const auto& l : labels) {
    out.labels.push_back({l.state, {l.box.x_min * kLabelScale, l.box.y_min * kLabelScale,
                                    l.box.x_max * kLabelScale, l.box.y_max * kLabelScale}});
  }
  out.provenance.seed = seed;
  out.provenance.params = params;
  return out;
}

}  // namespace synthlight::compose
