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

#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synthlight/core/common.hpp"
#include "synthlight/core/image.hpp"
#include "synthlight/core/rng.hpp"

namespace synthlight::compose {

inline constexpr int kOutputWidth = 1280;
inline constexpr int kOutputHeight = 960;
inline constexpr double kLabelScale = 2.0;  // 640x480 foreground -> 1280x960 output

struct AugmentationParams {
  double add_background = 0.0;  // A_B
  double gain = 1.0;            // c, shared by background and foreground
  double add_foreground = 0.0;  // A_F; sampled parameters always have A_F = A_B + 40
  int noise_amplitude = 0;      // noise is drawn from [-amplitude, amplitude)
  double sigma_foreground = 0.0;
  double sigma_final = 0.0;

  static constexpr double kForegroundOffset = 40.0;
  static constexpr int kNoiseAmplitude = 15;

  /// Draws A_B, c, and both blur sigmas, in that order.
  static AugmentationParams sample(Rng& rng);

  /// Every stage reduces to the identity.
  static AugmentationParams identity() { return {}; }
};

/// v' = clamp(round((v + add) * gain)) on the color channels; alpha is kept.
Image brightness(const Image& image, double add, double gain);

/// Adds `noise()` independently to every color channel of every pixel, then
/// clamps. Alpha is kept. Draws are consumed in row-major, channel-minor order.
template <class NoiseFn>
  requires std::invocable<NoiseFn&> && std::convertible_to<std::invoke_result_t<NoiseFn&>, long>
Image histogram_noise(const Image& image, NoiseFn&& noise) {
  Image out = image;
  const int color = image.channels() == 4 ? 3 : image.channels();
  for (int y = 0; y < image.height(); ++y) {
    std::uint8_t* row = out.row(y);
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < color; ++c) {
        std::uint8_t& v = row[x * image.channels() + c];
        v = clamp_u8(static_cast<long>(v) + static_cast<long>(noise()));
      }
    }
  }
  return out;
}

/// Integer noise uniform in [-amplitude, amplitude). Amplitude 0 is the
/// identity and consumes no draws.
Image histogram_noise(const Image& image, Rng& rng, int amplitude = AugmentationParams::kNoiseAmplitude);

/// Separable Gaussian blur of one real-valued plane (row-major), kernel radius
/// ceil(3 sigma), edge replication. sigma = 0 copies the input.
std::vector<double> gaussian_blur_plane(std::span<const double> plane, int width, int height,
                                        double sigma);

/// Gaussian blur of every channel of an 8-bit image, rounded once at the end.
Image gaussian_blur(const Image& image, double sigma);

/// Blend mask stored as levels k in {0,1,2,3}; the mask value is k/3.
class BlendMask {
 public:
  BlendMask() = default;
  BlendMask(int width, int height) : width_(width), height_(height), levels_(static_cast<std::size_t>(width) * height, 0) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::uint8_t level(int x, int y) const noexcept { return levels_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t& level(int x, int y) noexcept { return levels_[static_cast<std::size_t>(y) * width_ + x]; }
  double value(int x, int y) const noexcept { return level(x, y) / 3.0; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> levels_;
};

/// 3x3 binary erosion with edge replication. Nonzero input counts as set.
std::vector<std::uint8_t> erode3x3(std::span<const std::uint8_t> mask, int width, int height);

/// M = M_F/3 + erode(M_F)/3 + erode(erode(M_F))/3 for a single-channel mask.
BlendMask build_mask(const Image& binary_alpha);

/// I = round((1 - M) B + M F) per channel. B and F must be RGB of the mask's size.
Image blend(const Image& background, const Image& foreground, const BlendMask& mask);

struct Provenance {
  std::string foreground_id;
  std::string background_id;
  std::uint64_t seed = 0;
  AugmentationParams params;
};

struct ComposedSample {
  Image pixels;  // RGB, 1280x960
  std::vector<LabeledBox> labels;
  Provenance provenance;
};

/// Rescale, augment, and blend one RGBA foreground over one background.
/// Parameters are drawn from `seed` unless `forced` is given; noise always
/// comes from the seed's stream after the parameter draws.
ComposedSample compose_sample(const Image& foreground, std::span<const LabeledBox> labels,
                              const Image& background, std::uint64_t seed,
                              const AugmentationParams* forced = nullptr);

}  // namespace synthlight::compose
