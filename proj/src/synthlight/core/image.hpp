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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "synthlight/core/common.hpp"

namespace synthlight {

/// Interleaved 8-bit image, row-major, `channels` samples per pixel.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0)
      : width_(width),
        height_(height),
        channels_(channels),
        data_(static_cast<std::size_t>(width) * height * channels, fill) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t& at(int x, int y, int c) noexcept { return data_[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c) const noexcept { return data_[index(x, y, c)]; }

  std::uint8_t* row(int y) noexcept { return data_.data() + index(0, y, 0); }
  const std::uint8_t* row(int y) const noexcept { return data_.data() + index(0, y, 0); }

  std::vector<std::uint8_t>& data() noexcept { return data_; }
  const std::vector<std::uint8_t>& data() const noexcept { return data_; }

  bool same_shape(const Image& o) const noexcept {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

inline std::uint8_t clamp_u8(double v) noexcept {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

inline std::uint8_t clamp_u8(long v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
}

/// Drops or adds channels: RGBA -> RGB discards alpha, RGB -> RGBA adds opaque
/// alpha, gray -> RGB replicates.
Image convert_channels(const Image& src, int channels);

/// Single-channel copy of channel `c`.
Image extract_channel(const Image& src, int c);

/// Bilinear resize with pixel-center alignment and edge clamping.
Image resize_bilinear(const Image& src, int width, int height);

/// Nearest-neighbour resize with pixel-center alignment.
Image resize_nearest(const Image& src, int width, int height);

Image crop(const Image& src, int x0, int y0, int width, int height);

// File I/O. PNG through libpng, JPEG through libjpeg. Errors throw
// Error(kIo).
Image read_image(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image& image);
void write_jpeg(const std::filesystem::path& path, const Image& image, int quality = 95);

/// Writes PNG or JPEG depending on the extension (.png / .jpg / .jpeg).
void write_image(const std::filesystem::path& path, const Image& image);

}  // namespace synthlight
