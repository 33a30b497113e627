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

#include "synthlight/core/image.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

// jpeglib.h needs FILE and size_t declared first.
#include <jpeglib.h>

namespace synthlight {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return f;
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext;
}

bool has_png_signature(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), sizeof(sig));
  return in.gcount() == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

Image read_png(const std::filesystem::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    throw Error(ErrorCode::kIo, "cannot read PNG " + path.string() + ": " + img.message);
  }
  const bool has_alpha = (img.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  img.format = has_alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  Image out(static_cast<int>(img.width), static_cast<int>(img.height), has_alpha ? 4 : 3);
  if (!png_image_finish_read(&img, nullptr, out.data().data(), 0, nullptr)) {
    png_image_free(&img);
    throw Error(ErrorCode::kIo, "cannot decode PNG " + path.string() + ": " + img.message);
  }
  return out;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

Image read_jpeg(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  jpeg_decompress_struct cinfo;
  JpegErrorManager jerr;
  cinfo.err = jpeg_std_error(&jerr.base);
  jerr.base.error_exit = jpeg_error_exit;
  // No objects with non-trivial destructors may be created between setjmp
  // and the last libjpeg call below.
  Image out;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::kIo, "cannot decode JPEG " + path.string() + ": " + jerr.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  out = Image(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height), 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.row(static_cast<int>(cinfo.output_scanline));
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

}  // namespace

Image convert_channels(const Image& src, int channels) {
  if (src.channels() == channels) return src;
  Image out(src.width(), src.height(), channels, 255);
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      for (int c = 0; c < std::min(channels, 3); ++c) {
        const int sc = src.channels() == 1 ? 0 : std::min(c, src.channels() - 1);
        out.at(x, y, c) = src.at(x, y, sc);
      }
    }
  }
  return out;
}

Image extract_channel(const Image& src, int c) {
  if (c < 0 || c >= src.channels()) {
    throw Error(ErrorCode::kInvalidArgument, "channel index out of range");
  }
  Image out(src.width(), src.height(), 1);
  const std::size_t n = static_cast<std::size_t>(src.width()) * src.height();
  for (std::size_t i = 0; i < n; ++i) out.data()[i] = src.data()[i * src.channels() + c];
  return out;
}

Image resize_bilinear(const Image& src, int width, int height) {
  if (src.width() == width && src.height() == height) return src;
  Image out(width, height, src.channels());
  const double sx = static_cast<double>(src.width()) / width;
  const double sy = static_cast<double>(src.height()) / height;
  const int max_x = src.width() - 1;
  const int max_y = src.height() - 1;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(max_y));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, max_y);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(max_x));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, max_x);
      const double wx = fx - x0;
      for (int c = 0; c < src.channels(); ++c) {
        const double top = src.at(x0, y0, c) * (1.0 - wx) + src.at(x1, y0, c) * wx;
        const double bottom = src.at(x0, y1, c) * (1.0 - wx) + src.at(x1, y1, c) * wx;
        out.at(x, y, c) = clamp_u8(top * (1.0 - wy) + bottom * wy);
      }
    }
  }
  return out;
}

Image resize_nearest(const Image& src, int width, int height) {
  if (src.width() == width && src.height() == height) return src;
  Image out(width, height, src.channels());
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(static_cast<int>((y + 0.5) * src.height() / height), src.height() - 1);
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(static_cast<int>((x + 0.5) * src.width() / width), src.width() - 1);
      for (int c = 0; c < src.channels(); ++c) out.at(x, y, c) = src.at(sx, sy, c);
    }
  }
  return out;
}

Image crop(const Image& src, int x0, int y0, int width, int height) {
  if (x0 < 0 || y0 < 0 || x0 + width > src.width() || y0 + height > src.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "crop window outside image");
  }
  Image out(width, height, src.channels());
  const std::size_t row_bytes = static_cast<std::size_t>(width) * src.channels();
  for (int y = 0; y < height; ++y) {
    std::memcpy(out.row(y), src.row(y0 + y) + static_cast<std::size_t>(x0) * src.channels(),
                row_bytes);
  }
  return out;
}

Image read_image(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kIo, "no such image " + path.string());
  }
  if (has_png_signature(path)) return read_png(path);
  return read_jpeg(path);
}

void write_png(const std::filesystem::path& path, const Image& image) {
  if (image.channels() != 3 && image.channels() != 4) {
    throw Error(ErrorCode::kInvalidArgument, "PNG writer expects RGB or RGBA");
  }
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = image.channels() == 4 ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&img, path.c_str(), 0, image.data().data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::kIo, "cannot write PNG " + path.string() + ": " + msg);
  }
}

void write_jpeg(const std::filesystem::path& path, const Image& image, int quality) {
  const Image rgb = convert_channels(image, 3);
  FilePtr file = open_file(path, "wb");
  jpeg_compress_struct cinfo;
  JpegErrorManager jerr;
  cinfo.err = jpeg_std_error(&jerr.base);
  jerr.base.error_exit = jpeg_error_exit;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_compress(&cinfo);
    throw Error(ErrorCode::kIo, "cannot encode JPEG " + path.string() + ": " + jerr.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, file.get());
  cinfo.image_width = static_cast<JDIMENSION>(rgb.width());
  cinfo.image_height = static_cast<JDIMENSION>(rgb.height());
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    auto* row = const_cast<JSAMPROW>(rgb.row(static_cast<int>(cinfo.next_scanline)));
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  if (std::fflush(file.get()) != 0) {
    throw Error(ErrorCode::kIo, "cannot flush " + path.string());
  }
}

void write_image(const std::filesystem::path& path, const Image& image) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") {
    write_png(path, image);
  } else if (ext == ".jpg" || ext == ".jpeg") {
    write_jpeg(path, image);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unsupported image extension " + ext);
  }
}

}  // namespace synthlight
