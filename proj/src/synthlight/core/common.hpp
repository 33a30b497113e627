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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace synthlight {

inline constexpr std::string_view kVersion = "0.1.0";

/// Failure categories surfaced through the C API as status codes.
enum class ErrorCode {
  kInvalidArgument,
  kConfigInvalid,
  kIo,
  kParse,
  kDimensionMismatch,
  kBehindCamera,
  kInsufficientForegrounds,
  kEmptySubset,
  kCountMismatch,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure that knows which input line it came from (1-based).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class LightState { kRed = 0, kYellow = 1, kGreen = 2 };

inline constexpr std::array<LightState, 3> kAllStates = {
    LightState::kRed, LightState::kYellow, LightState::kGreen};

constexpr std::size_t state_index(LightState s) noexcept {
  return static_cast<std::size_t>(s);
}

inline std::string_view to_string(LightState s) noexcept {
  switch (s) {
    case LightState::kRed:
      return "red";
    case LightState::kYellow:
      return "yellow";
    case LightState::kGreen:
      return "green";
  }
  return "red";
}

inline std::optional<LightState> parse_state(std::string_view name) noexcept {
  if (name == "red") return LightState::kRed;
  if (name == "yellow") return LightState::kYellow;
  if (name == "green") return LightState::kGreen;
  return std::nullopt;
}

/// Per-state tally indexed by state_index().
using StateCounts = std::array<std::size_t, 3>;

/// Axis-aligned rectangle in continuous pixel coordinates.
struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const noexcept { return x_max - x_min; }
  double height() const noexcept { return y_max - y_min; }
  double area() const noexcept {
    return width() > 0.0 && height() > 0.0 ? width() * height() : 0.0;
  }
  double center_x() const noexcept { return 0.5 * (x_min + x_max); }
  double center_y() const noexcept { return 0.5 * (y_min + y_max); }
  bool valid() const noexcept { return x_min < x_max && y_min < y_max; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline Rect intersect(const Rect& a, const Rect& b) noexcept {
  return {std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min),
          std::min(a.x_max, b.x_max), std::min(a.y_max, b.y_max)};
}

/// Box with a traffic-light state, used for rendered labels.
struct LabeledBox {
  LightState state = LightState::kRed;
  Rect box;

  friend bool operator==(const LabeledBox&, const LabeledBox&) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const noexcept { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const noexcept { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const noexcept { return {x * s, y * s, z * s}; }
  Vec3 operator-() const noexcept { return {-x, -y, -z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) noexcept { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) noexcept {
  const double n = norm(v);
  return n > 0.0 ? v * (1.0 / n) : v;
}

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }

}  // namespace synthlight
