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

#include "synthlight/scenegen/scene.hpp"

namespace synthlight::scenegen {

template <class R>
concept BernoulliSource = requires(R& r, double p) {
  { r.bernoulli(p) } -> std::convertible_to<bool>;
};

/// Certain outcomes (p >= 1 or p <= 0) do not consume a draw.
template <BernoulliSource R>
bool draw_event(R& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return static_cast<bool>(rng.bernoulli(p));
}

/// Draws the set of road stretches. Draw order is south, west, north, east;
/// the east probability depends on whether west or north was drawn.
template <BernoulliSource R>
StretchSet sample_stretches(R& rng, const SceneConfig& cfg) {
  const StretchProbabilities& p = cfg.stretch_probabilities;
  StretchSet set;
  if (draw_event(rng, p.south)) set.insert(Direction::kSouth);
  if (draw_event(rng, p.west)) set.insert(Direction::kWest);
  if (draw_event(rng, p.north)) set.insert(Direction::kNorth);
  const bool crossing_present = set.contains(Direction::kWest) || set.contains(Direction::kNorth);
  const double east_p = crossing_present ? p.east_fallback : p.east_unconditional;
  if (draw_event(rng, east_p)) set.insert(Direction::kEast);
  return set;
}

}  // namespace synthlight::scenegen
