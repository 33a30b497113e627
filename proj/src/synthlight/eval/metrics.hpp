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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "synthlight/core/common.hpp"

namespace synthlight::eval {

struct Detection {
  std::string image_id;
  LightState state = LightState::kRed;
  double confidence = 0.0;
  Rect box;
};

struct GroundTruth {
  std::string image_id;
  LightState state = LightState::kRed;
  Rect box;
};

inline constexpr double kIouThreshold = 0.5;

double iou(const Rect& a, const Rect& b) noexcept;

struct MatchResult {
  std::vector<bool> detection_tp;  // indexed like the input detections
  std::vector<bool> gt_matched;    // indexed like the input ground truths
  std::vector<std::size_t> order;  // detection indices, descending confidence (stable)
};

/// Greedy matching in descending confidence. A detection is a true positive
/// iff some not-yet-matched ground truth of the same image and state has
/// IoU >= threshold; it takes the one with the highest IoU (earliest on ties).
MatchResult match(std::span<const Detection> detections, std::span<const GroundTruth> truths,
                  double iou_threshold = kIouThreshold);

/// Area under the precision-recall curve with the all-point precision
/// envelope. `tp` is ordered by descending confidence. nullopt when
/// num_gt == 0.
std::optional<double> average_precision(const std::vector<bool>& tp, std::size_t num_gt);

struct F1Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t num_gt = 0;
};

/// Drops detections below `threshold` and matches the rest, over all classes.
F1Score f1_at(std::span<const Detection> detections, std::span<const GroundTruth> truths,
              double threshold);

/// F1 from raw counts; zero denominators give 0.
F1Score f1_from_counts(std::size_t tp, std::size_t fp, std::size_t num_gt) noexcept;

struct ThresholdSweep {
  double best_threshold = 0.01;
  F1Score best;
  std::vector<double> f1_per_threshold;  // thresholds k/100, k = 1..100
};

ThresholdSweep sweep_thresholds(std::span<const Detection> detections,
                                std::span<const GroundTruth> truths);

/// Scales the box area by f about its center (width and height times sqrt f).
Rect scale_box_area(const Rect& box, double f);

std::vector<Detection> scale_detections(std::span<const Detection> detections, double f);

struct MapResult {
  std::array<std::optional<double>, 3> per_class_ap{};  // nullopt: no ground truth
  double map = 0.0;  // mean over classes with ground truth; 0 when none has any
};

/// Per-class AP over all detections (threshold zero) and their mean.
MapResult mean_average_precision(std::span<const Detection> detections,
                                 std::span<const GroundTruth> truths);

struct BoxValidation {
  double best_factor = 1.0;
  std::vector<double> factors;  // 0.4, 0.5, ..., 1.9
  std::vector<double> maps;
};

/// The 16 area factors (4 + k) / 10, k = 0..15.
std::vector<double> box_validation_factors();

/// mAP for every factor; the best one wins, ties go to the factor nearest 1.0
/// and then to the smaller factor.
BoxValidation box_validation_sweep(std::span<const Detection> detections,
                                   std::span<const GroundTruth> truths);

struct EvalReport {
  MapResult ap;
  F1Score f1;
  double threshold = 0.0;
  double box_factor = 1.0;
  std::size_t num_detections = 0;
  std::optional<ThresholdSweep> sweep;
  std::optional<BoxValidation> box_validation;
};

/// mAP at threshold zero plus P/R/F1 at `threshold`, after scaling detection
/// boxes by `box_factor`.
EvalReport evaluate(std::span<const Detection> detections, std::span<const GroundTruth> truths,
                    double threshold = 0.0, double box_factor = 1.0);

std::string report_to_json(const EvalReport& report);
std::string report_table(const EvalReport& report);

}  // namespace synthlight::eval
