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

#include "synthlight/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace synthlight::eval {
namespace {

std::string group_key(const std::string& image, LightState s) {
  std::string key = image;
  key.push_back('\0');
  key.push_back(static_cast<char>('0' + state_index(s)));
  return key;
}

std::vector<std::size_t> confidence_order(std::span<const Detection> dets) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].confidence > dets[b].confidence;
  });
  return order;
}

}  // namespace

double iou(const Rect& a, const Rect& b) noexcept {
  const double inter = intersect(a, b).area();
  if (inter <= 0.0) return 0.0;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

MatchResult match(std::span<const Detection> detections, std::span<const GroundTruth> truths,
                  double iou_threshold) {
  MatchResult r;
  r.detection_tp.assign(detections.size(), false);
  r.gt_matched.assign(truths.size(), false);
  r.order = confidence_order(detections);
  std::unordered_map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t g = 0; g < truths.size(); ++g) {
    groups[group_key(truths[g].image_id, truths[g].state)].push_back(g);
  }
  for (std::size_t d : r.order) {
    const auto it = groups.find(group_key(detections[d].image_id, detections[d].state));
    if (it == groups.end()) continue;
    double best = -1.0;
    std::size_t best_gt = truths.size();
    for (std::size_t g : it->second) {
      if (r.gt_matched[g]) continue;
      const double v = iou(detections[d].box, truths[g].box);
      if (v >= iou_threshold && v > best) {
        best = v;
        best_gt = g;
      }
    }
    if (best_gt < truths.size()) {
      r.gt_matched[best_gt] = true;
      r.detection_tp[d] = true;
    }
  }
  return r;
}

std::optional<double> average_precision(const std::vector<bool>& tp, std::size_t num_gt) {
  if (num_gt == 0) return std::nullopt;
  std::vector<double> precision(tp.size());
  std::vector<double> recall(tp.size());
  std::size_t tps = 0;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    if (tp[i]) ++tps;
    precision[i] = static_cast<double>(tps) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tps) / static_cast<double>(num_gt);
  }
  for (std::size_t i = tp.size(); i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    if (recall[i] > prev_recall) {
      ap += (recall[i] - prev_recall) * precision[i];
      prev_recall = recall[i];
    }
  }
  return ap;
}

F1Score f1_from_counts(std::size_t tp, std::size_t fp, std::size_t num_gt) noexcept {
  F1Score s;
  s.tp = tp;
  s.fp = fp;
  s.num_gt = num_gt;
  s.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  s.recall = num_gt > 0 ? static_cast<double>(tp) / static_cast<double>(num_gt) : 0.0;
  s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

F1Score f1_at(std::span<const Detection> detections, std::span<const GroundTruth> truths,
              double threshold) {
  std::vector<Detection> kept;
  for (const auto& d : detections) {
    if (d.confidence >= threshold) kept.push_back(d);
  }
  const MatchResult m = match(kept, truths);
  const auto tp = static_cast<std::size_t>(std::count(m.detection_tp.begin(), m.detection_tp.end(), true));
  return f1_from_counts(tp, kept.size() - tp, truths.size());
}

ThresholdSweep sweep_thresholds(std::span<const Detection> detections,
                                std::span<const GroundTruth> truths) {
  ThresholdSweep s;
  s.f1_per_threshold.reserve(100);
  bool first = true;
  for (int k = 1; k <= 100; ++k) {
    const double thr = k / 100.0;
    const F1Score f = f1_at(detections, truths, thr);
    s.f1_per_threshold.push_back(f.f1);
    if (first || f.f1 > s.best.f1) {
      s.best = f;
      s.best_threshold = thr;
      first = false;
    }
  }
  return s;
}

Rect scale_box_area(const Rect& box, double f) {
  if (!(f > 0.0)) throw Error(ErrorCode::kInvalidArgument, "area factor must be positive");
  const double k = std::sqrt(f);
  const double cx = box.center_x();
  const double cy = box.center_y();
  const double hw = 0.5 * box.width() * k;
  const double hh = 0.5 * box.height() * k;
  return {cx - hw, cy - hh, cx + hw, cy + hh};
}

std::vector<Detection> scale_detections(std::span<const Detection> detections, double f) {
  std::vector<Detection> out(detections.begin(), detections.end());
  if (f == 1.0) return out;
  for (auto& d : out) d.box = scale_box_area(d.box, f);
  return out;
}

MapResult mean_average_precision(std::span<const Detection> detections,
                                 std::span<const GroundTruth> truths) {
  const MatchResult m = match(detections, truths);
  MapResult r;
  double sum = 0.0;
  int classes = 0;
  for (LightState s : kAllStates) {
    std::vector<bool> seq;
    for (std::size_t d : m.order) {
      if (detections[d].state == s) seq.push_back(m.detection_tp[d]);
    }
    std::size_t num_gt = 0;
    for (const auto& g : truths) num_gt += g.state == s ? 1 : 0;
    const auto ap = average_precision(seq, num_gt);
    r.per_class_ap[state_index(s)] = ap;
    if (ap) {
      sum += *ap;
      ++classes;
    }
  }
  r.map = classes > 0 ? sum / classes : 0.0;
  return r;
}

std::vector<double> box_validation_factors() {
  std::vector<double> f;
  for (int k = 0; k < 16; ++k) f.push_back((4 + k) / 10.0);
  return f;
}

BoxValidation box_validation_sweep(std::span<const Detection> detections,
                                   std::span<const GroundTruth> truths) {
  BoxValidation bv;
  bv.factors = box_validation_factors();
  for (double f : bv.factors) {
    bv.maps.push_back(mean_average_precision(scale_detections(detections, f), truths).map);
  }
  // Preference order: distance to 1.0 in tenths, then the smaller factor.
  std::vector<int> pref(bv.factors.size());
  std::iota(pref.begin(), pref.end(), 0);
  std::stable_sort(pref.begin(), pref.end(), [](int a, int b) { return std::abs(a - 6) < std::abs(b - 6); });
  int best = pref.front();
  for (int k : pref) {
    if (bv.maps[static_cast<std::size_t>(k)] > bv.maps[static_cast<std::size_t>(best)]) best = k;
  }
  bv.best_factor = bv.factors[static_cast<std::size_t>(best)];
  return bv;
}

EvalReport evaluate(std::span<const Detection> detections, std::span<const GroundTruth> truths,
                    double threshold, double box_factor) {
  const auto scaled = scale_detections(detections, box_factor);
  EvalReport r;
  r.ap = mean_average_precision(scaled, truths);
  r.f1 = f1_at(scaled, truths, threshold);
  r.threshold = threshold;
  r.box_factor = box_factor;
  r.num_detections = detections.size();
  return r;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json ap;
  nlohmann::ordered_json excluded = nlohmann::ordered_json::array();
  for (LightState s : kAllStates) {
    const auto& v = report.ap.per_class_ap[state_index(s)];
    const std::string name(to_string(s));
    if (v) {
      ap[name] = *v;
    } else {
      ap[name] = nullptr;
      excluded.push_back(name);
    }
  }
  j["per_class_ap"] = ap;
  j["map"] = report.ap.map;
  j["excluded_classes"] = excluded;
  j["precision"] = report.f1.precision;
  j["recall"] = report.f1.recall;
  j["f1"] = report.f1.f1;
  j["threshold"] = report.threshold;
  j["box_factor"] = report.box_factor;
  j["tp"] = report.f1.tp;
  j["fp"] = report.f1.fp;
  j["num_gt"] = report.f1.num_gt;
  j["num_detections"] = report.num_detections;
  if (report.sweep) {
    nlohmann::ordered_json s;
    s["best_threshold"] = report.sweep->best_threshold;
    s["best_f1"] = report.sweep->best.f1;
    s["f1_per_threshold"] = report.sweep->f1_per_threshold;
    j["threshold_sweep"] = s;
  }
  if (report.box_validation) {
    nlohmann::ordered_json b;
    b["best_factor"] = report.box_validation->best_factor;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.box_validation->factors.size(); ++i) {
      rows.push_back({{"f", report.box_validation->factors[i]}, {"map", report.box_validation->maps[i]}});
    }
    b["factors"] = rows;
    j["box_validation"] = b;
  }
  return j.dump(2) + "\n";
}

std::string report_table(const EvalReport& report) {
  std::ostringstream out;
  char line[128];
  out << "class    AP\n";
  for (LightState s : kAllStates) {
    const auto& v = report.ap.per_class_ap[state_index(s)];
    if (v) {
      std::snprintf(line, sizeof(line), "%-8s %.4f\n", std::string(to_string(s)).c_str(), *v);
    } else {
      std::snprintf(line, sizeof(line), "%-8s n/a (no ground truth)\n", std::string(to_string(s)).c_str());
    }
    out << line;
  }
  std::snprintf(line, sizeof(line), "mAP      %.4f\n", report.ap.map);
  out << line;
  std::snprintf(line, sizeof(line), "threshold %.2f  precision %.4f  recall %.4f  F1 %.4f\n",
                report.threshold, report.f1.precision, report.f1.recall, report.f1.f1);
  out << line;
  std::snprintf(line, sizeof(line), "TP %zu  FP %zu  GT %zu  detections %zu  box factor %.1f\n",
                report.f1.tp, report.f1.fp, report.f1.num_gt, report.num_detections, report.box_factor);
  out << line;
  if (report.sweep) {
    std::snprintf(line, sizeof(line), "best threshold %.2f  F1 %.4f\n", report.sweep->best_threshold,
                  report.sweep->best.f1);
    out << line;
  }
  if (report.box_validation) {
    for (std::size_t i = 0; i < report.box_validation->factors.size(); ++i) {
      std::snprintf(line, sizeof(line), "f %.1f  mAP %.4f\n", report.box_validation->factors[i],
                    report.box_validation->maps[i]);
      out << line;
    }
    std::snprintf(line, sizeof(line), "best factor %.1f\n", report.box_validation->best_factor);
    out << line;
  }
  return out.str();
}

}  // namespace synthlight::eval
