// Copyright 2026 The UCR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UCR_EVAL_HPP_
#define UCR_EVAL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucr/dota_io.hpp"
#include "ucr/geometry.hpp"

namespace ucr {

struct DetectionRecord {
  std::string image_id;
  RotatedBox box;
  std::string category;
  double score = 0.0;
};

struct GroundTruthBox {
  RotatedBox box;
  bool difficult = false;
};

// Outcome for one detection, in the order the detections were given.
struct MatchResult {
  std::optional<std::size_t> gt;  // matched ground truth index
  bool ignored = false;           // matched a difficult ground truth
  bool true_positive() const { return gt.has_value() && !ignored; }
};

// Greedy matching for one image and one category. `dets` must already be in
// descending score order. Each detection takes the highest-IoU unmatched
// non-difficult ground truth with IoU >= threshold; failing that, a
// difficult one (the detection is then ignored, and the difficult box stays
// available); otherwise it is a false positive.
std::vector<MatchResult> MatchDetections(std::span<const RotatedBox> dets,
                                         std::span<const GroundTruthBox> gts,
                                         double iou_threshold);

// 101-point interpolated AP from TP/FP flags in descending score order.
// nullopt when n_gt == 0.
std::optional<double> AveragePrecision(const std::vector<bool>& tp_flags,
                                       std::size_t n_gt);

struct EvalOptions {
  bool ignore_difficult = true;
  std::vector<double> thresholds = {0.50, 0.55, 0.60, 0.65, 0.70,
                                    0.75, 0.80, 0.85, 0.90, 0.95};
};

struct EvalResult {
  std::vector<double> thresholds;
  // category -> AP per threshold; nullopt where the category has no gts.
  std::map<std::string, std::vector<std::optional<double>>> per_category;
  // Mean over defined categories, one entry per threshold.
  std::vector<double> threshold_means;
  double ap50 = 0.0;
  double ap75 = 0.0;
  double map = 0.0;
  std::vector<std::string> warnings;
};

// Detections are sorted globally by descending score; equal scores fall back
// to (image_id, serialized box) so the result does not depend on input order.
EvalResult Evaluate(std::span<const DetectionRecord> detections,
                    std::span<const ImageAnnotations> ground_truth,
                    const EvalOptions& options = {});

}  // namespace ucr

#endif  // UCR_EVAL_HPP_
