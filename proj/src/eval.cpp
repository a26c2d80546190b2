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

#include "ucr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "ucr/error.hpp"

namespace ucr {
namespace {

std::vector<MatchResult> MatchWithIous(const std::vector<double>& ious,
                                       std::size_t n_dets,
                                       std::span<const GroundTruthBox> gts,
                                       double threshold) {
  const std::size_t n_gts = gts.size();
  std::vector<bool> taken(n_gts, false);
  std::vector<MatchResult> out(n_dets);
  for (std::size_t d = 0; d < n_dets; ++d) {
    for (bool want_difficult : {false, true}) {
      double best = threshold;
      std::optional<std::size_t> pick;
      for (std::size_t g = 0; g < n_gts; ++g) {
        if (taken[g] || gts[g].difficult != want_difficult) continue;
        const double iou = ious[d * n_gts + g];
        if (iou >= best && (!pick || iou > best)) {
          best = iou;
          pick = g;
        }
      }
      if (pick) {
        // Difficult boxes stay available: repeat hits on them are ignored too.
        if (!want_difficult) taken[*pick] = true;
        out[d].gt = pick;
        out[d].ignored = want_difficult;
        break;
      }
    }
  }
  return out;
}

std::vector<double> IouMatrix(std::span<const RotatedBox> dets,
                              std::span<const GroundTruthBox> gts) {
  std::vector<double> ious(dets.size() * gts.size());
  for (std::size_t d = 0; d < dets.size(); ++d) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      ious[d * gts.size() + g] = RotatedIou(dets[d], gts[g].box);
    }
  }
  return ious;
}

auto CanonicalKey(const DetectionRecord& d) {
  return std::make_tuple(-d.score, std::cref(d.image_id), d.box.cx, d.box.cy,
                         d.box.w, d.box.h, d.box.theta.radians());
}

double ThresholdMean(const EvalResult& r, double t) {
  for (std::size_t i = 0; i < r.thresholds.size(); ++i) {
    if (std::fabs(r.thresholds[i] - t) < 1e-9) return r.threshold_means[i];
  }
  return 0.0;
}

}  // namespace

std::vector<MatchResult> MatchDetections(std::span<const RotatedBox> dets,
                                         std::span<const GroundTruthBox> gts,
                                         double iou_threshold) {
  return MatchWithIous(IouMatrix(dets, gts), dets.size(), gts, iou_threshold);
}

std::optional<double> AveragePrecision(const std::vector<bool>& tp_flags,
                                       std::size_t n_gt) {
  if (n_gt == 0) return std::nullopt;
  const std::size_t n = tp_flags.size();
  std::vector<double> recall(n), precision(n);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (tp_flags[i]) ++tp;
    recall[i] = static_cast<double>(tp) / static_cast<double>(n_gt);
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  // Precision envelope: best precision at any recall at or beyond this one.
  for (std::size_t i = n; i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double acc = 0.0;
  std::size_t cursor = 0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    while (cursor < n && recall[cursor] < r) ++cursor;
    if (cursor < n) acc += precision[cursor];
  }
  return acc / 101.0;
}

EvalResult Evaluate(std::span<const DetectionRecord> detections,
                    std::span<const ImageAnnotations> ground_truth,
                    const EvalOptions& options) {
  for (const DetectionRecord& d : detections) {
    if (!(std::isfinite(d.score) && d.score >= 0.0 && d.score <= 1.0)) {
      throw Error(ErrorCode::kDomain,
                  "detection score must lie in [0, 1] (image " + d.image_id +
                      ")");
    }
  }

  EvalResult result;
  result.thresholds = options.thresholds;

  // category -> image -> boxes
  std::map<std::string, std::map<std::string, std::vector<GroundTruthBox>>> gts;
  std::map<std::string, std::size_t> n_gt;
  for (const ImageAnnotations& img : ground_truth) {
    for (const AnnotationRecord& rec : img.records) {
      GroundTruthBox g;
      try {
        g.box = PolyToRbox(rec.polygon);
      } catch (const Error& e) {
        result.warnings.push_back("skipping ground truth in " + img.image_id +
                                  ": " + e.what());
        continue;
      }
      g.difficult = options.ignore_difficult && rec.difficulty == 1;
      gts[rec.category][img.image_id].push_back(g);
      if (!g.difficult) ++n_gt[rec.category];
      else n_gt.try_emplace(rec.category, 0);
    }
  }

  std::map<std::string, std::vector<const DetectionRecord*>> dets_by_cat;
  for (const DetectionRecord& d : detections) {
    dets_by_cat[d.category].push_back(&d);
  }
  for (const auto& [cat, list] : dets_by_cat) {
    if (!gts.count(cat)) {
      result.warnings.push_back("detections for unknown category '" + cat +
                                "' scored against zero ground truths");
    }
  }

  std::vector<std::string> categories;
  for (const auto& [cat, unused] : n_gt) categories.push_back(cat);
  for (const auto& [cat, unused] : dets_by_cat) {
    if (!n_gt.count(cat)) categories.push_back(cat);
  }
  std::sort(categories.begin(), categories.end());

  const std::size_t n_thr = options.thresholds.size();
  for (const std::string& cat : categories) {
    std::vector<const DetectionRecord*> dets = dets_by_cat[cat];
    std::sort(dets.begin(), dets.end(),
              [](const DetectionRecord* a, const DetectionRecord* b) {
                return CanonicalKey(*a) < CanonicalKey(*b);
              });

    // Per image: positions into `dets` and the IoU matrix, computed once.
    struct ImageWork {
      std::vector<std::size_t> det_positions;
      std::vector<double> ious;
    };
    std::map<std::string, ImageWork> work;
    for (std::size_t i = 0; i < dets.size(); ++i) {
      work[dets[i]->image_id].det_positions.push_back(i);
    }
    const auto& cat_gts = gts[cat];
    static const std::vector<GroundTruthBox> kNone;
    auto gts_for = [&](const std::string& image) -> const std::vector<GroundTruthBox>& {
      const auto it = cat_gts.find(image);
      return it == cat_gts.end() ? kNone : it->second;
    };
    for (auto& [image, w] : work) {
      std::vector<RotatedBox> boxes;
      for (std::size_t pos : w.det_positions) boxes.push_back(dets[pos]->box);
      w.ious = IouMatrix(boxes, gts_for(image));
    }

    const std::size_t cat_gt = n_gt.count(cat) ? n_gt.at(cat) : 0;
    std::vector<std::optional<double>> aps(n_thr);
    for (std::size_t t = 0; t < n_thr; ++t) {
      std::vector<int> state(dets.size(), 0);  // 1 TP, 0 FP, -1 ignored
      for (const auto& [image, w] : work) {
        const auto matches = MatchWithIous(w.ious, w.det_positions.size(),
                                           gts_for(image),
                                           options.thresholds[t]);
        for (std::size_t k = 0; k < matches.size(); ++k) {
          state[w.det_positions[k]] =
              matches[k].ignored ? -1 : (matches[k].gt ? 1 : 0);
        }
      }
      std::vector<bool> flags;
      for (int s : state) {
        if (s >= 0) flags.push_back(s == 1);
      }
      aps[t] = AveragePrecision(flags, cat_gt);
    }
    result.per_category[cat] = std::move(aps);
  }

  result.threshold_means.assign(n_thr, 0.0);
  for (std::size_t t = 0; t < n_thr; ++t) {
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& [cat, aps] : result.per_category) {
      if (aps[t]) {
        sum += *aps[t];
        ++defined;
      }
    }
    result.threshold_means[t] = defined ? sum / defined : 0.0;
  }
  result.ap50 = ThresholdMean(result, 0.50);
  result.ap75 = ThresholdMean(result, 0.75);
  result.map = n_thr ? std::accumulate(result.threshold_means.begin(),
                                       result.threshold_means.end(), 0.0) /
                           n_thr
                     : 0.0;
  return result;
}

}  // namespace ucr
