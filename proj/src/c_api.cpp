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

#include "ucr/ucr.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucr/coder.hpp"
#include "ucr/dota_io.hpp"
#include "ucr/error.hpp"
#include "ucr/eval.hpp"
#include "ucr/geometry.hpp"
#include "ucr/loss.hpp"
#include "ucr/optim.hpp"
#include "ucr/report_io.hpp"

struct ucr_fit_report {
  ucr::FitReport report;
};

struct ucr_bias_study {
  ucr::BiasStudy study;
};

struct ucr_dataset {
  std::vector<ucr::ImageAnnotations> images;
};

struct ucr_detections {
  std::vector<ucr::DetectionRecord> records;
};

struct ucr_eval_result {
  ucr::EvalResult result;
};

namespace {

thread_local std::string g_last_error;

ucr_status ToStatus(ucr::ErrorCode code) {
  switch (code) {
    case ucr::ErrorCode::kInvalidArgument:
      return UCR_ERROR_INVALID_ARGUMENT;
    case ucr::ErrorCode::kDomain:
      return UCR_ERROR_DOMAIN;
    case ucr::ErrorCode::kParse:
      return UCR_ERROR_PARSE;
    case ucr::ErrorCode::kIo:
      return UCR_ERROR_IO;
    case ucr::ErrorCode::kNumeric:
      return UCR_ERROR_NUMERIC;
  }
  return UCR_ERROR_INTERNAL;
}

template <typename Fn>
ucr_status Guard(const char* where, Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return UCR_OK;
  } catch (const ucr::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = std::string(where) + ": out of memory";
    return UCR_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string(where) + ": " + e.what();
    return UCR_ERROR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) {
    throw ucr::Error(ucr::ErrorCode::kInvalidArgument,
                     std::string(what) + " must not be null");
  }
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string_view Provenance(const char* p) {
  return p ? std::string_view(p) : std::string_view();
}

ucr::ResolverConfig ToCpp(const ucr_resolver_config* c) {
  Require(c != nullptr, "resolver config");
  ucr::ResolverConfig out{c->dimension, c->angular_frequency, c->amplitude};
  out.Validate();
  return out;
}

ucr::DeviationKind ToKind(int kind) {
  if (kind == UCR_DEVIATION_ABSOLUTE) return ucr::DeviationKind::kAbsolute;
  if (kind == UCR_DEVIATION_SQUARED) return ucr::DeviationKind::kSquared;
  throw ucr::Error(ucr::ErrorCode::kInvalidArgument,
                   "unknown deviation kind " + std::to_string(kind));
}

ucr::LossConfig ToCpp(const ucr_loss_config* c) {
  Require(c != nullptr, "loss config");
  return {c->lambda_reg, c->lambda_uc, c->m_invalid, ToKind(c->uc_kind),
          ToKind(c->reg_kind)};
}

ucr::RotatedBox ToCpp(const ucr_rbox* b) {
  Require(b != nullptr, "box");
  return ucr::RotatedBox::Make(b->cx, b->cy, b->w, b->h, b->theta);
}

ucr_rbox ToC(const ucr::RotatedBox& b) {
  return {b.cx, b.cy, b.w, b.h, b.theta.radians()};
}

ucr::FitTask ToCpp(const ucr_fit_task* t) {
  Require(t != nullptr, "fit task");
  ucr::FitTask out;
  if (t->n_targets > 0) Require(t->targets != nullptr, "targets");
  for (std::size_t i = 0; i < t->n_targets; ++i) {
    out.targets.push_back(ucr::AngleLe90::FromRadians(t->targets[i]));
  }
  out.noise_sigma = t->noise_sigma;
  out.init_scale = t->init_scale;
  out.steps = t->steps;
  out.learning_rate = t->learning_rate;
  out.seed = t->seed;
  out.noise_draws = t->noise_draws;
  out.init = t->init_on_manifold ? ucr::InitMode::kOnManifold
                                 : ucr::InitMode::kUniformBall;
  return out;
}

std::span<const double> Span(const double* p, std::size_t n) {
  if (n > 0) Require(p != nullptr, "vector");
  return {p, n};
}

}  // namespace

extern "C" {

const char* ucr_version(void) { return UCR_VERSION_STRING; }

const char* ucr_last_error(void) { return g_last_error.c_str(); }

void ucr_string_free(char* s) { std::free(s); }

void ucr_resolver_config_default(ucr_resolver_config* cfg) {
  if (!cfg) return;
  const ucr::ResolverConfig d;
  *cfg = {d.dimension, d.angular_frequency, d.amplitude};
}

void ucr_loss_config_default(ucr_loss_config* cfg) {
  if (!cfg) return;
  const ucr::LossConfig d;
  *cfg = {d.lambda_reg, d.lambda_uc, d.m_invalid, UCR_DEVIATION_ABSOLUTE,
          UCR_DEVIATION_ABSOLUTE};
}

void ucr_fit_task_default(ucr_fit_task* task) {
  if (!task) return;
  const ucr::FitTask d;
  *task = {nullptr,        0,      d.noise_sigma,   d.init_scale, d.steps,
           d.learning_rate, d.seed, d.noise_draws, 0};
}

void ucr_bias_study_config_default(ucr_bias_study_config* cfg) {
  if (!cfg) return;
  const ucr::BiasStudyConfig d;
  ucr_fit_task_default(&cfg->base);
  cfg->base.noise_sigma = 0.2;
  cfg->base.init_scale = 3.0;
  cfg->base.steps = 500;
  cfg->base.learning_rate = 0.05;
  cfg->base.seed = 0;
  cfg->repetitions = d.repetitions;
  cfg->samples = d.samples;
  cfg->baseline_lambda_uc = d.baseline_lambda_uc;
}

ucr_status ucr_config_validate(const ucr_resolver_config* rcfg,
                               const ucr_loss_config* lcfg, char** warnings) {
  return Guard("ucr_config_validate", [&] {
    const ucr::ResolverConfig r = ToCpp(rcfg);
    if (lcfg) ToCpp(lcfg).Validate(r);
    if (warnings) *warnings = Duplicate(nlohmann::json(r.Warnings()).dump());
  });
}

ucr_status ucr_normalize_angle(double raw, double* out) {
  return Guard("ucr_normalize_angle", [&] {
    Require(out != nullptr, "out");
    *out = ucr::NormalizeAngle(raw).radians();
  });
}

ucr_status ucr_rbox_to_polygon(const ucr_rbox* box, double out_xy[8]) {
  return Guard("ucr_rbox_to_polygon", [&] {
    Require(out_xy != nullptr, "out");
    const ucr::QuadPolygon p = ucr::RboxToPolygon(ToCpp(box));
    for (int i = 0; i < 4; ++i) {
      out_xy[2 * i] = p[i].x;
      out_xy[2 * i + 1] = p[i].y;
    }
  });
}

ucr_status ucr_rbox_to_hbb(const ucr_rbox* box, double out[4]) {
  return Guard("ucr_rbox_to_hbb", [&] {
    Require(out != nullptr, "out");
    const ucr::HorizontalBox h = ucr::RboxToHbb(ToCpp(box));
    out[0] = h.xmin;
    out[1] = h.ymin;
    out[2] = h.xmax;
    out[3] = h.ymax;
  });
}

ucr_status ucr_rotated_iou(const ucr_rbox* a, const ucr_rbox* b, double* out) {
  return Guard("ucr_rotated_iou", [&] {
    Require(out != nullptr, "out");
    *out = ucr::RotatedIou(ToCpp(a), ToCpp(b));
  });
}

ucr_status ucr_aspect_ratio(const ucr_rbox* box, double* out) {
  return Guard("ucr_aspect_ratio", [&] {
    Require(out != nullptr, "out");
    *out = ucr::AspectRatio(ToCpp(box));
  });
}

ucr_status ucr_poly_to_rbox(const double xy[8], ucr_rbox* out) {
  return Guard("ucr_poly_to_rbox", [&] {
    Require(xy != nullptr && out != nullptr, "polygon/out");
    ucr::QuadPolygon p;
    for (int i = 0; i < 4; ++i) p[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = ToC(ucr::PolyToRbox(p));
  });
}

ucr_status ucr_encode(const ucr_resolver_config* cfg, double theta, double* out,
                      size_t out_len) {
  if (cfg != nullptr && cfg->dimension > 0 &&
      out_len < static_cast<size_t>(cfg->dimension)) {
    g_last_error = "ucr_encode: output buffer holds " + std::to_string(out_len) +
                   " values, need " + std::to_string(cfg->dimension);
    return UCR_ERROR_BUFFER_TOO_SMALL;
  }
  return Guard("ucr_encode", [&] {
    const ucr::ResolverConfig r = ToCpp(cfg);
    Require(out != nullptr, "out");
    const ucr::Encoding e = ucr::Encode(ucr::AngleLe90::FromRadians(theta), r);
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = e[i];
  });
}

ucr_status ucr_decode(const ucr_resolver_config* cfg, const double* m, size_t n,
                      double* theta) {
  return Guard("ucr_decode", [&] {
    Require(theta != nullptr, "theta");
    *theta = ucr::Decode(Span(m, n), ToCpp(cfg)).radians();
  });
}

ucr_status ucr_constraint_residuals(const ucr_resolver_config* cfg,
                                    const double* m, size_t n, double* out,
                                    size_t capacity, size_t* count) {
  bool short_buffer = false;
  const ucr_status st = Guard("ucr_constraint_residuals", [&] {
    const auto r = ucr::ConstraintResiduals(Span(m, n), ToCpp(cfg));
    if (count) *count = r.size();
    if (capacity < r.size()) {
      short_buffer = true;
      return;
    }
    Require(out != nullptr || r.empty(), "out");
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i];
  });
  if (st == UCR_OK && short_buffer) {
    g_last_error = "ucr_constraint_residuals: output buffer too small";
    return UCR_ERROR_BUFFER_TOO_SMALL;
  }
  return st;
}

ucr_status ucr_encoding_gap(const ucr_resolver_config* cfg, double a, double b,
                            double* out) {
  return Guard("ucr_encoding_gap", [&] {
    Require(out != nullptr, "out");
    *out = ucr::EncodingGap(ucr::AngleLe90::FromRadians(a),
                            ucr::AngleLe90::FromRadians(b), ToCpp(cfg));
  });
}

ucr_status ucr_unit_cycle_loss(const ucr_resolver_config* cfg, const double* m,
                               size_t n, int kind, double* out) {
  return Guard("ucr_unit_cycle_loss", [&] {
    Require(out != nullptr, "out");
    *out = ucr::UnitCycleLoss(Span(m, n), ToCpp(cfg), ToKind(kind));
  });
}

ucr_status ucr_is_invalid(const ucr_loss_config* cfg, const double* m, size_t n,
                          int* out) {
  return Guard("ucr_is_invalid", [&] {
    Require(out != nullptr, "out");
    *out = ucr::IsInvalid(Span(m, n), ToCpp(cfg)) ? 1 : 0;
  });
}

ucr_status ucr_regression_loss(const double* pred, const double* target,
                               size_t n, int kind, double* out) {
  return Guard("ucr_regression_loss", [&] {
    Require(out != nullptr, "out");
    *out = ucr::RegressionLoss(Span(pred, n), Span(target, n), ToKind(kind));
  });
}

ucr_status ucr_total_loss(const ucr_resolver_config* rcfg,
                          const ucr_loss_config* lcfg, const double* pred,
                          size_t n, double target_theta,
                          ucr_loss_breakdown* out) {
  return Guard("ucr_total_loss", [&] {
    Require(out != nullptr, "out");
    const ucr::LossBreakdown b =
        ucr::TotalLoss(Span(pred, n), ucr::AngleLe90::FromRadians(target_theta),
                       ToCpp(rcfg), ToCpp(lcfg));
    *out = {b.cls, b.uc, b.reg, b.total, b.invalid ? 1 : 0};
  });
}

ucr_status ucr_total_loss_gradient(const ucr_resolver_config* rcfg,
                                   const ucr_loss_config* lcfg,
                                   const double* pred, size_t n,
                                   double target_theta, double* grad) {
  return Guard("ucr_total_loss_gradient", [&] {
    Require(grad != nullptr, "grad");
    const auto g = ucr::TotalLossGradient(
        Span(pred, n), ucr::AngleLe90::FromRadians(target_theta), ToCpp(rcfg),
        ToCpp(lcfg));
    for (std::size_t i = 0; i < g.size(); ++i) grad[i] = g[i];
  });
}

ucr_status ucr_fit_encodings(const ucr_fit_task* task,
                             const ucr_resolver_config* rcfg,
                             const ucr_loss_config* lcfg,
                             ucr_fit_report** out) {
  return Guard("ucr_fit_encodings", [&] {
    Require(out != nullptr, "out");
    auto report = std::make_unique<ucr_fit_report>();
    report->report = ucr::FitEncodings(ToCpp(task), ToCpp(rcfg), ToCpp(lcfg));
    *out = report.release();
  });
}

size_t ucr_fit_report_size(const ucr_fit_report* report) {
  return report ? report->report.size() : 0;
}

ucr_status ucr_fit_report_sample(const ucr_fit_report* report, size_t index,
                                 double* ae2, double* angle_error) {
  return Guard("ucr_fit_report_sample", [&] {
    Require(report != nullptr, "report");
    if (index >= report->report.size()) {
      throw ucr::Error(ucr::ErrorCode::kInvalidArgument,
                       "sample index out of range");
    }
    if (ae2) *ae2 = report->report.ae2[index];
    if (angle_error) *angle_error = report->report.angle_error[index];
  });
}

ucr_status ucr_fit_report_quantiles(const ucr_fit_report* report,
                                    double ae2_q[3], double angle_error_q[3]) {
  return Guard("ucr_fit_report_quantiles", [&] {
    Require(report != nullptr, "report");
    const auto& a = report->report.ae2_quantiles;
    const auto& e = report->report.angle_error_quantiles;
    if (ae2_q) {
      ae2_q[0] = a.p10;
      ae2_q[1] = a.p50;
      ae2_q[2] = a.p90;
    }
    if (angle_error_q) {
      angle_error_q[0] = e.p10;
      angle_error_q[1] = e.p50;
      angle_error_q[2] = e.p90;
    }
  });
}

ucr_status ucr_fit_report_csv(const ucr_fit_report* report,
                              const char* provenance, char** out) {
  return Guard("ucr_fit_report_csv", [&] {
    Require(report != nullptr && out != nullptr, "report/out");
    *out = Duplicate(ucr::io::FitReportCsv(report->report, Provenance(provenance)));
  });
}

ucr_status ucr_fit_report_histogram_csv(const ucr_fit_report* report, int bins,
                                        double hi, char** out) {
  return Guard("ucr_fit_report_histogram_csv", [&] {
    Require(report != nullptr && out != nullptr, "report/out");
    const ucr::Histogram h = ucr::Ae2Histogram(report->report, bins, hi);
    std::string csv = "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      csv += ucr::io::FormatDouble(h.lo + b * h.BinWidth()) + "," +
             ucr::io::FormatDouble(h.lo + (b + 1) * h.BinWidth()) + "," +
             std::to_string(h.counts[b]) + "\n";
    }
    *out = Duplicate(csv);
  });
}

void ucr_fit_report_free(ucr_fit_report* report) { delete report; }

ucr_status ucr_bias_study_run(const ucr_bias_study_config* cfg,
                              const ucr_resolver_config* rcfg,
                              const ucr_loss_config* lcfg,
                              ucr_bias_study** out) {
  return Guard("ucr_bias_study_run", [&] {
    Require(cfg != nullptr && out != nullptr, "config/out");
    ucr::BiasStudyConfig c;
    ucr_fit_task base = cfg->base;
    base.targets = nullptr;
    base.n_targets = 0;
    c.base = ToCpp(&base);
    c.repetitions = cfg->repetitions;
    c.samples = cfg->samples;
    c.baseline_lambda_uc = cfg->baseline_lambda_uc;
    auto study = std::make_unique<ucr_bias_study>();
    study->study = ucr::RunBiasStudy(c, ToCpp(rcfg), ToCpp(lcfg));
    *out = study.release();
  });
}

ucr_status ucr_bias_study_wins(const ucr_bias_study* study, int* repetitions,
                               int* ae2_wins, int* angle_wins) {
  return Guard("ucr_bias_study_wins", [&] {
    Require(study != nullptr, "study");
    if (repetitions) *repetitions = static_cast<int>(study->study.pairs.size());
    if (ae2_wins) *ae2_wins = study->study.ae2_wins;
    if (angle_wins) *angle_wins = study->study.angle_wins;
  });
}

ucr_status ucr_bias_study_summary_json(const ucr_bias_study* study,
                                       const char* provenance, char** out) {
  return Guard("ucr_bias_study_summary_json", [&] {
    Require(study != nullptr && out != nullptr, "study/out");
    *out = Duplicate(
        ucr::io::BiasStudySummaryJson(study->study, Provenance(provenance)));
  });
}

ucr_status ucr_bias_study_samples_csv(const ucr_bias_study* study,
                                      const char* provenance, char** out) {
  return Guard("ucr_bias_study_samples_csv", [&] {
    Require(study != nullptr && out != nullptr, "study/out");
    *out = Duplicate(
        ucr::io::BiasStudySamplesCsv(study->study, Provenance(provenance)));
  });
}

ucr_status ucr_bias_study_histogram_csv(const ucr_bias_study* study, int bins,
                                        const char* provenance, char** out) {
  return Guard("ucr_bias_study_histogram_csv", [&] {
    Require(study != nullptr && out != nullptr, "study/out");
    *out = Duplicate(ucr::io::BiasStudyHistogramCsv(study->study, bins,
                                                    Provenance(provenance)));
  });
}

void ucr_bias_study_free(ucr_bias_study* study) { delete study; }

ucr_status ucr_boundary_demo(const ucr_resolver_config* cfg,
                             const double* epsilons, size_t n, double* loss_1d,
                             double* gap) {
  return Guard("ucr_boundary_demo", [&] {
    const auto rows = ucr::BoundaryDemo(Span(epsilons, n), ToCpp(cfg));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (loss_1d) loss_1d[i] = rows[i].loss_1d;
      if (gap) gap[i] = rows[i].gap;
    }
  });
}

ucr_status ucr_boundary_demo_csv(const double* epsilons, size_t n,
                                 const char* provenance, char** out) {
  return Guard("ucr_boundary_demo_csv", [&] {
    Require(out != nullptr, "out");
    const auto eps = Span(epsilons, n);
    *out = Duplicate(ucr::io::BoundaryCsv(
        std::vector<double>(eps.begin(), eps.end()), Provenance(provenance)));
  });
}

ucr_status ucr_dataset_create(ucr_dataset** out) {
  return Guard("ucr_dataset_create", [&] {
    Require(out != nullptr, "out");
    *out = new ucr_dataset();
  });
}

ucr_status ucr_dataset_add_text(ucr_dataset* ds, const char* image_id,
                                const char* text,
                                const uint64_t* content_hash) {
  return Guard("ucr_dataset_add_text", [&] {
    Require(ds != nullptr && image_id != nullptr && text != nullptr,
            "dataset/image_id/text");
    ucr::ImageAnnotations img = ucr::ParseDotaFile(text, image_id);
    if (content_hash) img.content_hash = *content_hash;
    ds->images.push_back(std::move(img));
  });
}

ucr_status ucr_dataset_load_dir(ucr_dataset* ds, const char* annotation_dir,
                                const char* image_dir) {
  return Guard("ucr_dataset_load_dir", [&] {
    Require(ds != nullptr && annotation_dir != nullptr, "dataset/dir");
    auto loaded = ucr::io::LoadDotaDirectory(
        annotation_dir, image_dir ? std::filesystem::path(image_dir)
                                  : std::filesystem::path());
    for (auto& img : loaded) ds->images.push_back(std::move(img));
  });
}

ucr_status ucr_dataset_add_rbox_csv(ucr_dataset* ds, const char* text) {
  return Guard("ucr_dataset_add_rbox_csv", [&] {
    Require(ds != nullptr && text != nullptr, "dataset/text");
    for (auto& img : ucr::io::ParseRboxCsv(text)) {
      ds->images.push_back(std::move(img));
    }
  });
}

size_t ucr_dataset_image_count(const ucr_dataset* ds) {
  return ds ? ds->images.size() : 0;
}

size_t ucr_dataset_record_count(const ucr_dataset* ds) {
  if (!ds) return 0;
  std::size_t n = 0;
  for (const auto& img : ds->images) n += img.records.size();
  return n;
}

ucr_status ucr_dataset_image_text(const ucr_dataset* ds, size_t index,
                                  char** image_id, char** text) {
  return Guard("ucr_dataset_image_text", [&] {
    Require(ds != nullptr, "dataset");
    if (index >= ds->images.size()) {
      throw ucr::Error(ucr::ErrorCode::kInvalidArgument,
                       "image index out of range");
    }
    const auto& img = ds->images[index];
    std::string body = ucr::WriteDotaFile(img);
    if (image_id) *image_id = Duplicate(img.image_id);
    if (text) *text = Duplicate(body);
  });
}

ucr_status ucr_dataset_write_dir(const ucr_dataset* ds, const char* dir) {
  return Guard("ucr_dataset_write_dir", [&] {
    Require(ds != nullptr && dir != nullptr, "dataset/dir");
    ucr::io::WriteDotaDirectory(ds->images, dir);
  });
}

ucr_status ucr_dataset_rbox_csv(const ucr_dataset* ds, const char* provenance,
                                char** out) {
  return Guard("ucr_dataset_rbox_csv", [&] {
    Require(ds != nullptr && out != nullptr, "dataset/out");
    *out = Duplicate(ucr::io::RboxCsv(ds->images, Provenance(provenance)));
  });
}

ucr_status ucr_dataset_clean(const ucr_dataset* ds, ucr_dataset** cleaned,
                             char** report_jsonl) {
  return Guard("ucr_dataset_clean", [&] {
    Require(ds != nullptr && cleaned != nullptr, "dataset/out");
    ucr::CleanResult r = ucr::CleanDataset(ds->images);
    std::string report = ucr::io::CleanReportJsonl(r.report);
    auto out = std::make_unique<ucr_dataset>();
    out->images = std::move(r.images);
    if (report_jsonl) *report_jsonl = Duplicate(report);
    *cleaned = out.release();
  });
}

ucr_status ucr_dataset_stats(const ucr_dataset* ds, int angle_bins,
                             const char* provenance, char** csv, char** json,
                             size_t* conversion_failures) {
  return Guard("ucr_dataset_stats", [&] {
    Require(ds != nullptr, "dataset");
    ucr::StatsOptions opts;
    if (angle_bins > 0) opts.angle_bins = angle_bins;
    const ucr::DatasetStats s = ucr::ComputeStats(ds->images, opts);
    std::string c = ucr::io::StatsCsv(s, Provenance(provenance));
    std::string j = ucr::io::StatsJson(s, Provenance(provenance));
    if (conversion_failures) *conversion_failures = s.conversion_failures;
    char* c_out = csv ? Duplicate(c) : nullptr;
    if (json) {
      try {
        *json = Duplicate(j);
      } catch (...) {
        std::free(c_out);
        throw;
      }
    }
    if (csv) *csv = c_out;
  });
}

void ucr_dataset_free(ucr_dataset* ds) { delete ds; }

ucr_status ucr_detections_create(ucr_detections** out) {
  return Guard("ucr_detections_create", [&] {
    Require(out != nullptr, "out");
    *out = new ucr_detections();
  });
}

ucr_status ucr_detections_add(ucr_detections* dets, const char* image_id,
                              const char* category, double score,
                              const ucr_rbox* box) {
  return Guard("ucr_detections_add", [&] {
    Require(dets != nullptr && image_id != nullptr && category != nullptr,
            "detections/image_id/category");
    if (!(score >= 0.0 && score <= 1.0)) {
      throw ucr::Error(ucr::ErrorCode::kDomain, "score must lie in [0, 1]");
    }
    dets->records.push_back({image_id, ToCpp(box), category, score});
  });
}

ucr_status ucr_detections_parse(ucr_detections* dets, const char* text) {
  return Guard("ucr_detections_parse", [&] {
    Require(dets != nullptr && text != nullptr, "detections/text");
    for (auto& d : ucr::io::ParseDetections(text)) {
      dets->records.push_back(std::move(d));
    }
  });
}

size_t ucr_detections_count(const ucr_detections* dets) {
  return dets ? dets->records.size() : 0;
}

void ucr_detections_free(ucr_detections* dets) { delete dets; }

ucr_status ucr_evaluate(const ucr_detections* dets, const ucr_dataset* gts,
                        int ignore_difficult, ucr_eval_result** out) {
  return Guard("ucr_evaluate", [&] {
    Require(dets != nullptr && gts != nullptr && out != nullptr,
            "detections/ground truth/out");
    ucr::EvalOptions opts;
    opts.ignore_difficult = ignore_difficult != 0;
    auto res = std::make_unique<ucr_eval_result>();
    res->result = ucr::Evaluate(dets->records, gts->images, opts);
    *out = res.release();
  });
}

ucr_status ucr_eval_result_metrics(const ucr_eval_result* res, double* ap50,
                                   double* ap75, double* map) {
  return Guard("ucr_eval_result_metrics", [&] {
    Require(res != nullptr, "result");
    if (ap50) *ap50 = res->result.ap50;
    if (ap75) *ap75 = res->result.ap75;
    if (map) *map = res->result.map;
  });
}

ucr_status ucr_eval_result_json(const ucr_eval_result* res,
                                const char* provenance, char** out) {
  return Guard("ucr_eval_result_json", [&] {
    Require(res != nullptr && out != nullptr, "result/out");
    *out = Duplicate(ucr::io::EvalJson(res->result, Provenance(provenance)));
  });
}

ucr_status ucr_eval_result_table(const ucr_eval_result* res, char** out) {
  return Guard("ucr_eval_result_table", [&] {
    Require(res != nullptr && out != nullptr, "result/out");
    *out = Duplicate(ucr::io::EvalTable(res->result));
  });
}

ucr_status ucr_eval_result_warnings(const ucr_eval_result* res, size_t* count,
                                    char** out) {
  return Guard("ucr_eval_result_warnings", [&] {
    Require(res != nullptr, "result");
    if (count) *count = res->result.warnings.size();
    if (out) *out = Duplicate(nlohmann::json(res->result.warnings).dump());
  });
}

void ucr_eval_result_free(ucr_eval_result* res) { delete res; }

}  // extern "C"
