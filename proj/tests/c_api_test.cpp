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


#include <cmath>
#include <cstring>
#include <string>

#include <gtest/gtest.h>

#include "ucr/ucr.h"

namespace {

std::string Take(char* s) {
  std::string out = s ? s : "";
  ucr_string_free(s);
  return out;
}

TEST(CApiTest, VersionAndDefaults) {
  EXPECT_STRNE(ucr_version(), "");
  ucr_resolver_config r;
  ucr_resolver_config_default(&r);
  EXPECT_EQ(r.dimension, 2);
  EXPECT_EQ(r.angular_frequency, 2.0);
  ucr_loss_config l;
  ucr_loss_config_default(&l);
  EXPECT_EQ(l.lambda_uc, 0.05);
  EXPECT_EQ(l.m_invalid, 0.2);
  char* warnings = nullptr;
  ASSERT_EQ(ucr_config_validate(&r, &l, &warnings), UCR_OK);
  EXPECT_EQ(Take(warnings), "[]");
}

TEST(CApiTest, StatusCodesAndLastError) {
  ucr_resolver_config r{9, 2.0, 1.0};
  EXPECT_EQ(ucr_config_validate(&r, nullptr, nullptr), UCR_ERROR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ucr_last_error()).find("dimension"), std::string::npos);
  double out = 0;
  EXPECT_EQ(ucr_normalize_angle(NAN, &out), UCR_ERROR_DOMAIN);
  EXPECT_EQ(ucr_normalize_angle(1.0, nullptr), UCR_ERROR_INVALID_ARGUMENT);
  ASSERT_EQ(ucr_normalize_angle(4.0, &out), UCR_OK);
  EXPECT_NEAR(out, 4.0 - M_PI, 1e-15);
}

TEST(CApiTest, EncodeDecode) {
  ucr_resolver_config r{3, 2.0, 1.0};
  double m[3];
  ASSERT_EQ(ucr_encode(&r, 0.0, m, 3), UCR_OK);
  EXPECT_NEAR(m[0], -0.5, 1e-15);
  EXPECT_NEAR(m[2], 1.0, 1e-15);
  EXPECT_EQ(ucr_encode(&r, 0.0, m, 2), UCR_ERROR_BUFFER_TOO_SMALL);
  double theta = 0;
  ASSERT_EQ(ucr_encode(&r, 0.7, m, 3), UCR_OK);
  ASSERT_EQ(ucr_decode(&r, m, 3, &theta), UCR_OK);
  EXPECT_NEAR(theta, 0.7, 1e-12);
  const double zero[3] = {0, 0, 0};
  EXPECT_EQ(ucr_decode(&r, zero, 3, &theta), UCR_ERROR_DOMAIN);
  double res[3];
  size_t count = 0;
  ASSERT_EQ(ucr_constraint_residuals(&r, m, 3, res, 3, &count), UCR_OK);
  EXPECT_EQ(count, 2u);
  count = 0;
  EXPECT_EQ(ucr_constraint_residuals(&r, m, 3, res, 1, &count),
            UCR_ERROR_BUFFER_TOO_SMALL);
  EXPECT_EQ(count, 2u);
  double gap = 1;
  ASSERT_EQ(ucr_encoding_gap(&r, -1.5707962, 1.5707962, &gap), UCR_OK);
  EXPECT_LT(gap, 1e-6);
}

TEST(CApiTest, Losses) {
  ucr_resolver_config r{2, 2.0, 1.0};
  ucr_loss_config l;
  ucr_loss_config_default(&l);
  const double far[2] = {2, 0};
  double v = 0;
  ASSERT_EQ(ucr_unit_cycle_loss(&r, far, 2, UCR_DEVIATION_ABSOLUTE, &v), UCR_OK);
  EXPECT_EQ(v, 3.0);
  EXPECT_EQ(ucr_unit_cycle_loss(&r, far, 2, 7, &v), UCR_ERROR_INVALID_ARGUMENT);
  const double small[2] = {0.05, 0.05};
  ucr_loss_breakdown b;
  ASSERT_EQ(ucr_total_loss(&r, &l, small, 2, 0.0, &b), UCR_OK);
  EXPECT_EQ(b.invalid, 1);
  EXPECT_NEAR(b.total, 0.04975, 1e-15);
  int invalid = 0;
  ASSERT_EQ(ucr_is_invalid(&l, small, 2, &invalid), UCR_OK);
  EXPECT_EQ(invalid, 1);
  double g[2];
  ASSERT_EQ(ucr_total_loss_gradient(&r, &l, far, 2, 0.3, g), UCR_OK);
  EXPECT_GT(g[0], 0.0);
}

TEST(CApiTest, GeometryRoundTrip) {
  const ucr_rbox box{3, 4, 10, 2, 0.5};
  double xy[8];
  ASSERT_EQ(ucr_rbox_to_polygon(&box, xy), UCR_OK);
  ucr_rbox back;
  ASSERT_EQ(ucr_poly_to_rbox(xy, &back), UCR_OK);
  EXPECT_NEAR(back.w, 10, 1e-12);
  EXPECT_NEAR(back.theta, 0.5, 1e-12);
  double iou = 0;
  ASSERT_EQ(ucr_rotated_iou(&box, &back, &iou), UCR_OK);
  EXPECT_NEAR(iou, 1.0, 1e-12);
  const ucr_rbox bad{0, 0, -1, 1, 0};
  EXPECT_EQ(ucr_rotated_iou(&box, &bad, &iou), UCR_ERROR_DOMAIN);
  double hbb[4];
  ASSERT_EQ(ucr_rbox_to_hbb(&box, hbb), UCR_OK);
  EXPECT_LT(hbb[0], hbb[2]);
}

TEST(CApiTest, FitReportHandle) {
  const double targets[3] = {-1.0, 0.0, 1.0};
  ucr_fit_task task;
  ucr_fit_task_default(&task);
  task.targets = targets;
  task.n_targets = 3;
  task.steps = 50;
  ucr_resolver_config r;
  ucr_resolver_config_default(&r);
  ucr_loss_config l;
  ucr_loss_config_default(&l);
  ucr_fit_report* report = nullptr;
  ASSERT_EQ(ucr_fit_encodings(&task, &r, &l, &report), UCR_OK);
  EXPECT_EQ(ucr_fit_report_size(report), 3u);
  double ae2 = 0, err = 0;
  ASSERT_EQ(ucr_fit_report_sample(report, 2, &ae2, &err), UCR_OK);
  EXPECT_EQ(ucr_fit_report_sample(report, 3, &ae2, &err),
            UCR_ERROR_INVALID_ARGUMENT);
  char* csv = nullptr;
  ASSERT_EQ(ucr_fit_report_csv(report, "{}", &csv), UCR_OK);
  EXPECT_NE(Take(csv).find("index,ae2,angle_error"), std::string::npos);
  ucr_fit_report_free(report);
  ucr_fit_report_free(nullptr);

  task.steps = 0;
  EXPECT_EQ(ucr_fit_encodings(&task, &r, &l, &report), UCR_ERROR_INVALID_ARGUMENT);
}

TEST(CApiTest, DatasetCleanAndEvaluate) {
  ucr_dataset* ds = nullptr;
  ASSERT_EQ(ucr_dataset_create(&ds), UCR_OK);
  const uint64_t same = 42;
  ASSERT_EQ(ucr_dataset_add_text(ds, "a", "0 0 10 0 10 5 0 5 ship 0\n", &same), UCR_OK);
  ASSERT_EQ(ucr_dataset_add_text(ds, "b", "0 0 10 0 10 5 0 5 ship 0\n", &same), UCR_OK);
  ASSERT_EQ(ucr_dataset_add_text(ds, "c", "", nullptr), UCR_OK);
  EXPECT_EQ(ucr_dataset_add_text(ds, "d", "0 0 1 ship 0\n", nullptr), UCR_ERROR_PARSE);
  EXPECT_EQ(ucr_dataset_image_count(ds), 3u);
  EXPECT_EQ(ucr_dataset_record_count(ds), 2u);

  ucr_dataset* cleaned = nullptr;
  char* report = nullptr;
  ASSERT_EQ(ucr_dataset_clean(ds, &cleaned, &report), UCR_OK);
  EXPECT_EQ(ucr_dataset_image_count(cleaned), 1u);
  const std::string jsonl = Take(report);
  EXPECT_NE(jsonl.find("duplicate"), std::string::npos);
  EXPECT_NE(jsonl.find("unannotated"), std::string::npos);

  ucr_detections* dets = nullptr;
  ASSERT_EQ(ucr_detections_create(&dets), UCR_OK);
  const ucr_rbox hit{5, 2.5, 10, 5, 0};
  ASSERT_EQ(ucr_detections_add(dets, "a", "ship", 0.9, &hit), UCR_OK);
  EXPECT_EQ(ucr_detections_add(dets, "a", "ship", 2.0, &hit), UCR_ERROR_DOMAIN);
  ASSERT_EQ(ucr_detections_parse(dets, "b,ship,0.5,5,2.5,10,5,0\n"), UCR_OK);
  EXPECT_EQ(ucr_detections_count(dets), 2u);

  ucr_eval_result* res = nullptr;
  ASSERT_EQ(ucr_evaluate(dets, cleaned, 1, &res), UCR_OK);
  double ap50 = 0, ap75 = 0, map = 0;
  ASSERT_EQ(ucr_eval_result_metrics(res, &ap50, &ap75, &map), UCR_OK);
  // The "b" detection points at a dropped image and ranks below the hit.
  EXPECT_EQ(ap50, 1.0);
  char* js = nullptr;
  ASSERT_EQ(ucr_eval_result_json(res, "{}", &js), UCR_OK);
  EXPECT_NE(Take(js).find("\"mAP\""), std::string::npos);

  ucr_eval_result_free(res);
  ucr_detections_free(dets);
  ucr_dataset_free(cleaned);
  ucr_dataset_free(ds);
}

TEST(CApiTest, NullHandlesAreRejected) {
  EXPECT_EQ(ucr_dataset_create(nullptr), UCR_ERROR_INVALID_ARGUMENT);
  EXPECT_EQ(ucr_dataset_image_count(nullptr), 0u);
  char* s = nullptr;
  EXPECT_EQ(ucr_dataset_rbox_csv(nullptr, "{}", &s), UCR_ERROR_INVALID_ARGUMENT);
  EXPECT_EQ(ucr_dataset_load_dir(nullptr, "/nonexistent", nullptr),
            UCR_ERROR_INVALID_ARGUMENT);
  ucr_dataset* ds = nullptr;
  ASSERT_EQ(ucr_dataset_create(&ds), UCR_OK);
  EXPECT_EQ(ucr_dataset_load_dir(ds, "/nonexistent/ucr", nullptr), UCR_ERROR_IO);
  ucr_dataset_free(ds);
}

}  // namespace
