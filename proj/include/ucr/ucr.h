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

/* C interface to the unit-cycle resolver library.
 *
 * Conventions:
 *  - Every fallible call returns a ucr_status; UCR_OK is zero. On failure the
 *    thread-local message from ucr_last_error() describes the cause.
 *  - Out-parameters are written only on success.
 *  - Strings returned through `char**` are owned by the caller and must be
 *    released with ucr_string_free().
 *  - Opaque handles are created by *_create / *_run / *_load calls and
 *    released by the matching *_free call; passing NULL to *_free is a no-op.
 *  - `provenance` arguments are JSON object text (or NULL) embedded into the
 *    produced CSV/JSON artifacts.
 */
#ifndef UCR_UCR_H_
#define UCR_UCR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(UCR_BUILDING_LIBRARY)
#    define UCR_API __declspec(dllexport)
#  else
#    define UCR_API __declspec(dllimport)
#  endif
#else
#  define UCR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ucr_status {
  UCR_OK = 0,
  UCR_ERROR_INVALID_ARGUMENT = 1,
  UCR_ERROR_DOMAIN = 2,
  UCR_ERROR_PARSE = 3,
  UCR_ERROR_IO = 4,
  UCR_ERROR_NUMERIC = 5,
  UCR_ERROR_BUFFER_TOO_SMALL = 6,
  UCR_ERROR_INTERNAL = 7
} ucr_status;

typedef enum ucr_deviation_kind {
  UCR_DEVIATION_ABSOLUTE = 0,
  UCR_DEVIATION_SQUARED = 1
} ucr_deviation_kind;

typedef struct ucr_rbox {
  double cx, cy, w, h, theta;
} ucr_rbox;

typedef struct ucr_resolver_config {
  int dimension;
  double angular_frequency;
  double amplitude;
} ucr_resolver_config;

typedef struct ucr_loss_config {
  double lambda_reg;
  double lambda_uc;
  double m_invalid;
  int uc_kind;  /* ucr_deviation_kind */
  int reg_kind; /* ucr_deviation_kind */
} ucr_loss_config;

typedef struct ucr_loss_breakdown {
  double cls;
  double uc;
  double reg;
  double total;
  int invalid;
} ucr_loss_breakdown;

typedef struct ucr_fit_task {
  const double* targets; /* le90 radians */
  size_t n_targets;
  double noise_sigma;
  double init_scale;
  int steps;
  double learning_rate;
  uint64_t seed;
  int noise_draws;
  int init_on_manifold;
} ucr_fit_task;

typedef struct ucr_bias_study_config {
  ucr_fit_task base; /* targets ignored */
  int repetitions;
  size_t samples;
  double baseline_lambda_uc;
} ucr_bias_study_config;

typedef struct ucr_fit_report ucr_fit_report;
typedef struct ucr_bias_study ucr_bias_study;
typedef struct ucr_dataset ucr_dataset;
typedef struct ucr_detections ucr_detections;
typedef struct ucr_eval_result ucr_eval_result;

/* ---- library ---------------------------------------------------------- */
UCR_API const char* ucr_version(void);
UCR_API const char* ucr_last_error(void);
UCR_API void ucr_string_free(char* s);

UCR_API void ucr_resolver_config_default(ucr_resolver_config* cfg);
UCR_API void ucr_loss_config_default(ucr_loss_config* cfg);
UCR_API void ucr_fit_task_default(ucr_fit_task* task);
UCR_API void ucr_bias_study_config_default(ucr_bias_study_config* cfg);

/* Validates both configs together. `warnings` (nullable) receives a JSON
 * array of advisory strings, e.g. about non-bijective frequencies. */
UCR_API ucr_status ucr_config_validate(const ucr_resolver_config* rcfg,
                                       const ucr_loss_config* lcfg,
                                       char** warnings);

/* ---- geometry --------------------------------------------------------- */
UCR_API ucr_status ucr_normalize_angle(double raw, double* out);
UCR_API ucr_status ucr_rbox_to_polygon(const ucr_rbox* box, double out_xy[8]);
UCR_API ucr_status ucr_rbox_to_hbb(const ucr_rbox* box, double out[4]);
UCR_API ucr_status ucr_rotated_iou(const ucr_rbox* a, const ucr_rbox* b,
                                   double* out);
UCR_API ucr_status ucr_aspect_ratio(const ucr_rbox* box, double* out);
UCR_API ucr_status ucr_poly_to_rbox(const double xy[8], ucr_rbox* out);

/* ---- coder ------------------------------------------------------------ */
UCR_API ucr_status ucr_encode(const ucr_resolver_config* cfg, double theta,
                              double* out, size_t out_len);
UCR_API ucr_status ucr_decode(const ucr_resolver_config* cfg, const double* m,
                              size_t n, double* theta);
/* Stores the residual count in `count`; fails with BUFFER_TOO_SMALL when
   `capacity` is below it. */
UCR_API ucr_status ucr_constraint_residuals(const ucr_resolver_config* cfg,
                                            const double* m, size_t n,
                                            double* out, size_t capacity,
                                            size_t* count);
UCR_API ucr_status ucr_encoding_gap(const ucr_resolver_config* cfg, double a,
                                    double b, double* out);

/* ---- loss ------------------------------------------------------------- */
UCR_API ucr_status ucr_unit_cycle_loss(const ucr_resolver_config* cfg,
                                       const double* m, size_t n, int kind,
                                       double* out);
UCR_API ucr_status ucr_is_invalid(const ucr_loss_config* cfg, const double* m,
                                  size_t n, int* out);
UCR_API ucr_status ucr_regression_loss(const double* pred, const double* target,
                                       size_t n, int kind, double* out);
UCR_API ucr_status ucr_total_loss(const ucr_resolver_config* rcfg,
                                  const ucr_loss_config* lcfg,
                                  const double* pred, size_t n,
                                  double target_theta, ucr_loss_breakdown* out);
UCR_API ucr_status ucr_total_loss_gradient(const ucr_resolver_config* rcfg,
                                           const ucr_loss_config* lcfg,
                                           const double* pred, size_t n,
                                           double target_theta, double* grad);

/* ---- optimization harness --------------------------------------------- */
UCR_API ucr_status ucr_fit_encodings(const ucr_fit_task* task,
                                     const ucr_resolver_config* rcfg,
                                     const ucr_loss_config* lcfg,
                                     ucr_fit_report** out);
UCR_API size_t ucr_fit_report_size(const ucr_fit_report* report);
UCR_API ucr_status ucr_fit_report_sample(const ucr_fit_report* report,
                                         size_t index, double* ae2,
                                         double* angle_error);
/* q[0..2] = p10, p50, p90. */
UCR_API ucr_status ucr_fit_report_quantiles(const ucr_fit_report* report,
                                            double ae2_q[3],
                                            double angle_error_q[3]);
UCR_API ucr_status ucr_fit_report_csv(const ucr_fit_report* report,
                                      const char* provenance, char** out);
/* Rows bin_lo,bin_hi,count; hi <= 0 selects the range automatically. */
UCR_API ucr_status ucr_fit_report_histogram_csv(const ucr_fit_report* report,
                                                int bins, double hi,
                                                char** out);
UCR_API void ucr_fit_report_free(ucr_fit_report* report);

UCR_API ucr_status ucr_bias_study_run(const ucr_bias_study_config* cfg,
                                      const ucr_resolver_config* rcfg,
                                      const ucr_loss_config* lcfg,
                                      ucr_bias_study** out);
UCR_API ucr_status ucr_bias_study_wins(const ucr_bias_study* study,
                                       int* repetitions, int* ae2_wins,
                                       int* angle_wins);
UCR_API ucr_status ucr_bias_study_summary_json(const ucr_bias_study* study,
                                               const char* provenance,
                                               char** out);
UCR_API ucr_status ucr_bias_study_samples_csv(const ucr_bias_study* study,
                                              const char* provenance,
                                              char** out);
UCR_API ucr_status ucr_bias_study_histogram_csv(const ucr_bias_study* study,
                                                int bins,
                                                const char* provenance,
                                                char** out);
UCR_API void ucr_bias_study_free(ucr_bias_study* study);

/* Per-epsilon 1D distance and encoding gap for one resolver. */
UCR_API ucr_status ucr_boundary_demo(const ucr_resolver_config* cfg,
                                     const double* epsilons, size_t n,
                                     double* loss_1d, double* gap);
/* CSV with columns epsilon,loss_1d,gap_n2,gap_n3. */
UCR_API ucr_status ucr_boundary_demo_csv(const double* epsilons, size_t n,
                                         const char* provenance, char** out);

/* ---- DOTA datasets ---------------------------------------------------- */
UCR_API ucr_status ucr_dataset_create(ucr_dataset** out);
/* Parses DOTA text as one image. `content_hash` is nullable. */
UCR_API ucr_status ucr_dataset_add_text(ucr_dataset* ds, const char* image_id,
                                        const char* text,
                                        const uint64_t* content_hash);
/* Loads every *.txt in `annotation_dir`; `image_dir` is nullable. */
UCR_API ucr_status ucr_dataset_load_dir(ucr_dataset* ds,
                                        const char* annotation_dir,
                                        const char* image_dir);
/* Appends images from the rotated-box CSV format. */
UCR_API ucr_status ucr_dataset_add_rbox_csv(ucr_dataset* ds, const char* text);
UCR_API size_t ucr_dataset_image_count(const ucr_dataset* ds);
UCR_API size_t ucr_dataset_record_count(const ucr_dataset* ds);
UCR_API ucr_status ucr_dataset_image_text(const ucr_dataset* ds, size_t index,
                                          char** image_id, char** text);
UCR_API ucr_status ucr_dataset_write_dir(const ucr_dataset* ds,
                                         const char* dir);
UCR_API ucr_status ucr_dataset_rbox_csv(const ucr_dataset* ds,
                                        const char* provenance, char** out);
UCR_API ucr_status ucr_dataset_clean(const ucr_dataset* ds,
                                     ucr_dataset** cleaned,
                                     char** report_jsonl);
UCR_API ucr_status ucr_dataset_stats(const ucr_dataset* ds, int angle_bins,
                                     const char* provenance, char** csv,
                                     char** json, size_t* conversion_failures);
UCR_API void ucr_dataset_free(ucr_dataset* ds);

/* ---- evaluation ------------------------------------------------------- */
UCR_API ucr_status ucr_detections_create(ucr_detections** out);
UCR_API ucr_status ucr_detections_add(ucr_detections* dets,
                                      const char* image_id,
                                      const char* category, double score,
                                      const ucr_rbox* box);
/* CSV or JSON-lines text, see the file-format notes in the README. */
UCR_API ucr_status ucr_detections_parse(ucr_detections* dets,
                                        const char* text);
UCR_API size_t ucr_detections_count(const ucr_detections* dets);
UCR_API void ucr_detections_free(ucr_detections* dets);

UCR_API ucr_status ucr_evaluate(const ucr_detections* dets,
                                const ucr_dataset* gts, int ignore_difficult,
                                ucr_eval_result** out);
UCR_API ucr_status ucr_eval_result_metrics(const ucr_eval_result* res,
                                           double* ap50, double* ap75,
                                           double* map);
UCR_API ucr_status ucr_eval_result_json(const ucr_eval_result* res,
                                        const char* provenance, char** out);
UCR_API ucr_status ucr_eval_result_table(const ucr_eval_result* res,
                                         char** out);
/* Number of warnings, and a JSON array of them when `out` is non-null. */
UCR_API ucr_status ucr_eval_result_warnings(const ucr_eval_result* res,
                                            size_t* count, char** out);
UCR_API void ucr_eval_result_free(ucr_eval_result* res);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* UCR_UCR_H_ */
