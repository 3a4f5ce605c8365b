/* Copyright 2026 The hypbound Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS-IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libhypbound.
 *
 * Points are passed as double[3] in ball coordinates; for dim == 2 the third
 * coordinate must be 0. Ideal points are unit vectors (renormalized on
 * input). Quadruples are double[12] in the order xi0, eta0, xi1, eta1.
 * Isometry matrices are double[8]: (re, im) of a, b, c, d, row-major.
 *
 * Every function returning hb_status leaves a thread-local message for
 * hb_last_error() on failure. Handles are opaque and owned by the caller. */

#ifndef HYPBOUND_HYPBOUND_H_
#define HYPBOUND_HYPBOUND_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HB_API __declspec(dllexport)
#else
#define HB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hb_status {
  HB_OK = 0,
  HB_INVALID_ARGUMENT = 1,
  HB_COINCIDENT_ENDPOINTS = 2,
  HB_DEGENERATE_QUADRUPLE = 3,
  HB_DEGENERATE_TRIANGLE = 4,
  HB_DEGENERATE_TRIPLE = 5,
  HB_NUMERIC_DOMAIN = 6,
  HB_NON_INCIDENT = 7,
  HB_NO_BRACKET = 8,
  HB_CONSTRUCTION_INCONSISTENT = 9,
  HB_ON_ANCHOR = 10,
  HB_IMAGE_DEGENERATE = 11,
  HB_DIMENSION_MISMATCH = 12,
  HB_IO = 13,
  HB_INTERNAL = 99
} hb_status;

typedef struct hb_isometry hb_isometry;
typedef struct hb_scenario hb_scenario;
typedef struct hb_report hb_report;
typedef struct hb_verify_table hb_verify_table;

HB_API const char* hb_version(void);
HB_API const char* hb_status_name(hb_status status);
/* Message of the last failure on this thread ("" if none). */
HB_API const char* hb_last_error(void);

/* Geometry */
HB_API hb_status hb_distance(int dim, const double x[3], const double y[3], double* out);
HB_API hb_status hb_busemann(int dim, const double xi[3], const double x[3], const double p[3],
                             double* out);
HB_API hb_status hb_gromov_product(int dim, const double x[3], const double y[3],
                                   const double z[3], double* out);
HB_API hb_status hb_visual_metric(int dim, const double x[3], const double xi[3],
                                  const double eta[3], double* out);
HB_API hb_status hb_basepoint_change(int dim, double rho_x, const double xi[3],
                                     const double eta[3], const double x[3], const double y[3],
                                     double* out);
HB_API hb_status hb_cross_ratio(int dim, const double quad[12], const double x[3], double* out);
HB_API hb_status hb_cross_ratio_limit(int dim, const double quad[12], double t, double* out);
HB_API hb_status hb_comparison_angle(int dim, const double x[3], const double y[3],
                                     const double z[3], double* out);
HB_API hb_status hb_comparison_angle_ideal(int dim, const double x[3], const double xi[3],
                                           const double eta[3], double* out);

/* Isometries */
HB_API hb_status hb_isometry_create(int dim, const double matrix[8], hb_isometry** out);
HB_API hb_status hb_isometry_rotation(int dim, const double axis[3], double angle,
                                      hb_isometry** out);
HB_API hb_status hb_isometry_translation(int dim, const double u[3], double length,
                                         hb_isometry** out);
/* Sends src[i] to dst[i], i = 0..2; both are double[9] of unit vectors in R^3. */
HB_API hb_status hb_isometry_triple(const double src[9], const double dst[9], hb_isometry** out);
HB_API hb_status hb_isometry_compose(const hb_isometry* g, const hb_isometry* h,
                                     hb_isometry** out);
HB_API hb_status hb_isometry_inverse(const hb_isometry* g, hb_isometry** out);
HB_API hb_status hb_isometry_matrix(const hb_isometry* g, double out[8]);
HB_API hb_status hb_isometry_apply_ideal(const hb_isometry* g, const double xi[3],
                                         double out[3]);
HB_API hb_status hb_isometry_apply_point(const hb_isometry* g, const double x[3], double out[3]);
HB_API void hb_isometry_destroy(hb_isometry* g);

/* Scenarios. kind is one of "constant_moebius", "isometry_shifted",
 * "decaying_perturbation", "normalized_convergent". */
HB_API hb_status hb_scenario_create(const char* kind, uint64_t seed, size_t k_max,
                                    double decay_rate, hb_scenario** out);
HB_API hb_status hb_scenario_set_anchors(hb_scenario* s, const double angles[3]);
HB_API void hb_scenario_destroy(hb_scenario* s);

/* Runs the scenario. With a non-NULL out_dir, writes report.json and
 * trajectories.csv there. Per-sample failures are recorded in the report and
 * do not make the call fail. */
HB_API hb_status hb_scenario_run(const hb_scenario* s, size_t sample_count, const char* out_dir,
                                 hb_report** out);

typedef struct hb_run_summary {
  size_t sample_count;
  size_t converged_count;
  int all_converged;
  double max_final_gap;          /* NaN if some sample has no gap */
  double max_reference_gap;      /* distance of predictions to the equatorial image */
  double max_sandwich_excess;
  double max_angle_deficit;
  double limit_moebius_defect;   /* NaN if not computed */
  double fit_residual;           /* NaN if not computed */
  int divergence_checked;
  int diverged_without_normalization;
  int has_error;
  int passed;
  double elapsed_seconds;
} hb_run_summary;

HB_API hb_status hb_report_summary(const hb_report* r, hb_run_summary* out);
/* JSON text owned by the handle, valid until hb_report_destroy. */
HB_API const char* hb_report_json(const hb_report* r, int include_timing);
HB_API void hb_report_destroy(hb_report* r);

/* Identity suite. trials == 0 is rejected with HB_INVALID_ARGUMENT. */
HB_API hb_status hb_verify_identities(size_t trials, uint64_t seed, hb_verify_table** out);
HB_API size_t hb_verify_row_count(const hb_verify_table* t);
HB_API hb_status hb_verify_row(const hb_verify_table* t, size_t index, const char** name,
                               double* worst_error, double* tolerance, int* passed);
HB_API void hb_verify_destroy(hb_verify_table* t);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* HYPBOUND_HYPBOUND_H_ */
