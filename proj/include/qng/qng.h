// Copyright 2026 The qngcoh Authors
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


/* C interface to the qng library. All functions are reentrant with respect to distinct contexts;
 * a single context must not be used from two threads at once. Strings returned through char**
 * are owned by the caller and released with qng_free_string. */

#ifndef QNG_QNG_H
#define QNG_QNG_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(QNG_BUILDING_LIBRARY)
#    define QNG_API __declspec(dllexport)
#  else
#    define QNG_API __declspec(dllimport)
#  endif
#else
#  define QNG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qng_context qng_context;

typedef enum {
    QNG_OK = 0,
    QNG_ERR_INVALID_ARGUMENT = 1,
    QNG_ERR_NOT_CONVERGED = 2,
    QNG_ERR_TRUNCATION = 3,
    QNG_ERR_RANGE = 4,
    QNG_ERR_FIT = 5,
    QNG_ERR_IO = 6,
    QNG_ERR_CONFIG = 7,
    QNG_ERR_CONDITIONING = 8,
    QNG_ERR_UNSUPPORTED_ORDER = 9,
    QNG_ERR_INTERNAL = 99
} qng_status;

typedef enum {
    QNG_KIND_CLASSICAL = 0,
    QNG_KIND_GAUSSIAN_MIN = 1,
    QNG_KIND_GAUSSIAN_INTRINSIC = 2,
    QNG_KIND_GENUINE = 3
} qng_threshold_kind;

typedef struct {
    double xi_mag;
    double xi_phase;
    double alpha_mag;
    double alpha_phase;
} qng_gaussian_params;

typedef struct {
    qng_threshold_kind kind;
    int m;
    int n;
    double value;
    qng_gaussian_params argmax;
    /* -1 unless kind is QNG_KIND_GAUSSIAN_INTRINSIC */
    int fock_index;
    /* 0 unless kind is QNG_KIND_GENUINE */
    int core_dim;
    /* best two optimizer starts agree */
    int converged;
} qng_threshold_info;

QNG_API const char *qng_version(void);
QNG_API const char *qng_status_string(qng_status status);

QNG_API qng_status qng_context_create(qng_context **out);
QNG_API void qng_context_destroy(qng_context *ctx);
/* Drops memoized thresholds. */
QNG_API qng_status qng_context_set_truncation(qng_context *ctx, int dim);
/* Empty string or NULL disables persistence. */
QNG_API qng_status qng_context_set_cache_dir(qng_context *ctx, const char *dir);
/* Message for the last failing call on this context; never NULL. */
QNG_API const char *qng_context_last_error(const qng_context *ctx);

QNG_API qng_status qng_threshold(qng_context *ctx, qng_threshold_kind kind, int m, int n, qng_threshold_info *out);
QNG_API qng_status qng_threshold_json(qng_context *ctx, qng_threshold_kind kind, int m, int n, char **out_json);
QNG_API qng_status qng_depth(qng_context *ctx, double measured, int m, int n, qng_threshold_kind kind,
                             double *out_depth);
QNG_API qng_status qng_depth_json(qng_context *ctx, double measured, int m, int n, qng_threshold_kind kind,
                                  char **out_json);
QNG_API qng_status qng_certify_json(qng_context *ctx, int m, int n, double measured, double uncertainty,
                                    char **out_json, int *any_verdict);
QNG_API qng_status qng_mc_verify_json(qng_context *ctx, qng_threshold_kind kind, int m, int n, long samples,
                                      uint64_t seed, char **out_json, long *violations);
/* config_json: scenario document; result holds the normalized config and per-pair decay scans. */
QNG_API qng_status qng_simulate_json(qng_context *ctx, const char *config_json, char **out_json);
QNG_API void qng_free_string(char *s);

#ifdef __cplusplus
}
#endif

#endif
