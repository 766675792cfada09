/* Copyright 2026 The anisub Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of libanisub. Objects are opaque handles released with the
 * matching *_free function. Every call returning anisub_status leaves a
 * message in anisub_last_error() on failure (per thread). */

#ifndef ANISUB_ANISUB_H_
#define ANISUB_ANISUB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ANISUB_API __declspec(dllexport)
#else
#define ANISUB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum anisub_status {
  ANISUB_OK = 0,
  ANISUB_ERR_DOMAIN = 1,    /* argument outside the domain of the function */
  ANISUB_ERR_SINGULAR = 2,  /* singular input (e.g. alpha = 1 limit where undefined) */
  ANISUB_ERR_CONFIG = 3,    /* invalid model or configuration */
  ANISUB_ERR_TRUNCATED = 4, /* simulation budget exhausted */
  ANISUB_ERR_NULL = 5,      /* null handle or output pointer */
  ANISUB_ERR_BUFFER = 6,    /* caller buffer too small */
  ANISUB_ERR_INTERNAL = 7
} anisub_status;

typedef struct anisub_model anisub_model;
typedef struct anisub_path anisub_path;

ANISUB_API const char* anisub_version(void);
ANISUB_API const char* anisub_last_error(void);

/* ---- models ---- */

/* Spectral-stable model with exponent kappa * sum_i w_i (eta1 cos a_i + eta2 sin a_i)^alpha.
 * kappa = 1 is the standard form. */
ANISUB_API anisub_status anisub_model_spectral(double alpha, double kappa, const double* angles,
                                               const double* weights, size_t n_atoms,
                                               anisub_model** out);
/* Same, parameterized by the Levy intensity C (kappa = C Gamma(1 - alpha)). */
ANISUB_API anisub_status anisub_model_spectral_intensity(double alpha, double c,
                                                         const double* angles,
                                                         const double* weights, size_t n_atoms,
                                                         anisub_model** out);
ANISUB_API anisub_status anisub_model_independent(double alpha, double scale1, double scale2,
                                                  anisub_model** out);
ANISUB_API anisub_status anisub_model_common_factor(double alpha1, double scale1, double alpha2,
                                                    double scale2, double alpha_g, double scale_g,
                                                    double c1, double c2, anisub_model** out);
/* The [model] block of a run configuration file. */
ANISUB_API anisub_status anisub_model_from_config(const char* path, anisub_model** out);
ANISUB_API void anisub_model_free(anisub_model* model);

/* "spectral-stable", "independent-stable" or "common-factor"; owned by the handle. */
ANISUB_API const char* anisub_model_kind(const anisub_model* model);

/* ---- closed forms ---- */

ANISUB_API anisub_status anisub_joint_exponent(const anisub_model* model, double eta1,
                                               double eta2, double* out);
/* component is 1 or 2. */
ANISUB_API anisub_status anisub_marginal_exponent(const anisub_model* model, int component,
                                                  double eta, double* out);
ANISUB_API anisub_status anisub_tail_transform(const anisub_model* model, double eta1,
                                               double eta2, double* out);
ANISUB_API anisub_status anisub_biparameter_laplace(const anisub_model* model, double t1,
                                                    double t2, double eta1, double eta2,
                                                    double* out);
ANISUB_API anisub_status anisub_covariance_laplace(const anisub_model* model, double eta1,
                                                   double eta2, double* out);
/* One-parameter Mittag-Leffler function E_alpha(x), 0 < alpha <= 1. */
ANISUB_API anisub_status anisub_mittag_leffler(double alpha, double x, double* out);

/* ---- simulation ---- */

/* Grid path of H on [0, x_max] with step dx from Philox stream (seed, stream). */
ANISUB_API anisub_status anisub_path_sample(const anisub_model* model, double x_max, double dx,
                                            uint64_t seed, uint64_t stream, anisub_path** out);
ANISUB_API void anisub_path_free(anisub_path* path);
/* Number of grid points (cells + 1); 0 for a null handle. */
ANISUB_API size_t anisub_path_size(const anisub_path* path);
ANISUB_API double anisub_path_dx(const anisub_path* path);
/* Copies both components; each buffer must hold anisub_path_size() values. */
ANISUB_API anisub_status anisub_path_values(const anisub_path* path, double* h1, double* h2,
                                            size_t capacity);
/* Grid inverse (L_1(t1), L_2(t2)); on_diagonal receives 1 when both first
 * passages happen in the same cell. */
ANISUB_API anisub_status anisub_inverse_sample(const anisub_model* model, double t1, double t2,
                                               double dx, uint64_t seed, uint64_t stream,
                                               double* l1, double* l2, int* on_diagonal);

/* ---- batch runner ---- */

typedef struct anisub_run_options {
  const char* config_path; /* NULL: built-in defaults */
  const char* out_dir;     /* NULL: "anisub-out" */
  int has_seed;            /* nonzero: seed overrides config and ANISUB_SEED */
  uint64_t seed;
  unsigned threads;   /* 0: from config */
  const char* format; /* NULL: from config; else "csv" or "ndjson" */
} anisub_run_options;

/* Runs a command (simulate, invert, subdiffuse, poisson, ctmc, ctrw-sweep,
 * verify). Returns the process exit code: 0 success, 1 verification
 * failure, 2 configuration error, 3 budget exhausted, 4 internal error.
 * Diagnostics are copied (truncated, NUL-terminated) into diag if given. */
ANISUB_API int anisub_run(const char* command, const anisub_run_options* options, char* diag,
                          size_t diag_capacity);

#ifdef __cplusplus
}
#endif

#endif /* ANISUB_ANISUB_H_ */
