/*
 * Copyright 2026 The ccmw Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the ccmw library: coherence-constrained work extraction
 * for qudit batteries.
 *
 * Every fallible call returns a ccmw_status. On failure the message is
 * available from ccmw_last_error() on the same thread until the next call.
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function (NULL is accepted). Matrices are d*d, row-major, split into
 * real and imaginary arrays.
 */

#ifndef CCMW_CCMW_H_
#define CCMW_CCMW_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CCMW_API __declspec(dllexport)
#else
#define CCMW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccmw_status {
  CCMW_OK = 0,
  CCMW_ERR_INVALID_ARGUMENT = 1,
  CCMW_ERR_OUT_OF_RANGE = 2,
  CCMW_ERR_DIMENSION_MISMATCH = 3,
  CCMW_ERR_NOT_HERMITIAN = 4,
  CCMW_ERR_NOT_UNITARY = 5,
  CCMW_ERR_INVALID_STATE = 6,
  CCMW_ERR_UNSUPPORTED = 7,
  CCMW_ERR_PARSE = 8,
  CCMW_ERR_IO = 9,
  CCMW_ERR_OUT_OF_MEMORY = 10,
  CCMW_ERR_INTERNAL = 11
} ccmw_status;

typedef enum ccmw_mode { CCMW_MODE_PURE = 0, CCMW_MODE_MIXED = 1 } ccmw_mode;

typedef enum ccmw_log_level { CCMW_LOG_INFO = 1, CCMW_LOG_WARNING = 2 } ccmw_log_level;

CCMW_API const char* ccmw_version(void);
CCMW_API const char* ccmw_status_string(ccmw_status status);
/* Message of the last failed call on this thread; "" if none. */
CCMW_API const char* ccmw_last_error(void);

/* Diagnostics go to stderr until a callback is installed. NULL restores stderr. */
typedef void (*ccmw_log_fn)(int level, const char* message, void* user);
CCMW_API void ccmw_set_log_callback(ccmw_log_fn fn, void* user);

/* Hamiltonians */

typedef struct ccmw_hamiltonian ccmw_hamiltonian;

/* spec: "jz", "jx", "jy", "joff:a1,a2", "jmixed:a1,a2,a3",
 * "qubit:h1,h3,h2,theta" or "diag:e0,e1,...". */
CCMW_API ccmw_status ccmw_hamiltonian_parse(const char* spec, int dim, ccmw_hamiltonian** out);
CCMW_API void ccmw_hamiltonian_free(ccmw_hamiltonian* h);
CCMW_API int ccmw_hamiltonian_dim(const ccmw_hamiltonian* h);
/* Canonical spec string. Writes at most len bytes including the terminator;
 * *needed (optional) receives the full length plus one. */
CCMW_API ccmw_status ccmw_hamiltonian_id(const ccmw_hamiltonian* h, char* buf, size_t len,
                                         size_t* needed);
CCMW_API ccmw_status ccmw_hamiltonian_matrix(const ccmw_hamiltonian* h, double* re, double* im);

/* Closed forms */

/* CCMW from a known closed form; CCMW_ERR_UNSUPPORTED when there is none. */
CCMW_API ccmw_status ccmw_analytic(const ccmw_hamiltonian* h, double coherence, double* out);
CCMW_API ccmw_status ccmw_xi2(double coherence, double h1, double h3, double h2, double* out);
CCMW_API ccmw_status ccmw_xi3_diagonal(double coherence, double* out);
CCMW_API ccmw_status ccmw_xi3_offdiagonal(double coherence, double alpha, double* out);

/* Numerical optimization */

typedef struct ccmw_optimizer_config {
  int population; /* 0 selects 20 * number of parameters */
  int64_t max_evaluations;
  uint64_t seed;
  int restarts;
  int threads;
  double initial_tolerance;
  double anneal_fraction;
  int pure_warm_start; /* mixed mode only */
} ccmw_optimizer_config;

CCMW_API ccmw_status ccmw_optimizer_config_default(int dim, ccmw_optimizer_config* out);

typedef struct ccmw_estimate ccmw_estimate;

/* config may be NULL for the dimension defaults. */
CCMW_API ccmw_status ccmw_estimate_run(const ccmw_hamiltonian* h, ccmw_mode mode, double coherence,
                                       const ccmw_optimizer_config* config, ccmw_estimate** out);
CCMW_API void ccmw_estimate_free(ccmw_estimate* e);
CCMW_API double ccmw_estimate_value(const ccmw_estimate* e);
CCMW_API double ccmw_estimate_constraint_violation(const ccmw_estimate* e);
CCMW_API int ccmw_estimate_feasible(const ccmw_estimate* e);
CCMW_API int64_t ccmw_estimate_evaluations(const ccmw_estimate* e);
CCMW_API uint64_t ccmw_estimate_seed(const ccmw_estimate* e);
/* which: 0 initial, 1 final. */
CCMW_API ccmw_status ccmw_estimate_witness(const ccmw_estimate* e, int which, double* re,
                                           double* im);

/* States and passivity */

typedef struct ccmw_state ccmw_state;

CCMW_API ccmw_status ccmw_state_from_matrix(int dim, const double* re, const double* im,
                                            ccmw_state** out);
/* {"dim": d, "real": [...], "imag": [...]} */
CCMW_API ccmw_status ccmw_state_from_json(const char* json, ccmw_state** out);
CCMW_API void ccmw_state_free(ccmw_state* s);
CCMW_API int ccmw_state_dim(const ccmw_state* s);
CCMW_API ccmw_status ccmw_state_l1_coherence(const ccmw_state* s, double* out);
CCMW_API ccmw_status ccmw_state_energy(const ccmw_state* s, const ccmw_hamiltonian* h, double* out);
CCMW_API ccmw_status ccmw_ergotropy(const ccmw_state* s, const ccmw_hamiltonian* h, double* out);

typedef struct ccmw_passive_result {
  int passive;
  double gain;
  int cross_checked; /* brute force ran, d <= 6 */
  int agrees;
  double brute_force_gain;
} ccmw_passive_result;

/* Needs a diagonal Hamiltonian; CCMW_ERR_INVALID_ARGUMENT otherwise. */
CCMW_API ccmw_status ccmw_passive_check(const ccmw_state* s, const ccmw_hamiltonian* h,
                                        ccmw_passive_result* out);

/* Verification against closed forms */

typedef struct ccmw_verify_report ccmw_verify_report;

typedef struct ccmw_verify_row {
  double coherence;
  double analytic;
  double numeric;
  double gap; /* numeric - analytic */
  int feasible;
} ccmw_verify_row;

/* points uniform over [0, d - 1]. CCMW_ERR_UNSUPPORTED without a closed form. */
CCMW_API ccmw_status ccmw_verify_run(const ccmw_hamiltonian* h, int points, double tolerance,
                                     ccmw_mode mode, const ccmw_optimizer_config* config,
                                     ccmw_verify_report** out);
CCMW_API void ccmw_verify_report_free(ccmw_verify_report* r);
CCMW_API size_t ccmw_verify_report_size(const ccmw_verify_report* r);
CCMW_API ccmw_status ccmw_verify_report_row(const ccmw_verify_report* r, size_t i,
                                            ccmw_verify_row* out);
CCMW_API double ccmw_verify_report_max_gap(const ccmw_verify_report* r);
CCMW_API int ccmw_verify_report_passed(const ccmw_verify_report* r);

/* Sweeps and datasets */

typedef struct ccmw_sweep_options {
  int has_seed; /* nonzero: seed overrides the config */
  uint64_t seed;
  int threads;
  const char* output_path; /* NULL keeps the config's; "-" writes to stdout */
} ccmw_sweep_options;

/* Runs the JSON config and writes the CSV. *rows (optional) receives the row
 * count and *infeasible (optional) the number of flagged rows. */
CCMW_API ccmw_status ccmw_sweep_run(const char* config_json, const ccmw_sweep_options* options,
                                    size_t* rows, size_t* infeasible);

/* 512 points per coherence; path "-" writes to stdout. */
CCMW_API ccmw_status ccmw_ellipse_write(const double* coherences, size_t count, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* CCMW_CCMW_H_ */
