/**
 * Copyright 2026 The gbsbench authors
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
 * C interface of the gbsbench shared library.
 *
 * Conventions:
 *   - every fallible function returns a gbsb_status code; on failure a
 *     human-readable message is available via gbsb_last_error() (thread-local);
 *   - handles are opaque and must be released with the matching *_free;
 *   - matrix buffers are row-major and caller-allocated;
 *   - quadrature ordering is (q_1..q_M, p_1..p_M) with vacuum variance 1;
 *   - mode indices are 0-based.
 */

#ifndef GBSBENCH_H
#define GBSBENCH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gbsb_status {
  GBSB_OK = 0,
  GBSB_ERR_PARAM = 2,       /* invalid argument */
  GBSB_ERR_NUMERIC = 3,     /* numerical-domain failure */
  GBSB_ERR_UNSUPPORTED = 4, /* valid request outside the supported feature set */
} gbsb_status;

typedef struct gbsb_state gbsb_state;     /* Gaussian state (+ product description) */
typedef struct gbsb_unitary gbsb_unitary; /* M x M complex network matrix */

const char* gbsb_version(void);

/* Message describing the most recent failure on the calling thread. */
const char* gbsb_last_error(void);

/* ---- Gaussian input states ------------------------------------------- */

/* First `occupied` modes squeezed along p with parameter r >= 0, rest vacuum. */
int gbsb_state_squeezed(double r, int modes, int occupied, gbsb_state** out);
/* First `occupied` modes thermal with mean photon number nbar >= 0. */
int gbsb_state_thermal(double nbar, int modes, int occupied, gbsb_state** out);
/* First `occupied` modes displaced to alpha, unit variances. */
int gbsb_state_coherent(double alpha_re, double alpha_im, int modes, int occupied,
                        gbsb_state** out);
/* Classical asymmetric mimic: v_q >= 1, v_p >= 1 on the occupied modes. */
int gbsb_state_classical(double vq, double vp, int modes, int occupied,
                         gbsb_state** out);
void gbsb_state_free(gbsb_state* state);

int gbsb_state_mode_count(const gbsb_state* state);
/* out: 2M x 2M row-major covariance matrix. */
int gbsb_state_covariance(const gbsb_state* state, double* out);
/* out: 2M displacement vector. */
int gbsb_state_displacement(const gbsb_state* state, double* out);
int gbsb_state_purity(const gbsb_state* state, double* out);
int gbsb_state_total_mean_photon(const gbsb_state* state, double* out);

/* ---- imperfection channels -------------------------------------------- */

/* Uniform loss: V -> eta V + (1-eta) I, displacement scaled by sqrt(eta). */
int gbsb_state_with_loss(const gbsb_state* state, double eta, gbsb_state** out);
/* Uniform additive noise: V -> V + nu I. */
int gbsb_state_with_noise(const gbsb_state* state, double nu, gbsb_state** out);
/* Minimal squeezing that keeps a subvacuum variance under noise nu;
 * +infinity when nu >= 1. */
int gbsb_squeezing_threshold(double nu, double* r_min);

/* ---- interferometer ----------------------------------------------------- */

/* Haar-random unitary for the given (master_seed, trial) pair; the same pair
 * always reproduces the same matrix. */
int gbsb_unitary_haar(int modes, uint64_t master_seed, uint64_t trial,
                      gbsb_unitary** out);
/* Wraps caller-provided entries (row-major re/im); rejects matrices that are
 * not unitary within 1e-10. */
int gbsb_unitary_from_entries(int modes, const double* re, const double* im,
                              gbsb_unitary** out);
void gbsb_unitary_free(gbsb_unitary* u);
int gbsb_unitary_dim(const gbsb_unitary* u);
/* re, im: M x M row-major buffers. */
int gbsb_unitary_entries(const gbsb_unitary* u, double* re, double* im);

/* Evolves the state through the network (covariance congruence). The result
 * is a plain Gaussian state; formula-based correlators (gbsb_correlator) no
 * longer apply to it, photon statistics do. */
int gbsb_state_evolve(const gbsb_state* state, const gbsb_unitary* u,
                      gbsb_state** out);
/* Two-mode marginal over modes (j, k), j != k. */
int gbsb_reduce_two_modes(const gbsb_state* state, int j, int k, gbsb_state** out);

/* ---- photon-number correlators ------------------------------------------ */

/* C_{j,k} of the network output for a product input handle (as built by the
 * state constructors, possibly after loss/noise), evaluated through the
 * input-output formula. Fails with GBSB_ERR_PARAM on evolved handles. */
int gbsb_correlator(const gbsb_state* input, const gbsb_unitary* u, int j, int k,
                    double* out);
/* C_{j,k} of the state itself from its ladder covariances (works on any
 * zero- or nonzero-displacement Gaussian state handle). */
int gbsb_correlator_of_state(const gbsb_state* state, int j, int k, double* out);

/* Closed-form Haar-averaged moments E(C), E(C^2), E(C^3) for N identical
 * occupied inputs with the given per-mode scalars. */
int gbsb_analytic_moments(int modes, int occupied, double mean_photon,
                          double eccentricity, double out_moments[3]);
/* NM, CV, Sk from raw moments; undefined entries come back as NaN. */
int gbsb_signatures_from_moments(double m1, double m2, double m3, int modes,
                                 int occupied, double out_signatures[3]);

/* ---- Fock statistics ----------------------------------------------------- */

/* Joint photon-number distribution of a zero-displacement two-mode state.
 * probs: (n_max+1)^2 row-major buffer, probs[n1*(n_max+1)+n2] = P(n1, n2). */
int gbsb_joint_photon_distribution(const gbsb_state* two_mode_state, int n_max,
                                   double* probs, double* captured_mass);
/* C_{1,2} from a truncated grid as produced above. */
int gbsb_correlator_from_distribution(const double* probs, int n_max, double* out);

/* ---- experiment runner ---------------------------------------------------- */

/* Runs one experiment described by a JSON document (same schema as the CLI
 * --config file; see README). Output files named in the config are written
 * as a side effect. On success *summary_json receives a NUL-terminated
 * summary document; release it with gbsb_string_free. */
int gbsb_run_experiment(const char* config_json, char** summary_json);
void gbsb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* GBSBENCH_H */
