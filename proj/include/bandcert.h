/*
 * Copyright 2026 The bandcert authors
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
 * bandcert -- certified numerics for spectral band-width constants.
 *
 * C interface to the core engine: opaque handles, integer status codes,
 * thread-local error detail via bc_last_error().  Every certified quantity
 * comes back as a (value, radius, side) triple; an upper-bound side asserts
 * that the true quantity is <= value.
 */

#ifndef BANDCERT_H
#define BANDCERT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BC_API __declspec(dllexport)
#else
#define BC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bc_status {
    BC_OK = 0,
    BC_EINVAL = 1,       /* invalid argument / precondition */
    BC_EDOMAIN = 2,      /* input outside the mathematical domain */
    BC_ECERT = 3,        /* certification could not be completed */
    BC_EINTERNAL = 4
} bc_status;

typedef enum bc_side {
    BC_TWO_SIDED = 0,
    BC_UPPER_BOUND = 1,
    BC_LOWER_BOUND = 2
} bc_side;

typedef struct bc_kernel bc_kernel;
typedef struct bc_report bc_report;

BC_API const char* bc_version(void);
BC_API const char* bc_status_name(bc_status s);
/* Detail message for the most recent failing call on this thread. */
BC_API const char* bc_last_error(void);

/* ---- normalizing kernels -------------------------------------------- */
/* Specs: "h1", "h2", "sinc:k=<int>", "mix:k=8,w=0.7;k=3,w=0.3,a=1.5",
 * optional "@scale=<real>" suffix. */
BC_API bc_kernel* bc_kernel_create(const char* spec);
BC_API void bc_kernel_free(bc_kernel* k);
BC_API bc_status bc_kernel_eval(const bc_kernel* k, double t, double* value, double* radius);
BC_API bc_status bc_kernel_tail_majorant(const bc_kernel* k, double big_t, double* bound);
BC_API bc_status bc_kernel_derivative_bound(const bc_kernel* k, double* bound);
BC_API bc_status bc_kernel_sup_abs(const bc_kernel* k, double* bound, double* gap);
BC_API bc_status bc_kernel_bandwidth(const bc_kernel* k, double* radius_over_pi);

/* antiderivative of sinc(pi u)^k from -inf to t, and the full integral */
BC_API bc_status bc_sinc_antiderivative(int k, double t, double* value, double* radius);
BC_API bc_status bc_sinc_total_integral(int k, double* value, double* radius);

/* ---- certified envelopes -------------------------------------------- */
BC_API bc_status bc_envelope_b(const bc_kernel* k, double s, double tol, double* bound,
                               double* gap);
BC_API bc_status bc_p_norm_bound(const bc_kernel* k, double tol, double* bound, double* gap);
BC_API bc_status bc_threshold_solve(const bc_kernel* k, double target, double* s_star,
                                    double* gap);

/* ---- constant pipelines --------------------------------------------- */
BC_API bc_status bc_even_chain(const bc_kernel* k, int dim, double sigma, double width,
                               bc_report** out);
BC_API bc_status bc_odd_chain(const bc_kernel* k, int dim, double sigma, double width,
                              int degree, bc_report** out);

/* Vanishing scale omega0 (finite-propagation index triviality threshold);
 * odd_parity selects the polynomial route and degree_out reports the
 * minimal admissible polynomial degree used. */
BC_API bc_status bc_psc_scale(const bc_kernel* k, int odd_parity, double epsilon, double cap_n,
                              double* omega0, double* u0, int* degree_out);
BC_API bc_status bc_minimal_degree(double epsilon, double a, double b, int* m_out);

/* ---- search and property suites -------------------------------------- */
/* family: "family:sinc-power:k=3..16", "family:convex:k=...", "family:spline:k=...",
 * or any kernel spec for the singleton family.  trace_path may be NULL. */
BC_API bc_status bc_optimize(const char* family, int odd_parity, int iters, uint64_t seed,
                             const char* trace_path, bc_report** out);
BC_API bc_status bc_oracle_suite(uint64_t seed, int idem_trials, int perturb_trials,
                                 int gap_trials, bc_report** out);

/* ---- reports ---------------------------------------------------------- */
BC_API int bc_report_field_count(const bc_report* r);
BC_API const char* bc_report_field_name(const bc_report* r, int i);
BC_API const char* bc_report_field_label(const bc_report* r, int i);
BC_API bc_status bc_report_field(const bc_report* r, const char* name, double* value,
                                 double* radius, bc_side* side);
BC_API int bc_report_success(const bc_report* r);
/* Rendered text; free with bc_string_free. */
BC_API char* bc_report_render(const bc_report* r);
BC_API void bc_report_free(bc_report* r);
BC_API void bc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BANDCERT_H */
