// Copyright 2026 The bandcert authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BANDCERT_CORE_ENVELOPE_HPP
#define BANDCERT_CORE_ENVELOPE_HPP

#include <functional>

#include "sinc_kernels.hpp"

namespace bandcert {

// Scalar envelope expressions controlling the 2x2 index representative.
// Each maps an enclosure of f = h(t) to an enclosure of the expression;
// all are even in f, so suprema over |t| >= s reduce to t >= s.

// max{(1-f^2)^2 + (1-f^2), |(2-f^2)(1-f^2)| + (1-f^2)^2}
Interval envelope_b_expr(const Interval& f);

// Row sums of the index matrix A (idempotent minus the reference):
// max{(1-y)^2 + |f(1-y)|, |f(2-y)(1-y)| + (1-y)^2}
Interval index_matrix_row_expr(const Interval& f);

// Row sums of the index idempotent itself:
// max{(1-y)^2 + |f(1-y)|, |f(2-y)(1-y)| + |y(2-y)|}
Interval idempotent_rowsum_expr(const Interval& f);

// Variant with (1-y)^2 in place of the diagonal term of the second row;
// kept as a diagnostic (its supremum exceeds 1.29 for h1).
Interval idempotent_display_expr(const Interval& f);

// Pointwise 2x2 operator norm of the idempotent (diagnostic).
Interval idempotent_opnorm_expr(const Interval& f);

struct EnvelopeQuery {
    NormalizerKernel kernel = NormalizerKernel::h1();
    double s = 0.0;
    double grid_step = 0.0;  // optional resolution hint; validated if set
    double cutoff_T = 64.0;  // analytic tail majorants take over beyond
    double tol = 1e-9;       // certification gap target
};

// Certified sup over |t| >= s of `expr` applied to the kernel.
CertifiedValue sup_envelope(const NormalizerKernel& kernel,
                            const std::function<Interval(const Interval&)>& expr, double s,
                            double cutoff, double tol);

// The band envelope b_f(s); upper-bound certified value whose radius is the
// certification gap.
CertifiedValue b_envelope(const EnvelopeQuery& query);

struct PNormBounds {
    CertifiedValue row_sum;           // primary bound (matches the 1.29-grade constants)
    CertifiedValue display_variant;   // diagnostic
    CertifiedValue pointwise_opnorm;  // diagnostic
};
PNormBounds p_norm_bounds(const NormalizerKernel& kernel, double tol = 1e-9);
CertifiedValue p_norm_bound(const NormalizerKernel& kernel, double tol = 1e-9);

// Least s* with sup_{|t|>=s} expr <= target for every s >= s*, by bisection
// on the certified envelope; one-sided toward validity.
CertifiedValue threshold_solve_expr(const NormalizerKernel& kernel,
                                    const std::function<Interval(const Interval&)>& expr,
                                    double target, double s_tol = 2e-5);

// threshold_solve against the b envelope.
CertifiedValue threshold_solve(const NormalizerKernel& kernel, double target,
                               double s_tol = 2e-5);

}  // namespace bandcert

#endif
