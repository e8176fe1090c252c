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

#include "envelope.hpp"

#include <cmath>

#include "supremum.hpp"

namespace bandcert {

Interval envelope_b_expr(const Interval& f) {
    const Interval y = sqr(f);
    const Interval u = Interval(1.0) - y;
    const Interval b1 = sqr(u) + u;
    const Interval b2 = iabs((Interval(2.0) - y) * u) + sqr(u);
    return imax(b1, b2);
}

Interval index_matrix_row_expr(const Interval& f) {
    const Interval y = sqr(f);
    const Interval u = Interval(1.0) - y;
    const Interval r1 = sqr(u) + iabs(f * u);
    const Interval r2 = iabs(f * (Interval(2.0) - y) * u) + sqr(u);
    return imax(r1, r2);
}

Interval idempotent_rowsum_expr(const Interval& f) {
    const Interval y = sqr(f);
    const Interval u = Interval(1.0) - y;
    const Interval r1 = sqr(u) + iabs(f * u);
    const Interval r2 = iabs(f * (Interval(2.0) - y) * u) + iabs(y * (Interval(2.0) - y));
    return imax(r1, r2);
}

Interval idempotent_display_expr(const Interval& f) {
    const Interval y = sqr(f);
    const Interval u = Interval(1.0) - y;
    const Interval r1 = sqr(u) + iabs(f * u);
    const Interval r2 = iabs(f * (Interval(2.0) - y) * u) + sqr(u);
    return imax(r1, r2);
}

Interval idempotent_opnorm_expr(const Interval& f) {
    const Interval y = sqr(f);
    const Interval u = Interval(1.0) - y;
    const Interval a11 = sqr(u);
    const Interval a12 = f * u;
    const Interval a21 = f * (Interval(2.0) - y) * u;
    const Interval a22 = y * (Interval(2.0) - y);
    const Interval S = sqr(a11) + sqr(a12) + sqr(a21) + sqr(a22);
    const Interval det = a11 * a22 - a12 * a21;
    Interval inner = sqr(S) - Interval(4.0) * sqr(det);
    if (inner.lo < 0.0) inner = Interval::unchecked(0.0, std::max(0.0, inner.hi));
    const Interval smax2 = (S + isqrt(inner)) * Interval(0.5);
    return isqrt(smax2);
}

CertifiedValue sup_envelope(const NormalizerKernel& kernel,
                            const std::function<Interval(const Interval&)>& expr, double s,
                            double cutoff, double tol) {
    if (!(s >= 0.0)) throw std::invalid_argument("sup_envelope: s must be >= 0");
    cutoff = std::max(cutoff, s + 1.0);
    const double tm = kernel.tail_majorant(cutoff);
    SupProblem p;
    p.lo = s;
    p.hi = cutoff;
    p.range_bound = [&](double a, double b) { return expr(kernel.eval_range(a, b)); };
    p.tail = expr(Interval::unchecked(1.0 - tm, 1.0 + tm));
    p.has_tail = true;
    p.tol = tol;
    SupResult r = certified_sup(p);
    return CertifiedValue::upper(r.upper, r.upper - r.lower);
}

CertifiedValue b_envelope(const EnvelopeQuery& q) {
    if (q.grid_step > 0.0) {
        // The composed envelope slope is at most ~6 |h'|_sup for the kernels
        // in range here; reject resolutions too coarse for the tolerance.
        const double lip = 6.0 * q.kernel.derivative_sup().hi;
        if (q.grid_step * lip > std::max(q.tol, 1e-12))
            throw std::invalid_argument(
                "b_envelope: grid_step too coarse for the requested tolerance");
    }
    return sup_envelope(q.kernel, envelope_b_expr, q.s, q.cutoff_T, q.tol);
}

PNormBounds p_norm_bounds(const NormalizerKernel& kernel, double tol) {
    PNormBounds out;
    out.row_sum = sup_envelope(kernel, idempotent_rowsum_expr, 0.0, 64.0, tol);
    out.display_variant = sup_envelope(kernel, idempotent_display_expr, 0.0, 64.0, tol);
    out.pointwise_opnorm = sup_envelope(kernel, idempotent_opnorm_expr, 0.0, 64.0, tol);
    return out;
}

CertifiedValue p_norm_bound(const NormalizerKernel& kernel, double tol) {
    return sup_envelope(kernel, idempotent_rowsum_expr, 0.0, 64.0, tol);
}

namespace {

// Smallest cutoff at which the tail enclosure pushed through `expr` clears
// the target; throws if none exists below the hard cap.
double find_tail_cutoff(const NormalizerKernel& kernel,
                        const std::function<Interval(const Interval&)>& expr, double target,
                        double start) {
    double T = std::max(start, 1.0);
    const double cap = 1 << 20;
    while (T <= cap) {
        const double tm = kernel.tail_majorant(T);
        if (expr(Interval::unchecked(1.0 - tm, 1.0 + tm)).hi <= 0.9 * target) return T;
        T *= 2.0;
    }
    throw CertificationError(
        "threshold_solve: target unreachable below the cutoff with certified tails");
}

bool sup_le(const NormalizerKernel& kernel, const std::function<Interval(const Interval&)>& expr,
            double s, double cutoff, double target) {
    const double tm = kernel.tail_majorant(cutoff);
    SupProblem p;
    p.lo = s;
    p.hi = cutoff;
    p.range_bound = [&](double a, double b) { return expr(kernel.eval_range(a, b)); };
    p.tail = expr(Interval::unchecked(1.0 - tm, 1.0 + tm));
    p.has_tail = true;
    p.tol = std::max(1e-14, 1e-3 * target);
    SupResult r = certified_sup(p, &target);
    return r.upper <= target;
}

}  // namespace

CertifiedValue threshold_solve_expr(const NormalizerKernel& kernel,
                                    const std::function<Interval(const Interval&)>& expr,
                                    double target, double s_tol) {
    if (!(target > 0.0)) throw std::invalid_argument("threshold_solve: target must be > 0");

    const double cutoff = find_tail_cutoff(kernel, expr, target, 64.0 / kernel.scale());
    if (sup_le(kernel, expr, 0.0, cutoff, target))
        return CertifiedValue::upper(0.0, 0.0);

    // find a certified-good upper end
    double hi = 0.25, lo = 0.0;
    while (!sup_le(kernel, expr, hi, cutoff, target)) {
        lo = hi;
        hi *= 2.0;
        if (hi > cutoff)
            throw CertificationError(
                "threshold_solve: target unreachable below the cutoff with certified tails");
    }
    while (hi - lo > s_tol) {
        const double mid = 0.5 * (lo + hi);
        if (sup_le(kernel, expr, mid, cutoff, target))
            hi = mid;
        else
            lo = mid;
    }
    return CertifiedValue::upper(hi, hi - lo);
}

CertifiedValue threshold_solve(const NormalizerKernel& kernel, double target, double s_tol) {
    return threshold_solve_expr(kernel, envelope_b_expr, target, s_tol);
}

}  // namespace bandcert
