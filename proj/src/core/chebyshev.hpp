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

#ifndef BANDCERT_CORE_CHEBYSHEV_HPP
#define BANDCERT_CORE_CHEBYSHEV_HPP

#include <functional>
#include <vector>

#include "certified.hpp"

namespace bandcert {

// Chebyshev series on [a, b] with a rigorous bound on |f - series|.
// Coefficient rounding is folded into `sup_error`; `trunc_error` is the
// analytic interpolation remainder supplied by the caller (typically an
// ellipse bound for analytic integrands).
struct ChebSeries {
    double a = -1.0, b = 1.0;
    std::vector<double> coef;   // c_0..c_n, f ~ sum c_j T_j(x), x mapped to [-1,1]
    double trunc_error = 0.0;   // sup |f - interpolant|
    double sup_error = 0.0;     // rounding slack: coefficient + node-value errors

    double total_sup_error() const { return trunc_error + sup_error; }

    // Clenshaw evaluation; adds its own rounding bound to `err_out` if given.
    double eval(double t, double* err_out = nullptr) const;

    // Enclosure of integral of the represented function from `a` to `t`.
    Interval integrate_from_a(double t) const;

    // Enclosure of the integral over the whole panel [a, b].
    Interval integral() const;

    // Upper bound for sup |series| on [a,b] via sum of |coefficients|.
    double coef_abs_sum() const;
};

// Interpolate f at n+1 Chebyshev points of [a, b].  `node_error` bounds the
// evaluation error of f at any node; `trunc` bounds the analytic remainder
// sup|f - p_n| (caller-supplied, e.g. from a Bernstein-ellipse estimate).
ChebSeries cheb_fit(const std::function<double(double)>& f, double a, double b, int n,
                    double node_error, double trunc, double value_magnitude);

}  // namespace bandcert

#endif
