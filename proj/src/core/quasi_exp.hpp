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

#ifndef BANDCERT_CORE_QUASI_EXP_HPP
#define BANDCERT_CORE_QUASI_EXP_HPP

#include <complex>
#include <vector>

#include "certified.hpp"

namespace bandcert {

// Complex polynomial in ascending coefficient order, with evaluation error
// tracking for certified bounds.
struct ComplexPolynomial {
    std::vector<std::complex<double>> coef;

    int degree() const { return static_cast<int>(coef.size()) - 1; }

    // Horner; if err is non-null, accumulates a rigorous bound on the
    // rounding error of the returned value (coefficient construction slack
    // included via the caller-chosen inflation).
    std::complex<double> eval(double x, double* err = nullptr) const;

    // Rectangle enclosure of p([x]) for real interval argument.
    void eval_interval(const Interval& x, Interval& re, Interval& im) const;

    ComplexPolynomial derivative() const;
};

// Truncated Taylor polynomial of e^{2 pi i x}: sum_{k=0}^n (2 pi i x)^k / k!.
ComplexPolynomial build_f(int n);

// g_n = f_n - (sum_{k=1}^n (2 pi i)^k / k!) x^2;  g_n(0) = g_n(1) = 1.
ComplexPolynomial build_g(int n);

// Q_n with g_n(x) - 1 = (x^2 - x) Q_n(x) as an exact algebraic identity.
ComplexPolynomial unit_root_factor(int n);

// Enclosure of sum_{k=1}^n (2 pi i)^k / k! (the x^2 correction coefficient).
std::complex<double> taylor_partial_sum(int n);

// Certified sup over [a, b] of |p|.
CertifiedValue sup_abs_poly(const ComplexPolynomial& p, double a, double b, double tol = 1e-6);

// Certified sup over [a, b] of |g_n(x) g_n(-x) - 1|.  If `target` is given
// the refinement stops as soon as the comparison against it is decided
// (the returned bounds stay valid, just not tight).
CertifiedValue sup_defect(int n, double a, double b, double tol = 1e-6,
                          const double* target = nullptr);

// Certified sup over [a, b] of |e^{2 pi i x} - g_n(x)| (grid + Lipschitz).
CertifiedValue sup_exp_error(int n, double a, double b, double tol = 5e-5);

// Least n with sup_defect(n,[a,b]) < epsilon and sup_exp_error(n,[a,b]) < 1,
// decided on certified upper bounds.
int minimal_m(double epsilon, double a, double b, int cap = 200);

}  // namespace bandcert

#endif
