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

#ifndef BANDCERT_CORE_SINC_KERNELS_HPP
#define BANDCERT_CORE_SINC_KERNELS_HPP

#include <string>
#include <vector>

#include "certified.hpp"
#include "chebyshev.hpp"

namespace bandcert {

double sinc_pi(double u);                 // sin(pi*u)/(pi*u)
double sinc_pi_pow(double u, int k);

// Certified antiderivative of sinc(pi*u)^k on the half line:
//   P_k(t) = int_0^t sinc(pi*u)^k du.
// Panels on [0, 64] are stored as Chebyshev models with rigorous remainder
// bounds (Bernstein-ellipse estimates for the analytic integrand); the rest
// of the half-line integral is accumulated once, and tails are controlled
// by int_T^inf (pi*u)^{-k} du = T^{1-k}/((k-1) pi^k).
class SincPowerTable {
  public:
    static constexpr double kStoredRange = 64.0;
    static constexpr int kMinExponent = 3;   // absolute tails certifiable
    static constexpr int kMaxExponent = 24;

    explicit SincPowerTable(int k);

    int exponent() const { return k_; }
    Interval partial(double t) const;        // P_k(t) for any t >= 0
    Interval half_integral() const { return half_; }
    Interval total_integral() const { return half_ + half_; }
    double tail_integral_majorant(double T) const;   // int_T^inf |sinc^k|

    // Cached, thread-safe accessor.
    static const SincPowerTable& get(int k);

  private:
    int k_;
    std::vector<ChebSeries> panels_;
    std::vector<Interval> cum_;   // cum_[j] = enclosure of P_k(j)
    Interval half_;
};

// Antiderivative with the spec's normalization F_k(t) = int_{-inf}^t.
// Requires k >= 3 so the improper part has a certified absolute tail.
CertifiedValue sinc_power_antiderivative(int k, double t);

struct KernelComponent {
    int exponent = 8;     // k
    double weight = 1.0;  // w_i > 0, sum = 1
    double rate = 1.0;    // a_i > 0; Fourier support of the term: k*pi*a_i
    Interval norm_c;      // 1 / I_k, certified
};

// Odd band-limited mollified sign h with h(t) -> 1 as t -> +inf:
//   h(t) = sum_i w_i * 2 c_i * P_{k_i}(a_i * scale * t)   (odd extension).
// Single-term kernels are the sinc-power mollifiers; weighted scaled sums
// realize convex combinations and piecewise-polynomial (B-spline) Fourier
// profiles.
class NormalizerKernel {
  public:
    static NormalizerKernel h1();            // k=8, c = 315/151 exactly
    static NormalizerKernel h2();            // k=3, c = 4/3 exactly
    static NormalizerKernel sinc_power(int k);
    static NormalizerKernel mixture(const std::vector<KernelComponent>& parts);
    static NormalizerKernel parse(const std::string& spec);

    NormalizerKernel with_scale(double s) const;
    double scale() const { return scale_; }
    const std::vector<KernelComponent>& components() const { return comps_; }

    // Fourier support radius in units of pi (bandwidth = bandwidth_pi * pi).
    double bandwidth_pi() const;

    Interval eval(double t) const;                       // enclosure of h(t)
    CertifiedValue eval_certified(double t) const;
    Interval eval_range(double t1, double t2) const;     // 0 <= t1 <= t2
    double tail_majorant(double T) const;                // sup_{|t|>=T} |h - sgn|
    Interval derivative_sup() const;                     // sup |h'| (attained at 0)
    CertifiedValue derivative_bound() const;             // upper bound, Bernstein-consistent
    CertifiedValue sup_abs(double tol = 1e-9) const;     // certified sup |h|
    bool normalization_check() const;                    // sum w_i c_i I_{k_i} contains 1

    std::string describe() const;

  private:
    std::vector<KernelComponent> comps_;
    double scale_ = 1.0;
};

}  // namespace bandcert

#endif
