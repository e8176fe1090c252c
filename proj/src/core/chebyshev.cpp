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

#include "chebyshev.hpp"

#include <cmath>
#include <numbers>

namespace bandcert {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

ChebSeries cheb_fit(const std::function<double(double)>& f, double a, double b, int n,
                    double node_error, double trunc, double value_magnitude) {
    ChebSeries s;
    s.a = a;
    s.b = b;
    s.coef.assign(n + 1, 0.0);
    s.trunc_error = trunc;

    std::vector<double> fv(n + 1);
    std::vector<double> theta(n + 1);
    const double half = 0.5 * (b - a), midp = 0.5 * (a + b);
    double vmax = 0.0;
    for (int i = 0; i <= n; ++i) {
        theta[i] = std::numbers::pi * i / n;
        const double x = std::cos(theta[i]);
        fv[i] = f(midp + half * x);
        vmax = std::max(vmax, std::fabs(fv[i]));
    }
    vmax = std::max(vmax, value_magnitude);

    // Direct DCT-I style sums; O(n^2) is fine at the panel sizes used here.
    for (int j = 0; j <= n; ++j) {
        double acc = 0.5 * (fv[0] + (j % 2 == 0 ? fv[n] : -fv[n]));
        for (int i = 1; i < n; ++i) acc += fv[i] * std::cos(j * theta[i]);
        s.coef[j] = 2.0 * acc / n;
    }
    s.coef[0] *= 0.5;
    s.coef[n] *= 0.5;

    // Every computed coefficient is a length-(n+1) sum of terms bounded by
    // vmax, evaluated from node values carrying `node_error`; the series sup
    // deviates by at most the sum over coefficients of those errors.
    const double coef_err = 2.0 * (node_error + 1.1 * (n + 1) * kEps * vmax);
    s.sup_error = (n + 1) * coef_err;
    return s;
}

double ChebSeries::eval(double t, double* err_out) const {
    const double x = (2.0 * t - (a + b)) / (b - a);
    double b1 = 0.0, b2 = 0.0, cmag = 0.0;
    for (size_t j = coef.size(); j-- > 1;) {
        const double tmp = 2.0 * x * b1 - b2 + coef[j];
        b2 = b1;
        b1 = tmp;
        cmag += std::fabs(coef[j]);
    }
    cmag += std::fabs(coef[0]);
    if (err_out) *err_out += 4.0 * coef.size() * kEps * cmag;
    return x * b1 - b2 + coef[0];
}

double ChebSeries::coef_abs_sum() const {
    double s = 0.0;
    for (double c : coef) s += std::fabs(c);
    return s;
}

Interval ChebSeries::integral() const {
    // integral over panel = (b-a)/2 * sum_{j even} 2 c_j / (1 - j^2)
    double acc = 0.0, mag = 0.0;
    for (size_t j = 0; j < coef.size(); j += 2) {
        const double w = 2.0 / (1.0 - double(j) * double(j));
        acc += coef[j] * (j == 0 ? 2.0 : w);
        mag += std::fabs(coef[j]) * std::fabs(j == 0 ? 2.0 : w);
    }
    const double half = 0.5 * (b - a);
    const double v = half * acc;
    const double err = half * (2.0 * total_sup_error() + 4.0 * coef.size() * kEps * mag);
    return widen(Interval(v), err);
}

Interval ChebSeries::integrate_from_a(double t) const {
    // Antiderivative coefficients in Chebyshev basis:
    //   B_j = (c_{j-1} - c_{j+1}) / (2j),  then scale by (b-a)/2.
    const size_t n = coef.size() - 1;
    std::vector<double> B(n + 2, 0.0);
    B[1] = coef[0] - (2 <= n ? 0.5 * coef[2] : 0.0);
    for (size_t j = 2; j <= n + 1; ++j) {
        const double cjm = coef[j - 1];
        const double cjp = (j + 1 <= n) ? coef[j + 1] : 0.0;
        B[j] = (cjm - cjp) / (2.0 * double(j));
    }
    const double half = 0.5 * (b - a);
    // value at x minus value at -1
    double err = 0.0;
    ChebSeries anti;
    anti.a = a;
    anti.b = b;
    anti.coef = B;
    const double at_t = anti.eval(t, &err);
    double err2 = 0.0;
    const double at_a = anti.eval(a, &err2);
    const double v = half * (at_t - at_a);
    const double total_err =
        half * (err + err2) + std::fabs(t - a) * total_sup_error() + 4.0 * kEps * std::fabs(v);
    return widen(Interval(v), total_err);
}

}  // namespace bandcert
