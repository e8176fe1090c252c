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

#include "quasi_exp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "chebyshev.hpp"

namespace bandcert {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

std::complex<double> ComplexPolynomial::eval(double x, double* err) const {
    std::complex<double> acc(0.0, 0.0);
    double mag = 0.0;
    const double ax = std::fabs(x);
    for (size_t j = coef.size(); j-- > 0;) {
        acc = acc * x + coef[j];
        mag = mag * ax + std::abs(coef[j]);
    }
    if (err) *err += 3.0 * (coef.size() + 2) * kEps * mag;
    return acc;
}

void ComplexPolynomial::eval_interval(const Interval& x, Interval& re, Interval& im) const {
    re = Interval(0.0);
    im = Interval(0.0);
    for (size_t j = coef.size(); j-- > 0;) {
        const Interval nre = re * x + Interval(coef[j].real());
        const Interval nim = im * x + Interval(coef[j].imag());
        re = nre;
        im = nim;
    }
    // coefficient construction slack
    double mag = 0.0;
    const double ax = x.mag();
    for (size_t j = coef.size(); j-- > 0;) mag = mag * ax + std::abs(coef[j]);
    const double slack = 3.0 * (coef.size() + 2) * kEps * mag;
    re = widen(re, slack);
    im = widen(im, slack);
}

ComplexPolynomial ComplexPolynomial::derivative() const {
    ComplexPolynomial d;
    if (coef.size() <= 1) {
        d.coef = {std::complex<double>(0.0, 0.0)};
        return d;
    }
    d.coef.resize(coef.size() - 1);
    for (size_t j = 1; j < coef.size(); ++j) d.coef[j - 1] = coef[j] * double(j);
    return d;
}

ComplexPolynomial build_f(int n) {
    if (n < 0) throw std::invalid_argument("build_f: n must be >= 0");
    ComplexPolynomial p;
    p.coef.resize(n + 1);
    std::complex<double> term(1.0, 0.0);
    const std::complex<double> w(0.0, 2.0 * kPi);
    for (int k = 0; k <= n; ++k) {
        p.coef[k] = term;
        term *= w / double(k + 1);
    }
    return p;
}

std::complex<double> taylor_partial_sum(int n) {
    std::complex<double> s(0.0, 0.0);
    std::complex<double> term(1.0, 0.0);
    const std::complex<double> w(0.0, 2.0 * kPi);
    for (int k = 1; k <= n; ++k) {
        term *= w / double(k);
        s += term;
    }
    return s;
}

ComplexPolynomial build_g(int n) {
    if (n < 1) throw std::invalid_argument("build_g: n must be >= 1");
    ComplexPolynomial g = build_f(n);
    if (g.coef.size() < 3) g.coef.resize(3, std::complex<double>(0.0, 0.0));
    g.coef[2] -= taylor_partial_sum(n);
    return g;
}

ComplexPolynomial unit_root_factor(int n) {
    // From the telescoped form of g_n: with c_k = (2 pi i)^k / k!,
    //   Q(x) = sum_{j>=1} (sum_{k=j+2}^n c_k) x^j - c_1 ... the constant
    // term collapses to -c_1 after subtracting the full partial sum.
    if (n < 1) throw std::invalid_argument("unit_root_factor: n must be >= 1");
    std::vector<std::complex<double>> c(n + 1);
    std::complex<double> term(1.0, 0.0);
    const std::complex<double> w(0.0, 2.0 * kPi);
    for (int k = 0; k <= n; ++k) {
        c[k] = term;
        term *= w / double(k + 1);
    }
    ComplexPolynomial q;
    q.coef.assign(std::max(1, n - 1), std::complex<double>(0.0, 0.0));
    for (int j = n - 2; j >= 1; --j) {
        // tail sum_{k=j+2}^n c_k, accumulated backward
        q.coef[j] = c[j + 2] + (j + 2 < n ? q.coef[j + 1] : std::complex<double>(0.0, 0.0));
    }
    q.coef[0] = -c[1];
    return q;
}

namespace {

struct PolySupResult {
    double upper, lower;
};

// Certified sup of |v|^2 for a real-polynomial-valued function of exact
// degree `deg`, supplied as a node evaluator returning the value and a
// rigorous evaluation error bound.  Upper bounds per segment come from the
// sum of |Chebyshev coefficients| (exact interpolation at deg+1 nodes plus
// rounding slack); lower bounds from the node values themselves.  Best-first
// refinement; `target_sq`, when non-null, turns this into a decision
// procedure with pruning.
PolySupResult cert_sup_sq(const std::function<double(double, double*)>& value_sq, int deg,
                          double a, double b, double rel_tol, const double* target_sq) {
    struct Seg {
        double a, b, upper;
    };
    auto by_upper = [](const Seg& x, const Seg& y) { return x.upper < y.upper; };

    double best_lower = 0.0;
    auto fit_upper = [&](double lo, double hi) {
        double node_err = 0.0, node_max = -std::numeric_limits<double>::infinity();
        auto f = [&](double x) {
            double e = 0.0;
            const double v = value_sq(x, &e);
            node_err = std::max(node_err, e);
            node_max = std::max(node_max, v - e);
            return v;
        };
        ChebSeries s = cheb_fit(f, lo, hi, deg, 0.0, 0.0, 0.0);
        best_lower = std::max(best_lower, node_max);
        double vmax = 0.0;
        for (double c : s.coef) vmax = std::max(vmax, std::fabs(c));
        const double coef_err = 2.0 * (node_err + 1.1 * (deg + 1) * kEps * (deg + 1) * vmax);
        return s.coef_abs_sum() + (deg + 1) * coef_err;
    };

    std::vector<Seg> heap;
    auto push = [&](double lo, double hi) {
        heap.push_back({lo, hi, fit_upper(lo, hi)});
        std::push_heap(heap.begin(), heap.end(), by_upper);
    };
    push(a, b);

    size_t fits = 1;
    while (true) {
        std::pop_heap(heap.begin(), heap.end(), by_upper);
        Seg top = heap.back();
        heap.pop_back();
        if (target_sq && top.upper < *target_sq) return {top.upper, best_lower};
        if (target_sq && best_lower >= *target_sq) return {std::max(top.upper, best_lower), best_lower};
        if (!target_sq &&
            top.upper - best_lower <= rel_tol * std::max(best_lower, 1e-300) + 1e-300)
            return {top.upper, best_lower};
        const double m = 0.5 * (top.a + top.b);
        push(top.a, m);
        push(m, top.b);
        fits += 2;
        if (fits > 40'000)
            throw CertificationError("polynomial sup certification exceeded its fit budget");
    }
}

CertifiedValue sup_from_sq(const std::function<double(double, double*)>& value_sq, int deg,
                           double a, double b, double rel_tol, const double* target = nullptr) {
    if (!(a <= b)) throw std::invalid_argument("sup: requires a <= b");
    if (a == b) {
        double e = 0.0;
        const double v = value_sq(a, &e);
        const double up = std::sqrt(std::max(0.0, v + e));
        const double lo = std::sqrt(std::max(0.0, v - e));
        return CertifiedValue::upper(up, up - lo);
    }
    double target_sq = 0.0;
    if (target) target_sq = (*target) * (*target);
    deg = std::max(deg, 1);  // constant case: a 2-node fit is still exact
    PolySupResult r = cert_sup_sq(value_sq, deg, a, b, rel_tol, target ? &target_sq : nullptr);
    const double up = std::sqrt(std::max(0.0, r.upper)) * (1.0 + 4.0 * kEps);
    const double lo = std::sqrt(std::max(0.0, r.lower)) * (1.0 - 4.0 * kEps);
    return CertifiedValue::upper(up, std::max(0.0, up - lo));
}

}  // namespace

CertifiedValue sup_abs_poly(const ComplexPolynomial& p, double a, double b, double tol) {
    auto value_sq = [&](double x, double* err) {
        double e = 0.0;
        const std::complex<double> v = p.eval(x, &e);
        const double n2 = std::norm(v);
        if (err) *err = 2.0 * (std::abs(v) + e) * e + 4.0 * kEps * n2;
        return n2;
    };
    return sup_from_sq(value_sq, 2 * p.degree(), a, b, tol);
}

CertifiedValue sup_defect(int n, double a, double b, double tol, const double* target) {
    if (n < 1) throw std::invalid_argument("sup_defect: n must be >= 1");
    if (!(a <= b)) throw std::invalid_argument("sup_defect: requires a <= b");
    const ComplexPolynomial g = build_g(n);
    auto value_sq = [&](double x, double* err) {
        double e1 = 0.0, e2 = 0.0;
        const std::complex<double> gp = g.eval(x, &e1);
        const std::complex<double> gm = g.eval(-x, &e2);
        const std::complex<double> d = gp * gm - 1.0;
        const double mag = std::abs(gp) * e2 + std::abs(gm) * e1 + e1 * e2 +
                           8.0 * kEps * (std::abs(gp) * std::abs(gm) + 1.0);
        const double n2 = std::norm(d);
        if (err) *err = 2.0 * (std::abs(d) + mag) * mag + 4.0 * kEps * n2;
        return n2;
    };
    return sup_from_sq(value_sq, 4 * n, a, b, tol, target);
}

CertifiedValue sup_exp_error(int n, double a, double b, double tol) {
    if (n < 1) throw std::invalid_argument("sup_exp_error: n must be >= 1");
    if (!(a <= b)) throw std::invalid_argument("sup_exp_error: requires a <= b");
    const ComplexPolynomial g = build_g(n);
    const ComplexPolynomial gd = g.derivative();
    const double lip = 2.0 * kPi + sup_abs_poly(gd, a, b, 0.05).value;

    const size_t N = std::min<size_t>(
        20'000'000, static_cast<size_t>((b - a) * lip / std::max(tol, 1e-12)) + 2);
    const double step = (b - a) / double(N);
    double best = 0.0, max_err = 0.0;
    for (size_t i = 0; i <= N; ++i) {
        const double x = a + step * double(i);
        double e = 0.0;
        const std::complex<double> gv = g.eval(x, &e);
        const std::complex<double> ev(std::cos(2.0 * kPi * x), std::sin(2.0 * kPi * x));
        const double v = std::abs(ev - gv);
        best = std::max(best, v);
        max_err = std::max(max_err, e + 8.0 * kEps * (1.0 + std::abs(gv)));
    }
    const double up = best + 0.5 * lip * step + max_err;
    return CertifiedValue::upper(up, up - std::max(0.0, best - max_err));
}

int minimal_m(double epsilon, double a, double b, int cap) {
    if (!(epsilon > 0.0 && epsilon < 0.05))
        throw std::invalid_argument("minimal_m: epsilon must lie in (0, 1/20)");
    if (!(a <= b)) throw std::invalid_argument("minimal_m: requires a <= b");
    for (int n = 1; n <= cap; ++n) {
        // cheap point prefilter before certifying
        const ComplexPolynomial g = build_g(n);
        bool plausible = true;
        for (int i = 0; i <= 64 && plausible; ++i) {
            const double x = a + (b - a) * i / 64.0;
            const std::complex<double> gp = g.eval(x);
            if (std::abs(gp * g.eval(-x) - 1.0) >= epsilon) plausible = false;
            const std::complex<double> ev(std::cos(2.0 * kPi * x), std::sin(2.0 * kPi * x));
            if (std::abs(ev - gp) >= 1.0) plausible = false;
        }
        if (!plausible) continue;
        if (sup_defect(n, a, b, 0.02, &epsilon).value < epsilon &&
            sup_exp_error(n, a, b, 0.4).value < 1.0)
            return n;
    }
    throw CertificationError("minimal_m: search cap exceeded");
}

}  // namespace bandcert
