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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/quasi_exp.hpp"

using namespace bandcert;

namespace {
constexpr double kPi = std::numbers::pi;

// coefficients of p(x)*(x^2 - x) for checking the unit-root factorization
std::vector<std::complex<double>> mul_by_x2_minus_x(const ComplexPolynomial& p) {
    std::vector<std::complex<double>> out(p.coef.size() + 2, {0.0, 0.0});
    for (size_t j = 0; j < p.coef.size(); ++j) {
        out[j + 2] += p.coef[j];
        out[j + 1] -= p.coef[j];
    }
    return out;
}
}  // namespace

TEST_CASE("truncated exponential polynomials") {
    const ComplexPolynomial f0 = build_f(0);
    CHECK(f0.coef.size() == 1);
    CHECK(f0.coef[0] == std::complex<double>(1.0, 0.0));

    const ComplexPolynomial f1 = build_f(1);
    CHECK(f1.coef[1].real() == doctest::Approx(0.0));
    CHECK(f1.coef[1].imag() == doctest::Approx(2.0 * kPi));

    // f_17 at 1 sits within the analytic remainder of e^{2 pi i}
    const std::complex<double> v = build_f(17).eval(1.0);
    const double remainder = std::pow(2.0 * kPi, 18) / std::tgamma(19.0);
    CHECK(std::abs(v - 1.0) <= remainder);
    CHECK_THROWS_AS(build_f(-1), std::invalid_argument);
}

TEST_CASE("g_n boundary identities") {
    const std::complex<double> ghalf = build_g(1).eval(0.5);
    CHECK(ghalf.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ghalf.imag() == doctest::Approx(kPi / 2.0).epsilon(1e-14));

    for (int n = 1; n <= 25; ++n) {
        const ComplexPolynomial g = build_g(n);
        CHECK(std::abs(g.eval(0.0) - 1.0) <= 1e-12);
        CHECK(std::abs(g.eval(1.0) - 1.0) <= 1e-12);
        CHECK(g.degree() == (n >= 3 ? n : 2));
    }
}

TEST_CASE("g_n - 1 is divisible by x^2 - x") {
    for (int n : {1, 2, 5, 17, 25}) {
        const ComplexPolynomial g = build_g(n);
        const ComplexPolynomial q = unit_root_factor(n);
        const auto prod = mul_by_x2_minus_x(q);
        // compare coefficients of (x^2-x) Q against g - 1
        for (size_t j = 0; j < std::max(prod.size(), g.coef.size()); ++j) {
            const std::complex<double> a = j < prod.size() ? prod[j] : 0.0;
            std::complex<double> b = j < g.coef.size() ? g.coef[j] : 0.0;
            if (j == 0) b -= 1.0;
            CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
        }
    }
}

TEST_CASE("defect suprema") {
    CHECK(sup_defect(1, 0.0, 0.0).value <= 1e-13);

    const double d17 = sup_defect(17, -2.0, 2.0, 0.05).value;
    CHECK(std::isfinite(d17));
    double prev = 1e300;
    for (int n = 15; n <= 20; ++n) {
        const double d = sup_defect(n, -2.0, 2.0, 0.05).value;
        CHECK(d < prev);
        prev = d;
    }
    // uniform convergence to 0 on [-2, 2]
    CHECK(sup_defect(50, -2.0, 2.0, 0.05).value <= 1e-4);

    // frozen oracle value on the odd-case spectral range
    CHECK(sup_defect(17, -0.005, 1.005, 1e-3).value ==
          doctest::Approx(0.040949910560).epsilon(5e-3));
}

TEST_CASE("exponential approximation suprema") {
    CHECK(sup_exp_error(9, 0.0, 0.0).value <= 1e-12);
    CHECK(sup_exp_error(9, 1.0, 1.0).value <= 1e-12);

    const CertifiedValue e17 = sup_exp_error(17, -0.05, 1.05);
    CHECK(e17.value < 0.209);
    CHECK(e17.value == doctest::Approx(0.0448537972).epsilon(2e-3));
}

TEST_CASE("analytic remainder dominates the certified sup") {
    for (auto [n, r] : {std::pair<int, double>{10, 1.0}, {17, 1.05}, {20, 0.5}}) {
        const double bound = std::pow(2.0 * kPi * r, n + 1) / std::tgamma(double(n) + 2.0) +
                             std::abs(taylor_partial_sum(n)) * r * r;
        CHECK(sup_exp_error(n, -r, r).value <= bound);
    }
}

TEST_CASE("minimal admissible degree") {
    // frozen from the dense-grid oracle
    const int m4 = minimal_m(0.04, -2.0, 2.0);
    CHECK(m4 == 34);
    CHECK(m4 >= 10);
    CHECK(m4 <= 60);
    const int m1 = minimal_m(0.01, -2.0, 2.0);
    CHECK(m1 == 36);
    CHECK(m1 >= m4);  // nested conditions

    // degenerate interval: both sups vanish identically
    CHECK(minimal_m(0.049, 0.0, 0.0) == 1);

    CHECK_THROWS_AS(minimal_m(0.2, -2.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(minimal_m(0.001, -2.0, 2.0, 5), CertificationError);
}

TEST_CASE("certified polynomial sup") {
    ComplexPolynomial p;
    p.coef = {{1.0, 0.0}, {0.0, 1.0}};  // 1 + i x
    const CertifiedValue s = sup_abs_poly(p, -2.0, 2.0, 1e-9);
    CHECK(s.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-8));
}
