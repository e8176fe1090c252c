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

#include "core/chains.hpp"

using namespace bandcert;

namespace {
constexpr double kPi = std::numbers::pi;
const GeometryParams kGeom{6, 1.0, 800.0};
}

TEST_CASE("curvature-induced spectral gap") {
    CHECK(lichnerowicz_gap({2, 1.0, 1.0}) == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(lichnerowicz_gap({6, 4.0, 1.0}) ==
          doctest::Approx(0.5 * std::sqrt(24.0 / 5.0)).epsilon(1e-15));
    CHECK(lichnerowicz_gap({1000000, 1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-5));

    CHECK_THROWS_AS(lichnerowicz_gap({1, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(lichnerowicz_gap({4, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(lichnerowicz_gap({4, 1.0, -2.0}), std::invalid_argument);
}

TEST_CASE("budget validation") {
    BudgetAllocation even = BudgetAllocation::even_default();
    CHECK_NOTHROW(even.validate());
    BudgetAllocation odd = BudgetAllocation::odd_default(17);
    CHECK_NOTHROW(odd.validate());
    CHECK(odd.fourier_den == 102);

    BudgetAllocation bad = even;
    bad.fourier_num = 1;
    bad.fourier_den = 9;  // 5/9 > 1/3
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = even;
    bad.sep_den = 5000;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("even pipeline reproduces the reference chain") {
    const ChainReport rep = even_chain(kGeom, NormalizerKernel::h1());

    const NamedBound* pn = rep.find("p_norm_bound");
    REQUIRE(pn != nullptr);
    CHECK(pn->value.value > 1.0);
    CHECK(pn->value.value < 1.29);

    CHECK(rep.find("p_norm_presented")->value.value == doctest::Approx(1.29));

    const double eps = rep.find("epsilon_star")->value.value;
    CHECK(eps >= 1.40e-5);
    CHECK(eps <= 1.42e-5);

    const double s = rep.find("s_threshold")->value.value;
    CHECK(s <= 0.7888);

    CHECK(rep.find("envelope_at_threshold")->value.value <= eps);

    CHECK(rep.final_constant.value <= 190.0);
    CHECK(rep.final_constant.value >= 180.0);
    CHECK(rep.parity == "even");
    CHECK(!rep.propagation_budget.empty());
    CHECK(rep.verdict.find("C <= 18") != std::string::npos);
}

TEST_CASE("even epsilon* is sharp against the contraction inequality") {
    const ChainReport rep = even_chain(kGeom, NormalizerKernel::h1());
    const double C = rep.find("p_norm_presented")->value.value;
    const double eps = rep.find("epsilon_star")->value.value;
    const Interval K = (iexp(Interval(2.0 * kPi * C)) - iexp(Interval(2.0 * kPi))) /
                       (sqr(Interval(C)) * (Interval(C) - Interval(1.0)));
    const Interval at_eps = (Interval(8.0 * C) + Interval(4.0) * Interval(eps) + Interval(2.0)) *
                            Interval(eps) * K;
    CHECK(at_eps.hi < 1.0);
    const double bigger = 1.01 * eps;
    const Interval at_more = (Interval(8.0 * C) + Interval(4.0) * Interval(bigger) +
                              Interval(2.0)) *
                             Interval(bigger) * K;
    CHECK(at_more.hi >= 1.0);
}

TEST_CASE("even constant scales linearly in the Fourier budget") {
    const ChainReport base = even_chain(kGeom, NormalizerKernel::h1());
    BudgetAllocation halved = BudgetAllocation::even_default();
    halved.fourier_den = 30;  // halve the Fourier fraction
    const ChainReport tight = even_chain(kGeom, NormalizerKernel::h1(), halved);
    CHECK(tight.final_constant.value ==
          doctest::Approx(2.0 * base.final_constant.value).epsilon(1e-9));
}

TEST_CASE("threshold of an identically satisfied envelope is zero") {
    const CertifiedValue s = threshold_solve_expr(
        NormalizerKernel::h1(), [](const Interval&) { return Interval(0.0); }, 0.5);
    CHECK(s.value == 0.0);
}

TEST_CASE("odd pipeline reproduces the reference chain") {
    const ChainReport rep = odd_chain(kGeom, NormalizerKernel::h2(), 17);

    CHECK(rep.find("kernel_sup_abs")->value.value <= 2.0);
    CHECK(rep.find("delta")->value.value < 0.209);
    CHECK(rep.find("epsilon_star")->value.value >= 0.338);
    CHECK(rep.find("u_envelope_at_0p535")->value.value <= 0.169);
    CHECK(rep.final_constant.value <= 328.0);
    CHECK(rep.parity == "odd");

    // the sup-norm delta never exceeds the series-style reading
    CHECK(rep.find("delta")->value.value <= rep.find("delta_series_range")->value.value);
    // norm cap check: N = 7 comfortably covers g_17 on the certified range
    CHECK(rep.find("g_norm_on_range")->value.value <= 7.0);
}

TEST_CASE("odd defect shrinks with the polynomial degree") {
    const double hi = 1.005;
    double prev = 1e300;
    for (int m : {17, 19, 21, 23}) {
        const double d = sup_exp_error(m, -hi, hi, 1e-4).value;
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("width threshold closed form and scale covariance") {
    const double t1 = width_threshold(190.0, 6, 1.0);
    const double t2 = width_threshold(190.0, 6, 2.0);
    CHECK(t2 / t1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("vanishing scale: finiteness, monotonicity, geometry independence") {
    PscParams p;
    p.kernel = NormalizerKernel::h1();
    p.odd = false;

    double prev = -1.0;
    for (double eps : {0.04, 0.01}) {
        p.epsilon = eps;
        const PscResult r = psc_vanishing_scale(p);
        CHECK(std::isfinite(r.omega0.value));
        CHECK(r.degree == 5);
        // omega0 = 2 * degree * u0 * support radius, by construction
        CHECK(r.omega0.value ==
              doctest::Approx(2.0 * r.degree * r.u0 * r.support_radius).epsilon(1e-12));
        if (prev >= 0.0) CHECK(r.omega0.value >= prev);  // smaller eps -> larger omega0
        prev = r.omega0.value;
    }

    // the signature admits no geometric data; recomputation is bit-stable
    p.epsilon = 0.01;
    const PscResult a = psc_vanishing_scale(p);
    const PscResult b = psc_vanishing_scale(p);
    CHECK(a.omega0.value == b.omega0.value);

    PscParams bad = p;
    bad.epsilon = 0.2;
    CHECK_THROWS_AS(psc_vanishing_scale(bad), std::invalid_argument);
    bad = p;
    bad.cap_n = 3.0;
    CHECK_THROWS_AS(psc_vanishing_scale(bad), std::invalid_argument);
}

TEST_CASE("vanishing scale rechecks at explicit spectral gaps") {
    PscParams p;
    p.kernel = NormalizerKernel::h1();
    p.odd = false;
    p.epsilon = 0.01;
    const PscResult r = psc_vanishing_scale(p);
    for (double c : {0.5, 1.0, 2.0}) CHECK(psc_recheck(p, r, c));
}

TEST_CASE("odd vanishing scale uses the minimal admissible degree") {
    PscParams p;
    p.kernel = NormalizerKernel::h2();
    p.odd = true;
    p.epsilon = 0.04;
    const PscResult r = psc_vanishing_scale(p);
    CHECK(r.degree == 34);  // frozen oracle value of the minimal degree
    CHECK(std::isfinite(r.omega0.value));
    CHECK(psc_recheck(p, r, 1.0));
}
