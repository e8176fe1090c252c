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
#include <random>

#include "core/sinc_kernels.hpp"

using namespace bandcert;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("total integrals carry the normalization constants") {
    const Interval i3 = SincPowerTable::get(3).total_integral();
    CHECK(i3.contains(0.75));
    CHECK(i3.width() <= 2e-9);

    const Interval i8 = SincPowerTable::get(8).total_integral();
    CHECK(i8.contains(151.0 / 315.0));
    CHECK(i8.width() <= 2e-9);
}

TEST_CASE("sinc power antiderivative reference points") {
    // F_3 converges to the full integral 3/4
    const CertifiedValue far = sinc_power_antiderivative(3, 4000.0);
    CHECK(std::fabs(far.value - 0.75) <=
          far.radius + SincPowerTable::get(3).tail_integral_majorant(4000.0));

    // even integrand: F_8(0) is half the total
    const CertifiedValue half = sinc_power_antiderivative(8, 0.0);
    CHECK(half.interval().contains(151.0 / 630.0));

    const CertifiedValue all8 = sinc_power_antiderivative(8, 3000.0);
    CHECK(std::fabs(all8.value - 151.0 / 315.0) <= 1e-9);

    CHECK_THROWS_AS(sinc_power_antiderivative(8, std::nan("")), std::domain_error);
    CHECK_THROWS_AS((void)SincPowerTable::get(2), std::invalid_argument);
}

TEST_CASE("monotone quadrature for even exponents") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> td(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        double t1 = td(rng), t2 = td(rng);
        if (t1 > t2) std::swap(t1, t2);
        const CertifiedValue f1 = sinc_power_antiderivative(8, t1);
        const CertifiedValue f2 = sinc_power_antiderivative(8, t2);
        CHECK(f1.value <= f2.value + f1.radius + f2.radius);
    }
}

TEST_CASE("kernel evaluation reference values") {
    const NormalizerKernel h1 = NormalizerKernel::h1();
    const NormalizerKernel h2 = NormalizerKernel::h2();

    CHECK(h1.eval(0.0).contains(0.0));
    CHECK(h1.eval(0.0).width() <= 1e-12);

    // frozen from the adaptive-quadrature oracle
    const Interval at1 = h1.eval(1.0);
    CHECK(at1.lo > 0.99);
    CHECK(at1.hi < 1.01);
    CHECK(at1.contains(0.9999942562330388));

    const Interval h2far = h2.eval(50.0);
    CHECK(std::fabs(h2far.mid() - 1.0) <= h2.tail_majorant(50.0) + h2far.rad());

    CHECK(h1.eval(0.7888).contains(0.9999929607974708));
    CHECK_THROWS_AS(h1.eval(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("oddness") {
    const NormalizerKernel h2 = NormalizerKernel::h2();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> td(-30.0, 30.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = td(rng);
        const Interval a = h2.eval(t), b = h2.eval(-t);
        CHECK(std::fabs(a.mid() + b.mid()) <= 2.0 * (a.rad() + b.rad()) + 1e-300);
    }
}

TEST_CASE("normalization identity holds for every kernel") {
    CHECK(NormalizerKernel::h1().normalization_check());
    CHECK(NormalizerKernel::h2().normalization_check());
    CHECK(NormalizerKernel::sinc_power(5).normalization_check());
    CHECK(NormalizerKernel::parse("mix:k=8,w=0.5;k=4,w=0.5,a=1.5").normalization_check());
}

TEST_CASE("tail majorants") {
    const NormalizerKernel h1 = NormalizerKernel::h1();
    const NormalizerKernel h2 = NormalizerKernel::h2();

    const double closed_form = 2.0 * (315.0 / 151.0) / (7.0 * std::pow(kPi, 8) * 128.0);
    CHECK(h1.tail_majorant(2.0) <= closed_form * (1.0 + 1e-9));
    CHECK(h1.tail_majorant(1e9) <= 1e-20);
    CHECK_THROWS_AS(h1.tail_majorant(0.0), std::domain_error);

    // the majorant really does dominate |h2(5) - 1|
    const Interval v = h2.eval(5.0);
    CHECK(std::fabs(v.mid() - 1.0) <= h2.tail_majorant(5.0) + v.rad());
    CHECK(v.contains(1.0001389192247263));  // oracle value

    SUBCASE("tail consistency at several cutoffs") {
        for (double T : {1.0, 2.0, 4.0, 8.0}) {
            const Interval a = h1.eval(T);
            CHECK(std::fabs(a.mid() - 1.0) <= h1.tail_majorant(T) + a.rad());
            const Interval b = h2.eval(T);
            CHECK(std::fabs(b.mid() - 1.0) <= h2.tail_majorant(T) + b.rad());
        }
    }
}

TEST_CASE("derivative bounds are Bernstein-consistent") {
    for (const NormalizerKernel& k : {NormalizerKernel::h1(), NormalizerKernel::h2()}) {
        const CertifiedValue d = k.derivative_bound();
        const CertifiedValue sup = k.sup_abs();
        CHECK(d.value <= k.bandwidth_pi() * kPi * sup.value * (1.0 + 1e-12));

        // finite differences never exceed the certified bound
        double fd_max = 0.0;
        const double h = 1e-5;
        for (int i = 0; i <= 400; ++i) {
            const double t = -4.0 + i * 0.02;
            fd_max = std::max(
                fd_max, std::fabs((k.eval(t + h).mid() - k.eval(t - h).mid()) / (2.0 * h)));
        }
        CHECK(fd_max <= d.value * (1.0 + 1e-6));
    }
}

TEST_CASE("overshoot boundedness") {
    const CertifiedValue sup2 = NormalizerKernel::h2().sup_abs();
    CHECK(sup2.value <= 2.0);
    CHECK(sup2.value == doctest::Approx(1.0097898406).epsilon(1e-6));

    // h1 is monotone: no overshoot at all
    const CertifiedValue sup1 = NormalizerKernel::h1().sup_abs();
    CHECK(sup1.value <= 1.0 + 1e-9);
}

TEST_CASE("kernel parsing round trips") {
    CHECK(NormalizerKernel::parse("h1").describe() == "h1");
    CHECK(NormalizerKernel::parse("h2").describe() == "h2");
    CHECK(NormalizerKernel::parse("sinc:k=12").describe() == "sinc:k=12");
    const NormalizerKernel mixed = NormalizerKernel::parse("mix:k=8,w=0.7;k=3,w=0.3");
    CHECK(mixed.components().size() == 2);
    CHECK(mixed.components()[0].weight == doctest::Approx(0.7));
    const NormalizerKernel scaled = NormalizerKernel::parse("h1@scale=2.5");
    CHECK(scaled.scale() == doctest::Approx(2.5));
    CHECK(scaled.bandwidth_pi() == doctest::Approx(20.0));
    CHECK_THROWS_AS(NormalizerKernel::parse("nope"), std::invalid_argument);
    CHECK_THROWS_AS(NormalizerKernel::parse("mix:k=8,w=-1"), std::invalid_argument);
}

TEST_CASE("scaled kernels evaluate consistently") {
    const NormalizerKernel h1 = NormalizerKernel::h1();
    const NormalizerKernel s = h1.with_scale(3.0);
    for (double t : {0.1, 0.5, 1.7}) {
        const Interval a = s.eval(t), b = h1.eval(3.0 * t);
        CHECK(std::fabs(a.mid() - b.mid()) <= a.rad() + b.rad() + 1e-14);
    }
    CHECK(s.tail_majorant(1.0) == doctest::Approx(h1.tail_majorant(3.0)).epsilon(1e-12));
}
