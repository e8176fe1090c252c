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

#include <random>

#include "core/envelope.hpp"

using namespace bandcert;

namespace {
Interval point_expr(const NormalizerKernel& k, double t) {
    return envelope_b_expr(k.eval(t));
}
}  // namespace

TEST_CASE("band envelope reference values") {
    const NormalizerKernel h1 = NormalizerKernel::h1();

    // sup at s = 0 is 3, attained at the sign change
    const CertifiedValue b0 = b_envelope({h1, 0.0, 0.0, 64.0, 1e-7});
    CHECK(b0.value >= 3.0);
    CHECK(b0.value <= 3.0 + 1e-6);

    // the quoted even-case budget point
    const CertifiedValue bs = b_envelope({h1, 0.7888, 0.0, 64.0, 1e-9});
    CHECK(bs.value <= 1.4108e-5);
    CHECK(bs.value == doctest::Approx(1.407875e-5).epsilon(2e-3));

    // far out everything collapses
    const CertifiedValue bfar = b_envelope({h1, 8.0, 0.0, 64.0, 1e-12});
    CHECK(bfar.value <= 1e-7);
}

TEST_CASE("envelope grid_step validation") {
    EnvelopeQuery q;
    q.kernel = NormalizerKernel::h1();
    q.s = 0.5;
    q.grid_step = 10.0;  // hopelessly coarse for tol 1e-9
    q.tol = 1e-9;
    CHECK_THROWS_AS(b_envelope(q), std::invalid_argument);
}

TEST_CASE("idempotent norm bounds: h1") {
    const PNormBounds pn = p_norm_bounds(NormalizerKernel::h1(), 1e-7);
    CHECK(pn.row_sum.value > 1.0);
    CHECK(pn.row_sum.value < 1.29);
    CHECK(pn.row_sum.value == doctest::Approx(1.282083436936).epsilon(1e-6));
    // diagnostics frozen from the dense-grid oracle
    CHECK(pn.display_variant.value == doctest::Approx(1.35075800830).epsilon(1e-6));
    CHECK(pn.pointwise_opnorm.value == doctest::Approx(1.04015383468).epsilon(1e-5));
    // the pointwise operator norm can never exceed the row-sum bound
    CHECK(pn.pointwise_opnorm.value <= pn.row_sum.value + 1e-9);
}

TEST_CASE("idempotent norm bounds: degenerate sign and overshooting kernels") {
    // with an exact sign, every row collapses to the unit diagonal term
    CHECK(idempotent_rowsum_expr(Interval(1.0)).hi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(idempotent_rowsum_expr(Interval(-1.0)).hi == doctest::Approx(1.0).epsilon(1e-12));

    const CertifiedValue h2n = p_norm_bound(NormalizerKernel::h2(), 1e-6);
    CHECK(h2n.value >= 1.0);
    CHECK(std::isfinite(h2n.value));
}

TEST_CASE("threshold solving") {
    const NormalizerKernel h1 = NormalizerKernel::h1();

    const CertifiedValue s1 = threshold_solve(h1, 1.4108e-5);
    CHECK(s1.value <= 0.7888);
    CHECK(s1.value >= 0.780);

    // a target the envelope satisfies essentially everywhere
    const CertifiedValue s3 = threshold_solve(h1, 3.0);
    CHECK(s3.value <= 1e-4);

    CHECK_THROWS_AS(threshold_solve(h1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(threshold_solve(h1, -1.0), std::invalid_argument);
    // unreachable below any cutoff
    CHECK_THROWS_AS(threshold_solve(h1, 1e-300), CertificationError);
}

TEST_CASE("threshold consistency") {
    const NormalizerKernel h1 = NormalizerKernel::h1();
    for (double target : {1.4108e-5, 1e-3, 0.1}) {
        const CertifiedValue s = threshold_solve(h1, target);
        for (double delta : {0.0, 0.01, 0.1}) {
            const CertifiedValue b = sup_envelope(h1, envelope_b_expr, s.value + delta, 64.0,
                                                  1e-3 * target);
            CHECK(b.value <= target * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("monotonicity of the envelope in s") {
    const NormalizerKernel h1 = NormalizerKernel::h1();
    double prev = 1e300, prev_rad = 0.0;
    for (double s : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.5}) {
        const CertifiedValue b = b_envelope({h1, s, 0.0, 64.0, 1e-9});
        CHECK(prev + prev_rad >= b.value - b.radius);
        prev = b.value;
        prev_rad = b.radius;
    }
}

TEST_CASE("oracle dominance: pointwise values never beat the certified sup") {
    const NormalizerKernel h1 = NormalizerKernel::h1();
    std::mt19937_64 rng(11);
    for (double s : {0.3, 0.7888}) {
        const CertifiedValue b = b_envelope({h1, s, 0.0, 64.0, 1e-9});
        std::uniform_real_distribution<double> td(s, 40.0);
        for (int i = 0; i < 100; ++i) {
            double t = td(rng);
            if (i % 2) t = -t;  // the envelope is even in t
            CHECK(point_expr(h1, std::fabs(t)).lo <= b.value + b.radius);
        }
    }
}

TEST_CASE("certification soundness under refinement") {
    const NormalizerKernel h1 = NormalizerKernel::h1();
    const CertifiedValue coarse = b_envelope({h1, 0.5, 0.0, 64.0, 1e-6});
    const CertifiedValue fine = b_envelope({h1, 0.5, 0.0, 64.0, 5e-7});
    CHECK(fine.value <= coarse.value + coarse.radius);
    CHECK(coarse.value <= fine.value + fine.radius + 1e-6);
}
