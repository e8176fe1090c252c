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

#include "core/oracle.hpp"
#include "core/quasi_exp.hpp"

using namespace bandcert;

TEST_CASE("holomorphic calculus fixes exact idempotents") {
    QuasiElement e;
    e.epsilon = 0.05;
    e.cap_n = 7.0;
    e.matrix = CMatrix::Zero(2, 2);
    e.matrix(0, 0) = 1.0;
    CHECK(op_norm(holo_idempotent(e) - e.matrix) <= 1e-14);

    // scalar 0.04 is admissible (defect 0.0384) and regularizes to 0
    QuasiElement s;
    s.epsilon = 0.05;
    s.cap_n = 7.0;
    s.matrix = CMatrix::Constant(1, 1, 0.04);
    CHECK(s.idempotent_defect() == doctest::Approx(0.0384));
    CHECK(std::abs(holo_idempotent(s)(0, 0)) <= 1e-14);
}

TEST_CASE("holomorphic calculus rejects escaped spectra") {
    QuasiElement e;
    e.epsilon = 0.01;
    e.cap_n = 7.0;
    e.matrix = CMatrix::Constant(1, 1, 0.5);
    CHECK_THROWS_AS(holo_idempotent(e), std::invalid_argument);
}

TEST_CASE("random quasiidempotents regularize within the stated bounds") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const QuasiElement e = random_quasi_idempotent(rng, 8, 0.03, 7.0);
        const CMatrix f0 = holo_idempotent(e);
        CHECK(op_norm(f0 * f0 - f0) <= 1e-10);
        CHECK(op_norm(f0) < holo_norm_bound(e.epsilon, e.cap_n));
        CHECK(op_norm(f0 - e.matrix) < holo_distance_bound(e.epsilon, e.cap_n));

        // rank equals the exact spectral count
        Eigen::ComplexEigenSolver<CMatrix> es(e.matrix, false);
        int count = 0;
        for (int i = 0; i < 8; ++i)
            if (std::abs(es.eigenvalues()(i) - 1.0) < std::sqrt(e.epsilon)) ++count;
        CHECK(std::lround(f0.trace().real()) == count);
    }
}

TEST_CASE("perturbation lemma: trivial, vanishing, and random cases") {
    std::mt19937_64 rng(55);
    const QuasiElement e = random_quasi_idempotent(rng, 6, 0.04, 7.0);

    SUBCASE("f = e") {
        const PerturbVerdict v = perturb_check(e, e.matrix);
        CHECK(v.same_class);
        CHECK(v.path_in_class);
    }

    SUBCASE("zero element absorbs small perturbations") {
        QuasiElement zero;
        zero.epsilon = 0.04;
        zero.cap_n = 7.0;
        zero.matrix = CMatrix::Zero(4, 4);
        CMatrix f = CMatrix::Random(4, 4);
        f *= (0.9 * zero.epsilon / (2.0 * zero.cap_n + 1.0)) / op_norm(f);
        const PerturbVerdict v = perturb_check(zero, f);
        CHECK(v.same_class);
        CHECK(v.path_in_class);
    }

    SUBCASE("side-condition violations are rejected, not falsified") {
        CMatrix far = e.matrix;
        far(0, 0) += 5.0;
        CHECK_THROWS_AS(perturb_check(e, far), std::invalid_argument);
    }

    SUBCASE("random admissible perturbations stay in class") {
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            const QuasiElement q = random_quasi_idempotent(rng, 6, 0.045, 7.0);
            const double radius =
                (q.epsilon - q.idempotent_defect()) / (2.0 * q.cap_n + 1.0);
            CMatrix noise(6, 6);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    noise(i, j) = std::complex<double>(gauss(rng), gauss(rng));
            const CMatrix f = q.matrix + noise * (0.9 * radius / op_norm(noise));
            const PerturbVerdict v = perturb_check(q, f);
            CHECK(v.same_class);
            CHECK(v.path_in_class);
        }
    }
}

TEST_CASE("every quasiinvertible is invertible") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 200; ++t) {
        const QuasiElement u = random_quasi_invertible(rng, 6, 0.04, 7.0);
        Eigen::JacobiSVD<CMatrix> svd(u.matrix);
        const double smin = svd.singularValues()(5);
        CHECK(smin > 0.0);
        CHECK(smin >= (1.0 - u.epsilon) / op_norm(u.witness) - 1e-12);
    }
}

TEST_CASE("polynomial quasi-inverses on Hermitian arguments") {
    // ||g_m(S) g_m(-S) - 1|| is controlled by the scalar defect over the
    // spectral range
    const double bound = sup_defect(17, -0.05, 1.05, 1e-3).value;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ev(-0.05, 1.05);
    const ComplexPolynomial g = build_g(17);
    for (int t = 0; t < 100; ++t) {
        Eigen::VectorXd lam(6);
        for (int i = 0; i < 6; ++i) lam(i) = ev(rng);
        CMatrix A = CMatrix::Random(6, 6);
        Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullU);
        const CMatrix V = svd.matrixU();  // unitary
        const CMatrix S = V * lam.asDiagonal() * V.adjoint();
        CMatrix u = CMatrix::Zero(6, 6), v = CMatrix::Zero(6, 6);
        const CMatrix id = CMatrix::Identity(6, 6);
        for (int k = g.degree(); k >= 0; --k) {
            u = u * S + g.coef[k] * id;
            v = v * (-S) + g.coef[k] * id;
        }
        CHECK(op_norm(u * v - id) <= bound + 1e-9);
    }
}

TEST_CASE("gap norm estimate: constants and annihilating polynomials") {
    BandedModel m;
    m.matrix = CMatrix::Zero(16, 16);
    m.band = 1;
    for (int i = 0; i < 16; ++i) m.matrix(i, i) = (i % 2) ? 2.0 : -2.0;
    m.gap_lo = 0;
    m.gap_hi = 16;
    m.certify_gap();
    CHECK(m.gap == doctest::Approx(2.0));

    SUBCASE("constant polynomial") {
        const GapEstimate ge = gap_norm_estimate(m, {0.7}, 4, 12);
        CHECK(ge.lhs == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(ge.rhs == doctest::Approx(0.7).epsilon(1e-9));
    }
    SUBCASE("polynomial vanishing on the spectrum") {
        const GapEstimate ge = gap_norm_estimate(m, {-4.0, 0.0, 1.0}, 4, 12);
        CHECK(ge.lhs <= 1e-12);
        CHECK(ge.lhs <= ge.rhs + 1e-9);
    }
    SUBCASE("distance precondition enforced") {
        CHECK_THROWS_AS(gap_norm_estimate(m, {0, 0, 0, 0, 0, 0, 1.0}, 2, 12),
                        std::invalid_argument);
    }
}

TEST_CASE("gap norm estimate on random planted-gap models") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int done = 0;
    while (done < 60) {
        const int n = 40, b = 1 + (done % 2), deg = done % 7;
        BandedModel m;
        m.matrix = CMatrix::Zero(n, n);
        m.band = b;
        for (int i = 0; i < n; ++i) {
            m.matrix(i, i) = 0.8 * ((i % 2) ? 1.0 : -1.0) + 0.05 * unif(rng);
            for (int j = i + 1; j <= std::min(n - 1, i + b); ++j) {
                const std::complex<double> h(0.4 * unif(rng), 0.4 * unif(rng));
                m.matrix(i, j) = h;
                m.matrix(j, i) = std::conj(h);
            }
        }
        m.gap_lo = 0;
        m.gap_hi = n;
        m.certify_gap();
        std::vector<double> poly(deg + 1);
        for (auto& c : poly) c = unif(rng);
        const int reach = deg * b;
        if (reach + 1 >= n - reach - 1) continue;
        const GapEstimate ge = gap_norm_estimate(m, poly, reach + 1, n - reach - 1);
        CHECK(ge.lhs <= ge.rhs + 1e-9);
        ++done;
    }
}

TEST_CASE("matrix exponential sanity") {
    CHECK(op_norm(matrix_exp(CMatrix::Zero(4, 4)) - CMatrix::Identity(4, 4)) <= 1e-15);
    // exp(2 pi i P) = 1 for an exact projection
    CMatrix P = CMatrix::Zero(3, 3);
    P(0, 0) = 1.0;
    P(2, 2) = 1.0;
    const CMatrix E = matrix_exp(std::complex<double>(0.0, 2.0 * 3.14159265358979323846) * P);
    CHECK(op_norm(E - CMatrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("partitioned vanishing demo decays in the window width") {
    PartitionDemoParams p;
    std::vector<double> norms;
    for (int w : {4, 8, 16, 32}) {
        p.width = w;
        norms.push_back(partitioned_vanishing_demo(p));
    }
    for (size_t i = 0; i + 1 < norms.size(); ++i) CHECK(norms[i + 1] < norms[i]);
    // negative control: window below the proxy propagation
    p.width = 2;
    const double neg = partitioned_vanishing_demo(p);
    CHECK(neg > norms[0]);
    CHECK(neg > 0.5);
}

TEST_CASE("masked grading structure") {
    for (int seed : {1, 2, 3}) {
        const PartitionStructure ps = partition_structure_check(40, seed);
        CHECK(ps.cross_product_norm == 0.0);  // exact zero beyond the propagation
        CHECK(ps.masked_defect <= ps.full_defect + 1e-12);
    }
}
