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

// Exercises the shared-library surface exactly as an external client would.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "bandcert.h"

TEST_CASE("versioning and error text") {
    CHECK(std::strlen(bc_version()) > 0);
    CHECK(bc_kernel_create(nullptr) == nullptr);
    CHECK(bc_kernel_create("garbage") == nullptr);
    CHECK(std::strlen(bc_last_error()) > 0);
}

TEST_CASE("kernel handles") {
    bc_kernel* k = bc_kernel_create("h1");
    REQUIRE(k != nullptr);

    double v = 1.0, r = 1.0;
    CHECK(bc_kernel_eval(k, 0.0, &v, &r) == BC_OK);
    CHECK(v == 0.0);
    CHECK(r <= 1e-12);

    CHECK(bc_kernel_eval(k, NAN, &v, &r) == BC_EDOMAIN);

    double bound = 0.0;
    CHECK(bc_kernel_tail_majorant(k, 0.0, &bound) == BC_EDOMAIN);
    CHECK(bc_kernel_tail_majorant(k, 2.0, &bound) == BC_OK);
    CHECK(bound > 0.0);

    double bw = 0.0;
    CHECK(bc_kernel_bandwidth(k, &bw) == BC_OK);
    CHECK(bw == doctest::Approx(8.0));
    bc_kernel_free(k);
}

TEST_CASE("quadrature through the C surface") {
    double v = 0, r = 0;
    CHECK(bc_sinc_total_integral(3, &v, &r) == BC_OK);
    CHECK(std::fabs(v - 0.75) <= r);
    CHECK(r <= 1e-9);
    CHECK(bc_sinc_total_integral(2, &v, &r) == BC_EINVAL);
    CHECK(bc_sinc_antiderivative(8, 0.0, &v, &r) == BC_OK);
    CHECK(std::fabs(v - 151.0 / 630.0) <= r);
}

TEST_CASE("envelope and threshold through the C surface") {
    bc_kernel* k = bc_kernel_create("h1");
    REQUIRE(k != nullptr);
    double b = 0, gap = 0;
    CHECK(bc_envelope_b(k, 0.7888, 1e-9, &b, &gap) == BC_OK);
    CHECK(b <= 1.4108e-5);
    double s = 0, sgap = 0;
    CHECK(bc_threshold_solve(k, 1.4108e-5, &s, &sgap) == BC_OK);
    CHECK(s <= 0.7888);
    CHECK(bc_threshold_solve(k, -1.0, &s, &sgap) == BC_EINVAL);
    bc_kernel_free(k);
}

TEST_CASE("chain reports through the C surface") {
    bc_kernel* k = bc_kernel_create("h1");
    REQUIRE(k != nullptr);
    bc_report* rep = nullptr;
    REQUIRE(bc_even_chain(k, 6, 1.0, 700.0, &rep) == BC_OK);
    REQUIRE(rep != nullptr);
    CHECK(bc_report_success(rep) == 1);
    CHECK(bc_report_field_count(rep) > 5);

    double eps = 0, r = 0;
    bc_side side;
    CHECK(bc_report_field(rep, "epsilon_star", &eps, &r, &side) == BC_OK);
    CHECK(eps >= 1.40e-5);
    CHECK(eps <= 1.42e-5);
    CHECK(side == BC_LOWER_BOUND);
    CHECK(bc_report_field(rep, "no_such_field", &eps, &r, &side) == BC_EINVAL);

    char* text = bc_report_render(rep);
    REQUIRE(text != nullptr);
    CHECK(std::string(text).find("[machine]") != std::string::npos);
    CHECK(std::string(text).find("band_constant_over_pi") != std::string::npos);
    bc_string_free(text);
    bc_report_free(rep);

    // degenerate geometry propagates as EINVAL
    rep = nullptr;
    CHECK(bc_even_chain(k, 1, 1.0, 700.0, &rep) == BC_EINVAL);
    bc_kernel_free(k);
}

TEST_CASE("vanishing scale through the C surface") {
    bc_kernel* k = bc_kernel_create("h1");
    REQUIRE(k != nullptr);
    double omega0 = 0, u0 = 0;
    int deg = 0;
    CHECK(bc_psc_scale(k, 0, 0.01, 7.0, &omega0, &u0, &deg) == BC_OK);
    CHECK(std::isfinite(omega0));
    CHECK(deg == 5);
    CHECK(bc_psc_scale(k, 0, 0.5, 7.0, &omega0, &u0, &deg) == BC_EINVAL);
    bc_kernel_free(k);

    int m = 0;
    CHECK(bc_minimal_degree(0.04, -2.0, 2.0, &m) == BC_OK);
    CHECK(m == 34);
}
