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

#include "bandcert.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "../core/chains.hpp"
#include "../core/envelope.hpp"
#include "../core/optimizer.hpp"
#include "../core/oracle.hpp"
#include "../core/quasi_exp.hpp"
#include "../core/report.hpp"
#include "../core/sinc_kernels.hpp"

using namespace bandcert;

struct bc_kernel {
    NormalizerKernel impl;
};

struct bc_report {
    Report impl;
};

namespace {

thread_local std::string t_last_error;

bc_status fail(bc_status code, const char* what) {
    t_last_error = what ? what : "";
    return code;
}

template <typename Fn>
bc_status guarded(Fn&& fn) {
    try {
        fn();
        return BC_OK;
    } catch (const CertificationError& e) {
        return fail(BC_ECERT, e.what());
    } catch (const std::domain_error& e) {
        return fail(BC_EDOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(BC_EINVAL, e.what());
    } catch (const std::exception& e) {
        return fail(BC_EINTERNAL, e.what());
    }
}

bc_side to_c_side(Side s) {
    switch (s) {
        case Side::UpperBound: return BC_UPPER_BOUND;
        case Side::LowerBound: return BC_LOWER_BOUND;
        default: return BC_TWO_SIDED;
    }
}

Report oracle_report(const OracleSuiteResult& r) {
    Report rep;
    rep.command = "verify-oracle";
    rep.success = r.all_passed();
    auto count = [&](const std::string& name, const std::string& label, int trials, int fails) {
        rep.add_field(name + "_trials", label + " (trials)", CertifiedValue(trials, 0));
        rep.add_field(name + "_failures", label + " (failures)", CertifiedValue(fails, 0));
    };
    count("holo_idempotent", "holomorphic regularization suite", r.idempotent_trials,
          r.idempotent_failures);
    rep.add_field("holo_worst_residual", "worst ||f0^2 - f0||",
                  CertifiedValue::upper(r.worst_idem_residual));
    rep.add_field("holo_rank_mismatches", "rank disagreements with the spectral count",
                  CertifiedValue(r.rank_mismatches, 0));
    count("perturbation", "perturbation-stability suite", r.perturb_trials, r.perturb_failures);
    count("invertibility", "quasiinvertible nonsingularity suite", r.invertible_trials,
          r.invertible_failures);
    count("gap_estimate", "finite-propagation gap estimates", r.gap_trials, r.gap_failures);
    rep.add_field("gap_worst_slack", "worst lhs - rhs over the gap trials",
                  CertifiedValue(r.worst_gap_slack, 0));
    for (size_t i = 0; i < r.demo_norms.size(); ++i)
        rep.add_field("demo_norm_w" + std::to_string(r.demo_widths[i]),
                      "partitioned vanishing demo norm",
                      CertifiedValue(r.demo_norms[i], 0));
    rep.add_field("demo_negative_control", "demo norm below the propagation width",
                  CertifiedValue(r.demo_negative_control, 0));
    rep.add_field("demo_strictly_decreasing", "1 if the demo norms strictly decrease",
                  CertifiedValue(r.demo_strictly_decreasing ? 1 : 0, 0));
    rep.add_field("cross_product_norm", "masked cross products over separated regions",
                  CertifiedValue(r.cross_product_norm, 0));
    rep.add_field("masking_inequality_ok", "1 if masking never increases the defect",
                  CertifiedValue(r.masking_inequality_ok ? 1 : 0, 0));
    rep.verdict = r.all_passed() ? "all property suites passed" : "property suite FAILURES";
    return rep;
}

}  // namespace

extern "C" {

const char* bc_version(void) { return kVersion; }

const char* bc_status_name(bc_status s) {
    switch (s) {
        case BC_OK: return "ok";
        case BC_EINVAL: return "invalid argument";
        case BC_EDOMAIN: return "domain error";
        case BC_ECERT: return "certification failure";
        case BC_EINTERNAL: return "internal error";
    }
    return "?";
}

const char* bc_last_error(void) { return t_last_error.c_str(); }

bc_kernel* bc_kernel_create(const char* spec) {
    if (!spec) {
        fail(BC_EINVAL, "null kernel spec");
        return nullptr;
    }
    bc_kernel* k = nullptr;
    const bc_status st = guarded([&] { k = new bc_kernel{NormalizerKernel::parse(spec)}; });
    return st == BC_OK ? k : nullptr;
}

void bc_kernel_free(bc_kernel* k) { delete k; }

bc_status bc_kernel_eval(const bc_kernel* k, double t, double* value, double* radius) {
    if (!k || !value) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const CertifiedValue v = k->impl.eval_certified(t);
        *value = v.value;
        if (radius) *radius = v.radius;
    });
}

bc_status bc_kernel_tail_majorant(const bc_kernel* k, double big_t, double* bound) {
    if (!k || !bound) return fail(BC_EINVAL, "null argument");
    return guarded([&] { *bound = k->impl.tail_majorant(big_t); });
}

bc_status bc_kernel_derivative_bound(const bc_kernel* k, double* bound) {
    if (!k || !bound) return fail(BC_EINVAL, "null argument");
    return guarded([&] { *bound = k->impl.derivative_bound().value; });
}

bc_status bc_kernel_sup_abs(const bc_kernel* k, double* bound, double* gap) {
    if (!k || !bound) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const CertifiedValue v = k->impl.sup_abs();
        *bound = v.value;
        if (gap) *gap = v.radius;
    });
}

bc_status bc_kernel_bandwidth(const bc_kernel* k, double* radius_over_pi) {
    if (!k || !radius_over_pi) return fail(BC_EINVAL, "null argument");
    return guarded([&] { *radius_over_pi = k->impl.bandwidth_pi(); });
}

bc_status bc_sinc_antiderivative(int k, double t, double* value, double* radius) {
    if (!value) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const CertifiedValue v = sinc_power_antiderivative(k, t);
        *value = v.value;
        if (radius) *radius = v.radius;
    });
}

bc_status bc_sinc_total_integral(int k, double* value, double* radius) {
    if (!value) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const CertifiedValue v = CertifiedValue::from_interval(
            SincPowerTable::get(k).total_integral());
        *value = v.value;
        if (radius) *radius = v.radius;
    });
}

bc_status bc_envelope_b(const bc_kernel* k, double s, double tol, double* bound, double* gap) {
    if (!k || !bound) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        EnvelopeQuery q;
        q.kernel = k->impl;
        q.s = s;
        q.tol = tol > 0 ? tol : 1e-9;
        const CertifiedValue v = b_envelope(q);
        *bound = v.value;
        if (gap) *gap = v.radius;
    });
}

bc_status bc_p_norm_bound(const bc_kernel* k, double tol, double* bound, double* gap) {
    if (!k || !bound) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const CertifiedValue v = p_norm_bound(k->impl, tol > 0 ? tol : 1e-9);
        *bound = v.value;
        if (gap) *gap = v.radius;
    });
}

bc_status bc_threshold_solve(const bc_kernel* k, double target, double* s_star, double* gap) {
    if (!k || !s_star) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const CertifiedValue v = threshold_solve(k->impl, target);
        *s_star = v.value;
        if (gap) *gap = v.radius;
    });
}

bc_status bc_even_chain(const bc_kernel* k, int dim, double sigma, double width,
                        bc_report** out) {
    if (!k || !out) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const ChainReport c = even_chain({dim, sigma, width}, k->impl);
        *out = new bc_report{report_from_chain(c, "even-constant")};
    });
}

bc_status bc_odd_chain(const bc_kernel* k, int dim, double sigma, double width, int degree,
                       bc_report** out) {
    if (!k || !out) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const ChainReport c = odd_chain({dim, sigma, width}, k->impl, degree,
                                        BudgetAllocation::odd_default(degree));
        *out = new bc_report{report_from_chain(c, "odd-constant")};
    });
}

bc_status bc_psc_scale(const bc_kernel* k, int odd_parity, double epsilon, double cap_n,
                       double* omega0, double* u0, int* degree_out) {
    if (!k || !omega0) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        PscParams p;
        p.epsilon = epsilon;
        p.cap_n = cap_n;
        p.kernel = k->impl;
        p.odd = odd_parity != 0;
        const PscResult r = psc_vanishing_scale(p);
        *omega0 = r.omega0.value;
        if (u0) *u0 = r.u0;
        if (degree_out) *degree_out = r.degree;
    });
}

bc_status bc_minimal_degree(double epsilon, double a, double b, int* m_out) {
    if (!m_out) return fail(BC_EINVAL, "null argument");
    return guarded([&] { *m_out = minimal_m(epsilon, a, b); });
}

bc_status bc_optimize(const char* family, int odd_parity, int iters, uint64_t seed,
                      const char* trace_path, bc_report** out) {
    if (!family || !out) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const KernelFamily f = KernelFamily::parse(family);
        const OptimizeResult r =
            minimize_constant(f, odd_parity != 0, iters > 0 ? iters : 200, seed);
        if (trace_path && *trace_path) {
            std::ofstream os(trace_path);
            if (!os) throw std::invalid_argument(std::string("cannot open trace path: ") +
                                                 trace_path);
            write_trace(r.trace, os);
        }
        Report rep = report_from_chain(r.best, "optimize");
        rep.add_info("family", f.describe());
        rep.add_info("evaluations", std::to_string(r.evaluations));
        rep.add_field("search_evaluations", "number of certified candidate evaluations",
                      CertifiedValue(r.evaluations, 0));
        *out = new bc_report{std::move(rep)};
    });
}

bc_status bc_oracle_suite(uint64_t seed, int idem_trials, int perturb_trials, int gap_trials,
                          bc_report** out) {
    if (!out) return fail(BC_EINVAL, "null argument");
    return guarded([&] {
        const OracleSuiteResult r =
            run_oracle_suites(seed, idem_trials > 0 ? idem_trials : 1000,
                              perturb_trials > 0 ? perturb_trials : 1000,
                              gap_trials > 0 ? gap_trials : 200);
        *out = new bc_report{oracle_report(r)};
    });
}

int bc_report_field_count(const bc_report* r) {
    return r ? static_cast<int>(r->impl.fields.size()) : 0;
}

const char* bc_report_field_name(const bc_report* r, int i) {
    if (!r || i < 0 || i >= static_cast<int>(r->impl.fields.size())) return nullptr;
    return r->impl.fields[i].name.c_str();
}

const char* bc_report_field_label(const bc_report* r, int i) {
    if (!r || i < 0 || i >= static_cast<int>(r->impl.fields.size())) return nullptr;
    return r->impl.fields[i].label.c_str();
}

bc_status bc_report_field(const bc_report* r, const char* name, double* value, double* radius,
                          bc_side* side) {
    if (!r || !name) return fail(BC_EINVAL, "null argument");
    const NamedBound* nb = r->impl.find(name);
    if (!nb) return fail(BC_EINVAL, "no such report field");
    if (value) *value = nb->value.value;
    if (radius) *radius = nb->value.radius;
    if (side) *side = to_c_side(nb->value.side);
    return BC_OK;
}

int bc_report_success(const bc_report* r) { return r && r->impl.success ? 1 : 0; }

char* bc_report_render(const bc_report* r) {
    if (!r) return nullptr;
    const std::string s = r->impl.render();
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void bc_report_free(bc_report* r) { delete r; }

void bc_string_free(char* s) { std::free(s); }

}  // extern "C"
