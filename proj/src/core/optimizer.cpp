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

#include "optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

namespace bandcert {

KernelFamily KernelFamily::singleton(const NormalizerKernel& k) {
    KernelFamily f;
    f.kind = Kind::Singleton;
    f.fixed = k;
    return f;
}

KernelFamily KernelFamily::sinc_power_range(int klo, int khi) {
    KernelFamily f;
    f.kind = Kind::SincPower;
    f.k_min = klo;
    f.k_max = khi;
    return f;
}

KernelFamily KernelFamily::convex_combination(int klo, int khi, int n) {
    KernelFamily f;
    f.kind = Kind::ConvexCombination;
    f.k_min = klo;
    f.k_max = khi;
    f.components = n;
    return f;
}

KernelFamily KernelFamily::spline_spectrum(int klo, int khi, int n) {
    KernelFamily f;
    f.kind = Kind::SplineSpectrum;
    f.k_min = klo;
    f.k_max = khi;
    f.components = n;
    return f;
}

KernelFamily KernelFamily::parse(const std::string& spec) {
    auto range_of = [&](const std::string& body) {
        int lo = 3, hi = 16;
        if (auto p = body.find("k="); p != std::string::npos) {
            const std::string r = body.substr(p + 2);
            if (auto dash = r.find(".."); dash != std::string::npos) {
                lo = std::stoi(r.substr(0, dash));
                hi = std::stoi(r.substr(dash + 2));
            } else {
                lo = hi = std::stoi(r);
            }
        }
        return std::pair<int, int>(lo, hi);
    };
    std::string body = spec;
    if (body.rfind("family:", 0) == 0) body = body.substr(7);
    if (body.rfind("sinc-power", 0) == 0) {
        auto [lo, hi] = range_of(body);
        return sinc_power_range(lo, hi);
    }
    if (body.rfind("convex", 0) == 0) {
        auto [lo, hi] = range_of(body);
        return convex_combination(lo, hi);
    }
    if (body.rfind("spline", 0) == 0) {
        auto [lo, hi] = range_of(body);
        return spline_spectrum(lo, hi);
    }
    return singleton(NormalizerKernel::parse(spec));
}

std::string KernelFamily::describe() const {
    switch (kind) {
        case Kind::Singleton: return "singleton:" + fixed->describe();
        case Kind::SincPower:
            return "sinc-power:k=" + std::to_string(k_min) + ".." + std::to_string(k_max);
        case Kind::ConvexCombination:
            return "convex:k=" + std::to_string(k_min) + ".." + std::to_string(k_max);
        case Kind::SplineSpectrum:
            return "spline:k=" + std::to_string(k_min) + ".." + std::to_string(k_max);
    }
    return "?";
}

ChainReport evaluate_candidate(const NormalizerKernel& kernel, const BudgetAllocation& budget,
                               bool odd_parity) {
    budget.validate();  // infeasible budgets are rejected before any numerics
    const GeometryParams geom{2, 1.0, 1.0};
    return odd_parity ? odd_chain(geom, kernel, budget.degree, budget)
                      : even_chain(geom, kernel, budget);
}

namespace {

struct Candidate {
    NormalizerKernel kernel;
    BudgetAllocation budget;
};

// Largest feasible fourier fraction for a separation p/q at the given
// doubling and degree; exact rational arithmetic, reduced.
bool max_fourier_fraction(long long p, long long q, int doubling, int degree,
                          BudgetAllocation& out) {
    const long long room_num = std::min(p, q - 2 * p);
    if (room_num <= 0) return false;
    long long fn = room_num, fd = q * doubling * degree;
    const long long g = std::gcd(fn, fd);
    fn /= g;
    fd /= g;
    if (fd > 1024) return false;
    out.fourier_num = fn;
    out.fourier_den = fd;
    out.sep_num = p;
    out.sep_den = q;
    out.degree = degree;
    out.lemma_doubling = doubling;
    return true;
}

std::vector<std::pair<long long, long long>> separation_grid() {
    return {{1, 4}, {3, 10}, {1, 3}, {3, 8}, {2, 5}};
}

std::vector<Candidate> enumerate_candidates(const KernelFamily& family, bool odd_parity) {
    std::vector<Candidate> cands;
    const int doubling = odd_parity ? 2 : 1;

    auto push_kernel = [&](const NormalizerKernel& k, int degree) {
        for (auto [p, q] : separation_grid()) {
            BudgetAllocation b;
            if (max_fourier_fraction(p, q, doubling, degree, b)) cands.push_back({k, b});
        }
    };

    // the reference kernel and budget always participate
    if (odd_parity) {
        cands.push_back({NormalizerKernel::h2(), BudgetAllocation::odd_default(17)});
    } else {
        cands.push_back({NormalizerKernel::h1(), BudgetAllocation::even_default()});
    }

    switch (family.kind) {
        case KernelFamily::Kind::Singleton:
            if (odd_parity)
                push_kernel(*family.fixed, 17);
            else
                push_kernel(*family.fixed, 5);
            break;
        case KernelFamily::Kind::SincPower:
            for (int k = family.k_min; k <= family.k_max; ++k) {
                const NormalizerKernel ker = NormalizerKernel::sinc_power(k);
                if (odd_parity) {
                    for (int m : {15, 17, 19}) push_kernel(ker, m);
                } else {
                    push_kernel(ker, 5);
                }
            }
            break;
        case KernelFamily::Kind::ConvexCombination:
        case KernelFamily::Kind::SplineSpectrum: {
            // seed members; refined by coordinate descent afterwards
            const bool scaled = family.kind == KernelFamily::Kind::SplineSpectrum;
            for (int k1 = family.k_min; k1 <= family.k_max; k1 += 2) {
                for (int k2 = k1 + 1; k2 <= family.k_max; k2 += 3) {
                    for (double w : {0.25, 0.5, 0.75}) {
                        std::vector<KernelComponent> parts(2);
                        parts[0].exponent = k1;
                        parts[0].weight = w;
                        parts[0].rate = 1.0;
                        parts[1].exponent = k2;
                        parts[1].weight = 1.0 - w;
                        parts[1].rate = scaled ? double(k1) / double(k2) : 1.0;
                        push_kernel(NormalizerKernel::mixture(parts), odd_parity ? 17 : 5);
                    }
                }
            }
            break;
        }
    }
    return cands;
}

struct EvalOutcome {
    bool ok = false;
    double c = std::numeric_limits<double>::infinity();
    double radius = 0.0;
    std::string status;
    ChainReport report;
};

EvalOutcome evaluate_one(const Candidate& c, bool odd_parity) {
    EvalOutcome out;
    try {
        out.report = evaluate_candidate(c.kernel, c.budget, odd_parity);
        out.c = out.report.final_constant.value;
        out.radius = out.report.final_constant.radius;
        out.ok = true;
        out.status = "ok";
    } catch (const std::exception& e) {
        out.status = e.what();
    }
    return out;
}

std::vector<EvalOutcome> evaluate_batch(const std::vector<Candidate>& cands, bool odd_parity) {
    std::vector<EvalOutcome> results(cands.size());
    std::atomic<size_t> next{0};
    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= cands.size()) break;
            results[i] = evaluate_one(cands[i], odd_parity);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace

OptimizeResult minimize_constant(const KernelFamily& family, bool odd_parity,
                                 int iteration_budget, std::uint64_t seed) {
    if (iteration_budget < 1) throw std::invalid_argument("minimize_constant: empty budget");
    std::vector<Candidate> cands = enumerate_candidates(family, odd_parity);
    if (static_cast<int>(cands.size()) > iteration_budget)
        cands.resize(iteration_budget);

    OptimizeResult out;
    std::vector<EvalOutcome> results = evaluate_batch(cands, odd_parity);
    out.evaluations = static_cast<int>(cands.size());

    double best = std::numeric_limits<double>::infinity();
    int best_idx = -1;
    for (size_t i = 0; i < cands.size(); ++i) {
        TraceEntry te;
        te.index = static_cast<int>(i);
        te.kernel = cands[i].kernel.describe();
        te.budget = cands[i].budget.describe();
        te.c_over_pi = results[i].c;
        te.radius = results[i].radius;
        te.status = results[i].status;
        te.accepted = results[i].ok && results[i].c < best;
        if (te.accepted) {
            best = results[i].c;
            best_idx = static_cast<int>(i);
        }
        out.trace.push_back(te);
    }

    // Coordinate descent over weights and rates for the mixture kinds.
    const bool refine = family.kind == KernelFamily::Kind::ConvexCombination ||
                        family.kind == KernelFamily::Kind::SplineSpectrum;
    if (refine && best_idx >= 0) {
        std::mt19937_64 rng(seed);
        Candidate current = cands[best_idx];
        double step = 0.25;
        while (out.evaluations < iteration_budget && step > 1e-3) {
            std::vector<Candidate> proposals;
            const auto& comps = current.kernel.components();
            for (size_t ci = 0; ci < comps.size(); ++ci) {
                for (double sgn : {+1.0, -1.0}) {
                    std::vector<KernelComponent> parts = comps;
                    parts[ci].weight = std::max(0.02, parts[ci].weight * (1.0 + sgn * step));
                    proposals.push_back({NormalizerKernel::mixture(parts), current.budget});
                    if (family.kind == KernelFamily::Kind::SplineSpectrum) {
                        parts = comps;
                        parts[ci].rate = std::max(0.1, parts[ci].rate * (1.0 + sgn * step));
                        proposals.push_back({NormalizerKernel::mixture(parts), current.budget});
                    }
                }
            }
            std::shuffle(proposals.begin(), proposals.end(), rng);
            if (static_cast<int>(proposals.size()) > iteration_budget - out.evaluations)
                proposals.resize(iteration_budget - out.evaluations);
            if (proposals.empty()) break;
            std::vector<EvalOutcome> res = evaluate_batch(proposals, odd_parity);
            out.evaluations += static_cast<int>(proposals.size());
            bool improved = false;
            for (size_t i = 0; i < proposals.size(); ++i) {
                TraceEntry te;
                te.index = static_cast<int>(out.trace.size());
                te.kernel = proposals[i].kernel.describe();
                te.budget = proposals[i].budget.describe();
                te.c_over_pi = res[i].c;
                te.radius = res[i].radius;
                te.status = res[i].status;
                te.accepted = res[i].ok && res[i].c < best;
                if (te.accepted) {
                    best = res[i].c;
                    current = proposals[i];
                    results.push_back(res[i]);
                    best_idx = static_cast<int>(results.size()) - 1;
                    cands.push_back(proposals[i]);
                    improved = true;
                }
                out.trace.push_back(te);
            }
            if (!improved) step *= 0.5;
        }
    }

    if (best_idx < 0) {
        std::string why = out.trace.empty() ? "no candidates" : out.trace.front().status;
        throw CertificationError("minimize_constant: no feasible candidate (" + why + ")");
    }
    // locate the outcome carrying the best report
    for (size_t i = 0; i < results.size(); ++i) {
        if (results[i].ok && results[i].c == best) {
            out.best = results[i].report;
            break;
        }
    }
    return out;
}

void write_trace(const std::vector<TraceEntry>& trace, std::ostream& os) {
    for (const auto& t : trace) {
        os.precision(17);
        os << "idx=" << t.index << " kernel=\"" << t.kernel << "\" budget=\"" << t.budget
           << "\" C_over_pi=" << t.c_over_pi << " radius=" << t.radius << " status=\""
           << t.status << "\" accepted=" << (t.accepted ? 1 : 0) << "\n";
    }
}

}  // namespace bandcert
