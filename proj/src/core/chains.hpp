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

#ifndef BANDCERT_CORE_CHAINS_HPP
#define BANDCERT_CORE_CHAINS_HPP

#include <string>
#include <vector>

#include "envelope.hpp"
#include "quasi_exp.hpp"

namespace bandcert {

// Band geometry: the cylinder has dimension n, the cross-section n-1;
// sigma is the uniform scalar-curvature lower bound, L the band width.
struct GeometryParams {
    int n = 2;
    double sigma = 1.0;
    double L = 1.0;
    void validate() const;
};

// Spectral gap induced by the curvature bound: (1/2) sqrt(n sigma/(n-1)).
double lichnerowicz_gap(const GeometryParams& geom);

// Critical width threshold C*pi*sqrt((n-1)/n)/sqrt(sigma) in closed form.
double width_threshold(double c_over_pi, int n, double sigma);

// Propagation bookkeeping, kept as explicit data so searches can retune it.
// fourier_fraction phi: prop of chi(D) <= phi*L.
// degree d: polynomial degree through which propagation multiplies.
// separation_fraction: the collar fraction (paper-grade value 1/3); the
//   masked regions are separated by (1 - 2*sep)*L.
// lemma_doubling: 1 for even-function estimates, 2 for general ones.
// Feasibility: lemma_doubling*degree*phi <= min(sep, 1 - 2*sep).
struct BudgetAllocation {
    long long fourier_num = 1, fourier_den = 15;
    int degree = 5;
    long long sep_num = 1, sep_den = 3;
    int lemma_doubling = 1;

    double fourier_fraction() const;
    double separation_fraction() const;
    void validate() const;
    std::string describe() const;

    static BudgetAllocation even_default();
    static BudgetAllocation odd_default(int m = 17);
};

struct NamedBound {
    std::string name;   // machine field name
    std::string label;  // human description of the quantity
    CertifiedValue value;
};

struct BudgetEntry {
    std::string quantity;
    std::string bound;
};

struct ChainReport {
    std::string parity;  // "even" | "odd"
    std::string kernel;
    BudgetAllocation budget;
    std::vector<BudgetEntry> propagation_budget;
    std::vector<NamedBound> bounds;
    CertifiedValue final_constant;  // C in units of pi (upper bound)
    std::string verdict;

    const NamedBound* find(const std::string& name) const;
    void add(const std::string& name, const std::string& label, const CertifiedValue& v);
};

// Even pipeline: operator-norm bound for the index idempotent, admissible
// perturbation from the exponential-series contraction, band envelope
// threshold, and the final width constant.
ChainReport even_chain(const GeometryParams& geom, const NormalizerKernel& kernel,
                       const BudgetAllocation& budget = BudgetAllocation::even_default());

// Odd pipeline: certified spectral range of S = (h+1)/2, polynomial
// exponential-approximation defect, admissible perturbation, threshold for
// the |g_m(S)-1| envelope, final width constant.
ChainReport odd_chain(const GeometryParams& geom, const NormalizerKernel& kernel, int m = 17,
                      const BudgetAllocation& budget = BudgetAllocation::odd_default());

// Vanishing scale for the quantitative index of a curvature-gapped operator.
struct PscParams {
    double epsilon = 0.01;     // in (0, 1/20)
    double cap_n = 7.0;        // norm cap N >= 7
    NormalizerKernel kernel = NormalizerKernel::h1();
    bool odd = false;
    void validate() const;
};

struct PscResult {
    CertifiedValue omega0;     // upper bound; vanishing scale = omega0 / sqrt(c)
    double u0 = 0.0;           // frequency threshold on the unscaled kernel
    int degree = 0;            // polynomial degree in the propagation product
    double support_radius = 0.0;  // kernel Fourier support radius (radians)
    double target = 0.0;       // envelope target the threshold was solved for
};

PscResult psc_vanishing_scale(const PscParams& params);

// Re-runs the scaled-kernel envelope inequality at gap c and checks that the
// perturbation threshold is met; this is the direct numeric re-check of the
// vanishing argument at propagation omega0/sqrt(c).
bool psc_recheck(const PscParams& params, const PscResult& result, double gap_c);

}  // namespace bandcert

#endif
