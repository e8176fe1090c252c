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

#ifndef BANDCERT_CORE_ORACLE_HPP
#define BANDCERT_CORE_ORACLE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "certified.hpp"

namespace bandcert {

using CMatrix = Eigen::MatrixXcd;

double op_norm(const CMatrix& m);
CMatrix matrix_exp(const CMatrix& a);   // scaling-and-squaring Taylor

// Matrix-scale quasielement (Definition-style numeric predicates).
struct QuasiElement {
    CMatrix matrix;
    double epsilon = 0.04;
    double cap_n = 7.0;
    bool invertible_kind = false;
    CMatrix witness;     // quasi-inverse for the invertible kind
    int prop_bound = 0;  // band propagation when applicable

    double idempotent_defect() const;     // ||e^2 - e||
    double inverse_defect() const;        // max(||uv-1||, ||vu-1||)
    bool admissible() const;              // the defining predicates hold
};

// Holomorphic-calculus regularization of a quasiidempotent: contour
// integral of the resolvent around the 1-ball on |z-1| = sqrt(eps).
// Rejects inputs whose spectrum is not inside B_sqrt(eps)(0) u B_sqrt(eps)(1).
CMatrix holo_idempotent(const QuasiElement& e, int contour_nodes = 256);

// Norm bounds the regularized idempotent must satisfy.
double holo_norm_bound(double eps, double cap_n);        // (N+1)/(1-2 sqrt(eps))
double holo_distance_bound(double eps, double cap_n);    // 2(N+1)eps/((1-sqrt(eps))(1-2 sqrt(eps)))

struct PerturbVerdict {
    bool same_class = false;       // f is a quasielement of the same kind
    bool path_in_class = false;    // straight-line path stays in class (100 samples)
    double defect = 0.0;           // defect of f
};

// Perturbation-stability check; throws std::invalid_argument when the
// norm side-conditions of the perturbation lemma are violated.
PerturbVerdict perturb_check(const QuasiElement& e, const CMatrix& f);

// Finite Hermitian banded matrix with a spectral-gap certificate on the
// compression to gap_lo..gap_hi (exclusive): all |eigenvalues| >= gap.
struct BandedModel {
    CMatrix matrix;
    int band = 1;
    int gap_lo = 0, gap_hi = 0;
    double gap = 0.0;

    int dimension() const { return static_cast<int>(matrix.rows()); }
    void validate() const;
    // Recompute the certificate from the compression spectrum.
    double certify_gap();
    double gershgorin_radius() const;  // spectral bound for the compression
};

struct GapEstimate {
    double lhs;  // ||p(D) 1_region||
    double rhs;  // certified sup{|p(y)| : gap <= |y| <= R}
};

// Finite-propagation norm estimate: for a region at distance > deg(p)*band
// from the complement of the certified window, p(D) masked to the region is
// controlled by the polynomial's size on the gapped spectrum.
GapEstimate gap_norm_estimate(const BandedModel& model, const std::vector<double>& poly,
                              int region_lo, int region_hi);

// Two-ended band demo: free ends, staggered-mass middle of the given width,
// index idempotent built from a fixed-degree polynomial sign proxy, masked
// to the right half.  Returns ||exp(2 pi i p_+) - 1||.
struct PartitionDemoParams {
    int width = 8;           // gapped middle width (sites)
    int end_zone = 20;       // free sites on each side
    double mass = 0.8;       // staggered mass, sets the gap
    double steepness = 3.0;  // sign-proxy slope at the gap, in gap units
    int proxy_degree = 41;   // polynomial degree of the sign proxy
};
double partitioned_vanishing_demo(const PartitionDemoParams& p);

// Structural checks with an exact-propagation (Horner-built) proxy:
// cross products of the masked representatives over separated regions
// vanish exactly, and masking cannot increase the idempotent defect.
struct PartitionStructure {
    double cross_product_norm = 0.0;    // || q_{Z+} q_{Z-} || (must be exactly 0)
    double masked_defect = 0.0;         // || q_+^2 - q_+ ||
    double full_defect = 0.0;           // || q^2 - q ||
};
PartitionStructure partition_structure_check(int width, int seed);

// Deterministic random generators for the property suites.
QuasiElement random_quasi_idempotent(std::mt19937_64& rng, int dim, double eps, double cap_n);
QuasiElement random_quasi_invertible(std::mt19937_64& rng, int dim, double eps, double cap_n);

struct OracleSuiteResult {
    int idempotent_trials = 0, idempotent_failures = 0;
    double worst_idem_residual = 0.0;     // max ||f0^2 - f0||
    int rank_mismatches = 0;
    int perturb_trials = 0, perturb_failures = 0;
    int invertible_trials = 0, invertible_failures = 0;
    int gap_trials = 0, gap_failures = 0;
    double worst_gap_slack = 0.0;         // max(lhs - rhs)
    std::vector<int> demo_widths;
    std::vector<double> demo_norms;
    double demo_negative_control = 0.0;   // width-2 norm
    bool demo_strictly_decreasing = false;
    double cross_product_norm = 0.0;
    bool masking_inequality_ok = false;
    bool all_passed() const;
};

OracleSuiteResult run_oracle_suites(std::uint64_t seed, int idem_trials = 1000,
                                    int perturb_trials = 1000, int gap_trials = 200);

}  // namespace bandcert

#endif
