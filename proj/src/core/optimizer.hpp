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

#ifndef BANDCERT_CORE_OPTIMIZER_HPP
#define BANDCERT_CORE_OPTIMIZER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chains.hpp"

namespace bandcert {

// Search families over normalizing kernels.  All members are weighted
// scaled sinc-power mollifiers; the three kinds differ in which parameters
// are free.
struct KernelFamily {
    enum class Kind { Singleton, SincPower, ConvexCombination, SplineSpectrum };
    Kind kind = Kind::SincPower;
    int k_min = 3, k_max = 16;
    int components = 2;                      // for the mixture kinds
    std::optional<NormalizerKernel> fixed;   // Singleton

    static KernelFamily singleton(const NormalizerKernel& k);
    static KernelFamily sinc_power_range(int klo, int khi);
    static KernelFamily convex_combination(int klo, int khi, int n = 2);
    static KernelFamily spline_spectrum(int klo, int khi, int n = 2);
    static KernelFamily parse(const std::string& spec);
    std::string describe() const;
};

// Full-pipeline evaluation of one (kernel, budget) candidate; the budget is
// validated before any numerics run.
ChainReport evaluate_candidate(const NormalizerKernel& kernel, const BudgetAllocation& budget,
                               bool odd_parity);

struct TraceEntry {
    int index = 0;
    std::string kernel;
    std::string budget;
    double c_over_pi = 0.0;  // certified upper bound; infinity when infeasible
    double radius = 0.0;
    std::string status;      // "ok" or the failure reason
    bool accepted = false;   // improved the best-so-far
};

struct OptimizeResult {
    ChainReport best;
    std::vector<TraceEntry> trace;
    int evaluations = 0;
};

// Derivative-free minimization of the certified width constant over the
// family and over budget allocations.  Deterministic for a fixed seed;
// candidate evaluations run concurrently and the trace is merged by index.
OptimizeResult minimize_constant(const KernelFamily& family, bool odd_parity,
                                 int iteration_budget, std::uint64_t seed);

// One line per candidate: parameters, budget, constant, certification radii.
void write_trace(const std::vector<TraceEntry>& trace, std::ostream& os);

}  // namespace bandcert

#endif
