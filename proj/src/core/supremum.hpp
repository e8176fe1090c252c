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

#ifndef BANDCERT_CORE_SUPREMUM_HPP
#define BANDCERT_CORE_SUPREMUM_HPP

#include <algorithm>
#include <functional>
#include <vector>

#include "certified.hpp"

namespace bandcert {

// Certified supremum of a scalar expression over [lo, hi] plus an optional
// analytic bound for everything beyond hi.  `range_bound` must return an
// enclosure of {expr(t) : t in [a, b]}; enclosures must shrink as intervals
// shrink for the refinement to converge.
struct SupProblem {
    double lo = 0.0;
    double hi = 64.0;
    std::function<Interval(double, double)> range_bound;
    Interval tail = Interval::unchecked(0.0, 0.0);  // enclosure of sup beyond hi
    bool has_tail = false;
    double tol = 1e-9;
    size_t node_cap = 4'000'000;
};

struct SupResult {
    double upper = 0.0;  // certified: true sup <= upper
    double lower = 0.0;  // certified: true sup >= lower
};

namespace sup_detail {

struct Node {
    double lo, hi, upper;
};
struct ByUpper {
    bool operator()(const Node& x, const Node& y) const { return x.upper < y.upper; }
};

}  // namespace sup_detail

// When `target` is non-null the search runs as a decision procedure:
// result.upper <= *target certified (returns early), or result.lower >
// *target (sup provably exceeds the target).
inline SupResult certified_sup(const SupProblem& p, const double* target = nullptr) {
    using sup_detail::Node;
    sup_detail::ByUpper by_upper;

    std::vector<Node> heap;
    auto push = [&](double a, double b) {
        heap.push_back({a, b, p.range_bound(a, b).hi});
        std::push_heap(heap.begin(), heap.end(), by_upper);
    };

    // dyadic seeding keeps the first enclosures from being uselessly wide
    double a = p.lo, step = std::min(1.0, std::max(1e-6, (p.hi - p.lo) / 64.0));
    while (a < p.hi) {
        const double b = std::min(a + step, p.hi);
        push(a, b);
        a = b;
        step *= 2.0;
    }
    double best_lower = p.has_tail ? p.tail.lo : -std::numeric_limits<double>::infinity();
    const double tail_hi = p.has_tail ? p.tail.hi : -std::numeric_limits<double>::infinity();

    size_t steps = 0;
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), by_upper);
        Node top = heap.back();
        heap.pop_back();
        const double global_upper = std::max(top.upper, tail_hi);

        if (target && global_upper <= *target) return {global_upper, best_lower};
        if (target && best_lower > *target) return {global_upper, best_lower};
        if (global_upper - best_lower <= p.tol) return {global_upper, best_lower};
        if (top.upper <= tail_hi) {
            // The tail bound dominates and cannot be refined here.
            if (target) return {global_upper, best_lower};
            throw CertificationError(
                "certified_sup: tail majorant dominates the requested tolerance; "
                "increase the cutoff");
        }
        const double m = 0.5 * (top.lo + top.hi);
        best_lower = std::max(best_lower, p.range_bound(m, m).lo);
        push(top.lo, m);
        push(m, top.hi);
        if (++steps > p.node_cap)
            throw CertificationError(
                "certified_sup: node budget exhausted before reaching the requested "
                "resolution");
    }
    return {p.has_tail ? tail_hi : best_lower, best_lower};
}

inline bool certified_sup_le(SupProblem p, double target) {
    SupResult r = certified_sup(p, &target);
    return r.upper <= target;
}

}  // namespace bandcert

#endif
