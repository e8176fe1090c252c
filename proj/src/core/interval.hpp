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

#ifndef BANDCERT_CORE_INTERVAL_HPP
#define BANDCERT_CORE_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bandcert {

// Closed interval [lo, hi] with outward rounding after every operation.
// Rounding is handled by nudging both ends one ulp outward, which covers
// the half-ulp error of a correctly rounded double operation with margin.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    constexpr Interval(double point) : lo(point), hi(point) {}
    Interval(double a, double b) : lo(a), hi(b) {
        if (!(a <= b)) throw std::invalid_argument("Interval: lo > hi");
    }

    static Interval unchecked(double a, double b) {
        Interval r;
        r.lo = a;
        r.hi = b;
        return r;
    }

    double mid() const { return 0.5 * (lo + hi); }
    double rad() const { return 0.5 * (hi - lo); }
    double width() const { return hi - lo; }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

namespace detail {

inline double down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline Interval outward(double lo, double hi) {
    return Interval::unchecked(down(lo), up(hi));
}

}  // namespace detail

inline Interval operator+(const Interval& a, const Interval& b) {
    return detail::outward(a.lo + b.lo, a.hi + b.hi);
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return detail::outward(a.lo - b.hi, a.hi - b.lo);
}
inline Interval operator-(const Interval& a) {
    return Interval::unchecked(-a.hi, -a.lo);
}
inline Interval operator*(const Interval& a, const Interval& b) {
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return detail::outward(std::min(std::min(p1, p2), std::min(p3, p4)),
                           std::max(std::max(p1, p2), std::max(p3, p4)));
}
inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && b.hi >= 0.0) throw std::domain_error("Interval division by zero");
    const double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return detail::outward(std::min(std::min(p1, p2), std::min(p3, p4)),
                           std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Interval sqr(const Interval& a) {
    Interval r;
    if (a.lo >= 0.0)
        r = detail::outward(a.lo * a.lo, a.hi * a.hi);
    else if (a.hi <= 0.0)
        r = detail::outward(a.hi * a.hi, a.lo * a.lo);
    else {
        const double m = a.mag();
        r = detail::outward(0.0, m * m);
    }
    r.lo = std::max(r.lo, 0.0);
    return r;
}

inline Interval iabs(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return Interval::unchecked(0.0, a.mag());
}

inline Interval imax(const Interval& a, const Interval& b) {
    return Interval::unchecked(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval::unchecked(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline Interval isqrt(const Interval& a) {
    double lo = a.lo;
    if (lo < 0.0) {
        if (lo < -1e-280) throw std::domain_error("Interval sqrt of negative");
        lo = 0.0;  // rounding dust from outward steps
    }
    Interval r = detail::outward(std::sqrt(lo), std::sqrt(a.hi));
    r.lo = std::max(r.lo, 0.0);
    return r;
}

// exp with a few ulps of slack; libm exp is faithfully rounded, four ulps
// of padding is ample.
inline Interval iexp(const Interval& a) {
    double lo = std::exp(a.lo), hi = std::exp(a.hi);
    for (int i = 0; i < 4; ++i) {
        lo = detail::down(lo);
        hi = detail::up(hi);
    }
    return Interval::unchecked(lo, hi);
}

inline Interval widen(const Interval& a, double slack) {
    return Interval::unchecked(a.lo - slack, a.hi + slack);
}

// Rational constant p/q as an interval.
inline Interval ratio(long long p, long long q) {
    double v = static_cast<double>(p) / static_cast<double>(q);
    return detail::outward(v, v);
}

}  // namespace bandcert

#endif
