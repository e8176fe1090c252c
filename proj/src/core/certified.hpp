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

#ifndef BANDCERT_CORE_CERTIFIED_HPP
#define BANDCERT_CORE_CERTIFIED_HPP

#include <stdexcept>
#include <string>

#include "interval.hpp"

namespace bandcert {

enum class Side { TwoSided, UpperBound, LowerBound };

inline const char* side_name(Side s) {
    switch (s) {
        case Side::TwoSided: return "two-sided";
        case Side::UpperBound: return "upper-bound";
        case Side::LowerBound: return "lower-bound";
    }
    return "?";
}

// A numeric value with a rigorous error radius.  Two-sided values enclose
// the true quantity in [value-radius, value+radius]; an upper bound asserts
// true <= value, with radius recording how far below the bound the true
// value may sit (diagnostic only for one-sided values).
struct CertifiedValue {
    double value = 0.0;
    double radius = 0.0;
    Side side = Side::TwoSided;

    CertifiedValue() = default;
    CertifiedValue(double v, double r, Side s = Side::TwoSided) : value(v), radius(r), side(s) {
        if (!(r >= 0.0)) throw std::invalid_argument("CertifiedValue: negative radius");
    }

    static CertifiedValue from_interval(const Interval& iv) {
        double m = iv.mid();
        double r = std::max(iv.hi - m, m - iv.lo);
        return CertifiedValue(m, r, Side::TwoSided);
    }
    static CertifiedValue upper(double bound, double gap = 0.0) {
        return CertifiedValue(bound, gap, Side::UpperBound);
    }
    static CertifiedValue lower(double bound, double gap = 0.0) {
        return CertifiedValue(bound, gap, Side::LowerBound);
    }

    Interval interval() const {
        switch (side) {
            case Side::TwoSided: return Interval::unchecked(value - radius, value + radius);
            case Side::UpperBound: return Interval::unchecked(value - radius, value);
            case Side::LowerBound: return Interval::unchecked(value, value + radius);
        }
        return Interval();
    }

    double max_possible() const { return side == Side::LowerBound ? value + radius : interval().hi; }
    bool contains(double x) const { return interval().contains(x); }
};

// Thrown when a requested certification cannot be achieved (resolution or
// iteration limits, unreachable targets).  Callers must treat this as a
// hard failure, never as a loose bound.
class CertificationError : public std::runtime_error {
  public:
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bandcert

#endif
