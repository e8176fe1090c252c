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

#include "sinc_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "supremum.hpp"

namespace bandcert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Bernstein-ellipse parameter for all panel fits.
constexpr double kRho = 4.0;
constexpr double kAlpha = (kRho + 1.0 / kRho) / 4.0;   // real semi-axis, unit panel
constexpr double kBeta = (kRho - 1.0 / kRho) / 4.0;    // imaginary semi-axis

// sup|f - p_n| <= 4 M rho^{-n} / (rho - 1) for f analytic in E_rho with |f| <= M.
double ellipse_truncation(double M, int n) {
    return 4.0 * M * std::pow(kRho, -n) / (kRho - 1.0);
}

// Bound for |sinc(pi z)^k| on the rho-ellipse around panel [j, j+1].
double panel_magnitude(int k, double mid) {
    const double cosh_bound = std::cosh(kPi * kBeta) * 1.000001;
    double M;
    if (mid - kAlpha > 0.5) {
        M = cosh_bound / (kPi * (mid - kAlpha));
    } else {
        const double W = kPi * (mid + kAlpha);
        M = std::sinh(W) / W * 1.000001;
    }
    return std::pow(M, k);
}

int panel_nodes(double mid) {
    if (mid < 4.0) return 80;
    if (mid < SincPowerTable::kStoredRange) return 32;
    return 24;
}

}  // namespace

double sinc_pi(double u) {
    const double x = kPi * u;
    if (std::fabs(x) < 1e-2) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
    }
    return std::sin(x) / x;
}

double sinc_pi_pow(double u, int k) {
    double base = sinc_pi(u);
    double r = 1.0;
    while (k > 0) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

SincPowerTable::SincPowerTable(int k) : k_(k) {
    if (k < kMinExponent || k > kMaxExponent)
        throw std::invalid_argument("sinc power exponent must be in [3, 24]");

    const int stored = static_cast<int>(kStoredRange);
    panels_.reserve(stored);
    cum_.reserve(stored + 1);
    cum_.push_back(Interval(0.0));

    Interval running(0.0);
    for (int j = 0; j < stored; ++j) {
        const double mid = j + 0.5;
        const int n = panel_nodes(mid);
        const double vmax = std::min(1.0, std::pow(kPi * std::max(1.0, double(j)), -k));
        const double node_err = (k + 6) * kEps * std::max(vmax, 1e-300);
        auto f = [k](double u) { return sinc_pi_pow(u, k); };
        ChebSeries s = cheb_fit(f, j, j + 1.0, n, node_err,
                                ellipse_truncation(panel_magnitude(k, mid), n), vmax);
        running = running + s.integral();
        panels_.push_back(std::move(s));
        cum_.push_back(running);
    }

    // Accumulate the remainder of the half-line integral: panels out to the
    // point where the absolute tail drops below 1e-10, then the tail bound.
    double t_far = kStoredRange;
    while (tail_integral_majorant(t_far) > 1e-10) t_far *= 2.0;
    Interval far(0.0);
    for (double j = kStoredRange; j < t_far; j += 1.0) {
        const double mid = j + 0.5;
        const int n = panel_nodes(mid);
        const double vmax = std::pow(kPi * j, -k);
        const double node_err = (k + 6) * kEps * vmax;
        auto f = [k](double u) { return sinc_pi_pow(u, k); };
        ChebSeries s = cheb_fit(f, j, j + 1.0, n, node_err,
                                ellipse_truncation(panel_magnitude(k, mid), n), vmax);
        far = far + s.integral();
    }
    const double tail = tail_integral_majorant(t_far);
    const Interval tail_iv = (k % 2 == 0) ? Interval(0.0, tail) : Interval(-tail, tail);
    half_ = running + far + tail_iv;
}

double SincPowerTable::tail_integral_majorant(double T) const {
    if (!(T > 0.0)) throw std::domain_error("tail majorant requires T > 0");
    return detail::up(std::pow(T, 1 - k_) / ((k_ - 1) * std::pow(kPi, k_)));
}

Interval SincPowerTable::partial(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error("partial: t must be finite and >= 0");
    if (t <= kStoredRange) {
        int j = std::min(static_cast<int>(t), static_cast<int>(kStoredRange) - 1);
        return cum_[j] + panels_[j].integrate_from_a(t);
    }
    const double tail = tail_integral_majorant(t);
    const Interval tail_iv = (k_ % 2 == 0) ? Interval(0.0, tail) : Interval(-tail, tail);
    return half_ - tail_iv;
}

const SincPowerTable& SincPowerTable::get(int k) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const SincPowerTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it == cache.end())
        it = cache.emplace(k, std::make_unique<const SincPowerTable>(k)).first;
    return *it->second;
}

CertifiedValue sinc_power_antiderivative(int k, double t) {
    if (!std::isfinite(t)) throw std::domain_error("sinc_power_antiderivative: non-finite t");
    const SincPowerTable& tab = SincPowerTable::get(k);
    // F_k(t) = I_k/2 + P_k(t); P_k is odd.
    Interval P = (t >= 0.0) ? tab.partial(t) : -tab.partial(-t);
    return CertifiedValue::from_interval(tab.half_integral() + P);
}

NormalizerKernel NormalizerKernel::h1() {
    KernelComponent c;
    c.exponent = 8;
    c.weight = 1.0;
    c.rate = 1.0;
    c.norm_c = ratio(315, 151);
    NormalizerKernel k;
    k.comps_ = {c};
    return k;
}

NormalizerKernel NormalizerKernel::h2() {
    KernelComponent c;
    c.exponent = 3;
    c.weight = 1.0;
    c.rate = 1.0;
    c.norm_c = ratio(4, 3);
    NormalizerKernel k;
    k.comps_ = {c};
    return k;
}

NormalizerKernel NormalizerKernel::sinc_power(int k) {
    KernelComponent c;
    c.exponent = k;
    c.weight = 1.0;
    c.rate = 1.0;
    if (k == 8) {
        c.norm_c = ratio(315, 151);
    } else if (k == 3) {
        c.norm_c = ratio(4, 3);
    } else {
        c.norm_c = Interval(1.0) / SincPowerTable::get(k).total_integral();
    }
    NormalizerKernel kk;
    kk.comps_ = {c};
    return kk;
}

NormalizerKernel NormalizerKernel::mixture(const std::vector<KernelComponent>& parts) {
    if (parts.empty()) throw std::invalid_argument("kernel mixture needs at least one component");
    double wsum = 0.0;
    NormalizerKernel k;
    for (KernelComponent c : parts) {
        if (c.weight <= 0.0) throw std::invalid_argument("kernel weights must be positive");
        if (c.rate <= 0.0) throw std::invalid_argument("kernel rates must be positive");
        if (c.norm_c.lo == 0.0 && c.norm_c.hi == 0.0)
            c.norm_c = Interval(1.0) / SincPowerTable::get(c.exponent).total_integral();
        wsum += c.weight;
        k.comps_.push_back(c);
    }
    for (auto& c : k.comps_) c.weight /= wsum;
    return k;
}

NormalizerKernel NormalizerKernel::with_scale(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument("kernel scale must be positive");
    NormalizerKernel k = *this;
    k.scale_ = scale_ * s;
    return k;
}

double NormalizerKernel::bandwidth_pi() const {
    double b = 0.0;
    for (const auto& c : comps_) b = std::max(b, c.exponent * c.rate);
    return b * scale_;
}

Interval NormalizerKernel::eval(double t) const {
    if (!std::isfinite(t)) throw std::domain_error("kernel eval: non-finite t");
    if (t < 0.0) return -eval(-t);
    Interval acc(0.0);
    for (const auto& c : comps_) {
        const auto& tab = SincPowerTable::get(c.exponent);
        acc = acc + Interval(c.weight) * (c.norm_c + c.norm_c) * tab.partial(c.rate * scale_ * t);
    }
    return acc;
}

CertifiedValue NormalizerKernel::eval_certified(double t) const {
    return CertifiedValue::from_interval(eval(t));
}

Interval NormalizerKernel::eval_range(double t1, double t2) const {
    if (!(0.0 <= t1 && t1 <= t2)) throw std::domain_error("eval_range requires 0 <= t1 <= t2");
    // h(mid) +- local Lipschitz * halfwidth.  |h'(t)| <= 2 sum w c a
    // min(1, (pi a t1)^{-k}) on [t1, t2].
    double lip = 0.0;
    for (const auto& c : comps_) {
        const double a = c.rate * scale_;
        double s = 1.0;
        const double x = kPi * a * t1;
        if (x > 1.0) s = std::pow(x, -c.exponent);
        lip += 2.0 * c.weight * c.norm_c.hi * a * s;
    }
    const double mid = 0.5 * (t1 + t2);
    return widen(eval(mid), lip * 0.5 * (t2 - t1) * (1.0 + 8.0 * kEps));
}

double NormalizerKernel::tail_majorant(double T) const {
    if (!(T > 0.0)) throw std::domain_error("tail majorant requires T > 0");
    double m = 0.0;
    for (const auto& c : comps_) {
        const auto& tab = SincPowerTable::get(c.exponent);
        m += 2.0 * c.weight * c.norm_c.hi * tab.tail_integral_majorant(c.rate * scale_ * T);
    }
    return detail::up(m * (1.0 + 8.0 * kEps));
}

Interval NormalizerKernel::derivative_sup() const {
    // h'(t) = 2 sum w_i c_i a_i sinc(pi a_i t)^{k_i}; the triangle bound
    // 2 sum w c a is attained at t = 0, so it is the supremum exactly.
    Interval acc(0.0);
    for (const auto& c : comps_)
        acc = acc + Interval(2.0) * Interval(c.weight) * c.norm_c * Interval(c.rate * scale_);
    return acc;
}

CertifiedValue NormalizerKernel::derivative_bound() const {
    return CertifiedValue::upper(derivative_sup().hi);
}

CertifiedValue NormalizerKernel::sup_abs(double tol) const {
    const double cutoff = SincPowerTable::kStoredRange / scale_;
    const double tm = tail_majorant(cutoff);
    SupProblem p;
    p.lo = 0.0;
    p.hi = cutoff;
    p.range_bound = [this](double a, double b) { return iabs(eval_range(a, b)); };
    p.tail = Interval::unchecked(std::max(0.0, 1.0 - tm), 1.0 + tm);
    p.has_tail = true;
    p.tol = tol;
    SupResult r = certified_sup(p);
    return CertifiedValue::upper(r.upper, r.upper - r.lower);
}

bool NormalizerKernel::normalization_check() const {
    Interval acc(0.0);
    for (const auto& c : comps_) {
        const auto& tab = SincPowerTable::get(c.exponent);
        acc = acc + Interval(c.weight) * c.norm_c * tab.total_integral();
    }
    return acc.contains(1.0);
}

std::string NormalizerKernel::describe() const {
    std::ostringstream os;
    if (comps_.size() == 1 && comps_[0].rate == 1.0) {
        if (comps_[0].exponent == 8)
            os << "h1";
        else if (comps_[0].exponent == 3)
            os << "h2";
        else
            os << "sinc:k=" << comps_[0].exponent;
    } else {
        os << "mix:";
        bool first = true;
        for (const auto& c : comps_) {
            if (!first) os << ";";
            first = false;
            os << "k=" << c.exponent << ",w=" << c.weight;
            if (c.rate != 1.0) os << ",a=" << c.rate;
        }
    }
    if (scale_ != 1.0) os << "@scale=" << scale_;
    return os.str();
}

NormalizerKernel NormalizerKernel::parse(const std::string& spec) {
    std::string body = spec, scale_part;
    if (auto at = spec.find('@'); at != std::string::npos) {
        body = spec.substr(0, at);
        scale_part = spec.substr(at + 1);
    }
    NormalizerKernel k;
    if (body == "h1") {
        k = h1();
    } else if (body == "h2") {
        k = h2();
    } else if (body.rfind("sinc:", 0) == 0 || body.rfind("family:sinc", 0) == 0) {
        auto eq = body.find("k=");
        if (eq == std::string::npos) throw std::invalid_argument("sinc kernel needs k=<int>");
        k = sinc_power(std::stoi(body.substr(eq + 2)));
    } else if (body.rfind("mix:", 0) == 0 || body.rfind("spline:", 0) == 0) {
        std::vector<KernelComponent> parts;
        std::stringstream ss(body.substr(body.find(':') + 1));
        std::string item;
        while (std::getline(ss, item, ';')) {
            KernelComponent c;
            c.norm_c = Interval(0.0);
            std::stringstream fs(item);
            std::string kv;
            while (std::getline(fs, kv, ',')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("bad kernel component: " + kv);
                const std::string key = kv.substr(0, eq);
                const double val = std::stod(kv.substr(eq + 1));
                if (key == "k")
                    c.exponent = static_cast<int>(val);
                else if (key == "w")
                    c.weight = val;
                else if (key == "a")
                    c.rate = val;
                else
                    throw std::invalid_argument("unknown kernel component key: " + key);
            }
            parts.push_back(c);
        }
        k = mixture(parts);
    } else {
        throw std::invalid_argument("unknown kernel spec: " + spec);
    }
    if (!scale_part.empty()) {
        auto eq = scale_part.find('=');
        k = k.with_scale(std::stod(scale_part.substr(eq == std::string::npos ? 0 : eq + 1)));
    }
    return k;
}

}  // namespace bandcert
