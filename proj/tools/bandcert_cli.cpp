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

// Command-line front end; talks to the engine exclusively through the
// shared-library C interface in bandcert.h.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bandcert.h"

namespace {

struct KernelDeleter {
    void operator()(bc_kernel* k) const { bc_kernel_free(k); }
};
struct ReportDeleter {
    void operator()(bc_report* r) const { bc_report_free(r); }
};
using KernelPtr = std::unique_ptr<bc_kernel, KernelDeleter>;
using ReportPtr = std::unique_ptr<bc_report, ReportDeleter>;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Flat key=value configuration, lowest-precedence defaults come from the
// option definitions, then the config file, then explicit flags.
std::map<std::string, std::string> load_config(const std::string& path, std::string* used) {
    std::map<std::string, std::string> kv;
    std::string p = path;
    if (p.empty()) {
        if (const char* env = std::getenv("BANDCERT_CONFIG")) p = env;
    }
    if (p.empty()) return kv;
    std::ifstream is(p);
    if (!is) {
        std::cerr << "error: cannot read config file: " << p << "\n";
        std::exit(2);
    }
    *used = p;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

struct Output {
    std::string out_path;
    int exit_code = 0;

    void emit(const std::string& text) const {
        std::cout << text;
        if (!out_path.empty()) {
            std::ofstream os(out_path);
            if (!os) {
                std::cerr << "error: cannot write " << out_path << "\n";
                std::exit(2);
            }
            os << text;
        }
    }
};

// Minimal report text for the kernel-level commands (same layout as the
// engine-rendered reports, so the machine section parses uniformly).
class TextReport {
  public:
    TextReport(std::string command, double wall_ms) : command_(std::move(command)), ms_(wall_ms) {}
    void info(const std::string& k, const std::string& v) { info_.push_back({k, v}); }
    void field(const std::string& name, double value, double radius, const std::string& side,
               const std::string& label) {
        fields_.push_back({name, value, radius, side, label});
    }
    void conclusion(const std::string& s) { conclusion_ = s; }
    std::string render(bool ok) const {
        std::ostringstream os;
        os << "# bandcert report\n";
        os << "command: " << command_ << "\n";
        os << "version: " << bc_version() << "\n";
        os << "wall-ms: " << g17(ms_) << "\n";
        os << "status: " << (ok ? "ok" : "failed") << "\n";
        for (const auto& [k, v] : info_) os << k << ": " << v << "\n";
        os << "[machine]\n";
        for (const auto& f : fields_)
            os << f.name << ": " << g17(f.value) << " " << g17(f.radius) << " " << f.side
               << "\n";
        os << "[notes]\n";
        for (const auto& f : fields_) os << f.name << ": " << f.label << "\n";
        if (!conclusion_.empty()) os << "conclusion: " << conclusion_ << "\n";
        return os.str();
    }

  private:
    struct Field {
        std::string name;
        double value, radius;
        std::string side, label;
    };
    std::string command_;
    double ms_;
    std::vector<std::pair<std::string, std::string>> info_;
    std::vector<Field> fields_;
    std::string conclusion_;
};

int die(bc_status st, const std::string& where) {
    std::cerr << "error: " << where << ": " << bc_status_name(st) << " (" << bc_last_error()
              << ")\n";
    return st == BC_EINVAL || st == BC_EDOMAIN ? 2 : 1;
}

KernelPtr make_kernel(const std::string& spec) {
    KernelPtr k(bc_kernel_create(spec.c_str()));
    if (!k) {
        std::cerr << "error: kernel '" << spec << "': " << bc_last_error() << "\n";
        std::exit(2);
    }
    return k;
}

std::string provenance(const std::map<std::string, std::string>& config,
                       const std::string& config_path) {
    if (config.empty()) return config_path.empty() ? "none" : config_path + " (empty)";
    std::ostringstream os;
    os << config_path << ":";
    for (const auto& [k, v] : config) os << " " << k << "=" << v;
    return os.str();
}

double now_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bandcert: certified numerics for spectral band-width constants"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key=value config file (or $BANDCERT_CONFIG)");

    // shared option storage; config-file values patch unset flags
    std::string kernel = "", out_path = "", format = "report", trace_path = "", parity = "";
    double epsilon = 0.01, cap_n = 7.0, sigma = 1.0, width = 100.0, tol = 1e-9, t_point = 0.0,
           s_cut = 0.0, t_max = 8.0, target = 0.0;
    int dim = 6, degree = 17, steps = 256, iters = 200;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--kernel", kernel, "kernel spec: h1 | h2 | sinc:k=.. | mix:... | family:...");
        sub->add_option("--out", out_path, "also write the report to this path");
        sub->add_option("--format", format, "report | grid")
            ->check(CLI::IsMember({"report", "grid"}));
        sub->add_option("--tol", tol, "certification tolerance");
    };

    CLI::App* c_eval = app.add_subcommand("kernel-eval", "evaluate a normalizing kernel");
    add_common(c_eval);
    c_eval->add_option("--t", t_point, "evaluation point");
    c_eval->add_option("--t-max", t_max, "grid upper end (grid format)");
    c_eval->add_option("--steps", steps, "grid points (grid format)");

    CLI::App* c_env = app.add_subcommand("envelope", "certified band envelope b(s)");
    add_common(c_env);
    c_env->add_option("--s", s_cut, "frequency cutoff s");
    c_env->add_option("--target", target, "also solve the threshold for this target");

    CLI::App* c_even = app.add_subcommand("even-constant", "even-case width constant pipeline");
    add_common(c_even);
    c_even->add_option("--dim", dim, "cylinder dimension n");
    c_even->add_option("--sigma", sigma, "scalar curvature lower bound");
    c_even->add_option("--width", width, "band width L");

    CLI::App* c_odd = app.add_subcommand("odd-constant", "odd-case width constant pipeline");
    add_common(c_odd);
    c_odd->add_option("--dim", dim, "cylinder dimension n");
    c_odd->add_option("--sigma", sigma, "scalar curvature lower bound");
    c_odd->add_option("--width", width, "band width L");
    c_odd->add_option("--degree", degree, "polynomial degree m");

    CLI::App* c_psc = app.add_subcommand("psc-scale", "index vanishing scale omega0");
    add_common(c_psc);
    c_psc->add_option("--epsilon", epsilon, "quantitative parameter epsilon in (0, 1/20)");
    c_psc->add_option("--cap-n", cap_n, "norm cap N >= 7");
    c_psc->add_option("--parity", parity, "even | odd")->check(CLI::IsMember({"even", "odd", ""}));

    CLI::App* c_opt = app.add_subcommand("optimize", "minimize the width constant over a family");
    add_common(c_opt);
    c_opt->add_option("--iters", iters, "candidate evaluation budget");
    c_opt->add_option("--seed", seed, "search seed");
    c_opt->add_option("--trace", trace_path, "line-delimited search trace path");
    c_opt->add_option("--parity", parity, "even | odd")->check(CLI::IsMember({"even", "odd", ""}));

    CLI::App* c_ver = app.add_subcommand("verify-oracle", "matrix-scale property suites");
    c_ver->add_option("--seed", seed, "suite seed");
    c_ver->add_option("--iters", iters, "trials per suite (gap suite runs iters/5)");
    c_ver->add_option("--out", out_path, "also write the report to this path");

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    std::string config_used;
    const auto config = load_config(config_path, &config_used);
    auto patch = [&](const char* name, auto& target_var) {
        const std::string key = name;
        if (!config.count(key)) return;
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt && opt->count() > 0) return;  // explicit flag wins
        std::istringstream is(config.at(key));
        is >> target_var;
    };
    patch("kernel", kernel);
    patch("epsilon", epsilon);
    patch("cap-n", cap_n);
    patch("dim", dim);
    patch("sigma", sigma);
    patch("width", width);
    patch("degree", degree);
    patch("tol", tol);
    patch("seed", seed);
    patch("iters", iters);
    patch("out", out_path);
    patch("format", format);

    Output output;
    output.out_path = out_path;
    const auto t0 = std::chrono::steady_clock::now();
    const std::string prov = provenance(config, config_used);

    if (sub == c_eval) {
        if (kernel.empty()) kernel = "h1";
        KernelPtr k = make_kernel(kernel);
        if (format == "grid") {
            std::ostringstream os;
            os << "t,value,radius\n";
            for (int i = 0; i <= steps; ++i) {
                const double t = -t_max + 2.0 * t_max * i / steps;
                double v = 0, r = 0;
                if (bc_status st = bc_kernel_eval(k.get(), t, &v, &r); st != BC_OK)
                    return die(st, "kernel-eval");
                os << g17(t) << "," << g17(v) << "," << g17(r) << "\n";
            }
            output.emit(os.str());
            return 0;
        }
        double v = 0, r = 0, sup = 0, supgap = 0, der = 0, bw = 0;
        if (bc_status st = bc_kernel_eval(k.get(), t_point, &v, &r); st != BC_OK)
            return die(st, "kernel-eval");
        bc_kernel_sup_abs(k.get(), &sup, &supgap);
        bc_kernel_derivative_bound(k.get(), &der);
        bc_kernel_bandwidth(k.get(), &bw);
        TextReport rep("kernel-eval", now_ms(t0));
        rep.info("kernel", kernel);
        rep.info("config", prov);
        rep.field("kernel_value", v, r, "two-sided", "h(" + g17(t_point) + ")");
        rep.field("kernel_sup_abs", sup, supgap, "upper-bound", "certified sup |h|");
        rep.field("derivative_bound", der, 0, "upper-bound", "certified sup |h'|");
        rep.field("bandwidth_over_pi", bw, 0, "two-sided", "Fourier support radius / pi");
        rep.conclusion("h(" + g17(t_point) + ") = " + g17(v) + " +- " + g17(r));
        output.emit(rep.render(true));
        return 0;
    }

    if (sub == c_env) {
        if (kernel.empty()) kernel = "h1";
        KernelPtr k = make_kernel(kernel);
        if (format == "grid") {
            std::ostringstream os;
            os << "t,value,radius\n";
            for (int i = 0; i <= steps; ++i) {
                const double s = s_cut + (t_max - s_cut) * i / steps;
                double b = 0, gap = 0;
                if (bc_status st = bc_envelope_b(k.get(), s, tol, &b, &gap); st != BC_OK)
                    return die(st, "envelope");
                os << g17(s) << "," << g17(b) << "," << g17(gap) << "\n";
            }
            output.emit(os.str());
            return 0;
        }
        double b = 0, gap = 0;
        if (bc_status st = bc_envelope_b(k.get(), s_cut, tol, &b, &gap); st != BC_OK)
            return die(st, "envelope");
        TextReport rep("envelope", now_ms(t0));
        rep.info("kernel", kernel);
        rep.info("config", prov);
        rep.field("envelope_b", b, gap, "upper-bound", "b(" + g17(s_cut) + ")");
        bool ok = true;
        if (target > 0.0) {
            double s_star = 0, sgap = 0;
            if (bc_status st = bc_threshold_solve(k.get(), target, &s_star, &sgap); st != BC_OK)
                return die(st, "threshold-solve");
            rep.field("s_threshold", s_star, sgap, "upper-bound",
                      "least s with b <= " + g17(target));
        }
        rep.conclusion("b(" + g17(s_cut) + ") <= " + g17(b));
        output.emit(rep.render(ok));
        return 0;
    }

    ReportPtr rep;
    std::string cmd_name;
    if (sub == c_even) {
        if (kernel.empty()) kernel = "h1";
        KernelPtr k = make_kernel(kernel);
        bc_report* raw = nullptr;
        if (bc_status st = bc_even_chain(k.get(), dim, sigma, width, &raw); st != BC_OK)
            return die(st, "even-constant");
        rep.reset(raw);
        cmd_name = "even-constant";
    } else if (sub == c_odd) {
        if (kernel.empty()) kernel = "h2";
        KernelPtr k = make_kernel(kernel);
        bc_report* raw = nullptr;
        if (bc_status st = bc_odd_chain(k.get(), dim, sigma, width, degree, &raw); st != BC_OK)
            return die(st, "odd-constant");
        rep.reset(raw);
        cmd_name = "odd-constant";
    } else if (sub == c_psc) {
        if (kernel.empty()) kernel = parity == "odd" ? "h2" : "h1";
        const bool odd = parity.empty() ? (kernel == "h2") : (parity == "odd");
        KernelPtr k = make_kernel(kernel);
        double omega0 = 0, u0 = 0;
        int deg = 0;
        if (bc_status st = bc_psc_scale(k.get(), odd ? 1 : 0, epsilon, cap_n, &omega0, &u0, &deg);
            st != BC_OK)
            return die(st, "psc-scale");
        TextReport trep("psc-scale", now_ms(t0));
        trep.info("kernel", kernel);
        trep.info("parity", odd ? "odd" : "even");
        trep.info("config", prov);
        trep.field("omega0", omega0, 0, "upper-bound",
                   "index vanishing scale; trivial at propagation omega0/sqrt(c)");
        trep.field("u0", u0, 0, "upper-bound", "frequency threshold of the unscaled kernel");
        trep.field("degree", deg, 0, "two-sided", "polynomial degree in the propagation product");
        trep.conclusion("omega0 <= " + g17(omega0) + "; independent of the underlying space");
        output.emit(trep.render(true));
        return 0;
    } else if (sub == c_opt) {
        if (kernel.empty()) kernel = "family:sinc-power:k=3..16";
        const bool odd = parity == "odd";
        bc_report* raw = nullptr;
        if (bc_status st = bc_optimize(kernel.c_str(), odd ? 1 : 0, iters, seed,
                                       trace_path.empty() ? nullptr : trace_path.c_str(), &raw);
            st != BC_OK)
            return die(st, "optimize");
        rep.reset(raw);
        cmd_name = "optimize";
    } else if (sub == c_ver) {
        bc_report* raw = nullptr;
        const int gap_trials = iters >= 5 ? iters / 5 : 1;
        if (bc_status st = bc_oracle_suite(seed, iters, iters, gap_trials, &raw); st != BC_OK)
            return die(st, "verify-oracle");
        rep.reset(raw);
        cmd_name = "verify-oracle";
    }

    if (rep) {
        char* text = bc_report_render(rep.get());
        std::ostringstream os;
        os << text;
        os << "config: " << prov << "\n";
        os << "wall-ms: " << g17(now_ms(t0)) << "\n";
        bc_string_free(text);
        output.emit(os.str());
        return bc_report_success(rep.get()) ? 0 : 1;
    }
    return 2;
}
