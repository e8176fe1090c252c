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

#include "report.hpp"

#include <array>
#include <cstdio>
#include <sstream>

namespace bandcert {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Side side_from_name(const std::string& s) {
    if (s == "upper-bound") return Side::UpperBound;
    if (s == "lower-bound") return Side::LowerBound;
    return Side::TwoSided;
}

}  // namespace

const NamedBound* Report::find(const std::string& name) const {
    for (const auto& f : fields)
        if (f.name == name) return &f;
    return nullptr;
}

std::string Report::render() const {
    std::ostringstream os;
    os << "# bandcert report\n";
    os << "command: " << command << "\n";
    os << "version: " << kVersion << "\n";
    os << "wall-ms: " << g17(wall_ms) << "\n";
    os << "status: " << (success ? "ok" : "failed") << "\n";
    for (const auto& [k, v] : info) os << k << ": " << v << "\n";
    if (!budget.empty()) {
        os << "[budget]\n";
        for (const auto& b : budget) os << b.quantity << ": " << b.bound << "\n";
    }
    os << "[machine]\n";
    for (const auto& f : fields)
        os << f.name << ": " << g17(f.value.value) << " " << g17(f.value.radius) << " "
           << side_name(f.value.side) << "\n";
    os << "[notes]\n";
    for (const auto& f : fields) os << f.name << ": " << f.label << "\n";
    if (!verdict.empty()) os << "conclusion: " << verdict << "\n";
    return os.str();
}

std::string Report::render_grid(const std::vector<std::array<double, 3>>& rows) const {
    std::ostringstream os;
    os << "t,value,radius\n";
    for (const auto& r : rows)
        os << g17(r[0]) << "," << g17(r[1]) << "," << g17(r[2]) << "\n";
    return os.str();
}

std::vector<NamedBound> Report::parse_machine(const std::string& text) {
    std::vector<NamedBound> out;
    std::istringstream is(text);
    std::string line;
    bool in_machine = false;
    while (std::getline(is, line)) {
        if (line == "[machine]") {
            in_machine = true;
            continue;
        }
        if (!line.empty() && line.front() == '[') in_machine = (line == "[machine]");
        if (!in_machine || line.empty()) continue;
        const auto colon = line.find(": ");
        if (colon == std::string::npos) continue;
        NamedBound nb;
        nb.name = line.substr(0, colon);
        std::istringstream ls(line.substr(colon + 2));
        std::string side;
        double v = 0.0, r = 0.0;
        if (!(ls >> v >> r >> side)) continue;
        nb.value = CertifiedValue(v, r, side_from_name(side));
        out.push_back(nb);
    }
    return out;
}

Report report_from_chain(const ChainReport& chain, const std::string& command) {
    Report rep;
    rep.command = command;
    rep.add_info("parity", chain.parity);
    rep.add_info("kernel", chain.kernel);
    rep.add_info("budget", chain.budget.describe());
    rep.budget = chain.propagation_budget;
    rep.fields = chain.bounds;
    rep.verdict = chain.verdict;
    return rep;
}

}  // namespace bandcert
