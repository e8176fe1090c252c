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

#ifndef BANDCERT_CORE_REPORT_HPP
#define BANDCERT_CORE_REPORT_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "chains.hpp"

namespace bandcert {

inline constexpr const char* kVersion = "0.1.0";

// Human-readable report with a machine-parsable section.  Machine lines
// have the fixed layout `name: value radius side`, printed with %.17g so a
// parse reproduces the doubles bit for bit.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> info;  // provenance etc.
    std::vector<BudgetEntry> budget;
    std::vector<NamedBound> fields;
    std::string verdict;
    double wall_ms = 0.0;
    bool success = true;

    void add_info(const std::string& k, const std::string& v) { info.push_back({k, v}); }
    void add_field(const std::string& name, const std::string& label, const CertifiedValue& v) {
        fields.push_back({name, label, v});
    }
    const NamedBound* find(const std::string& name) const;

    std::string render() const;
    std::string render_grid(const std::vector<std::array<double, 3>>& rows) const;

    // Parses the [machine] section back into named certified values.
    static std::vector<NamedBound> parse_machine(const std::string& text);
};

Report report_from_chain(const ChainReport& chain, const std::string& command);

}  // namespace bandcert

#endif
