// Copyright 2026-present the qlga project
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

#include "qlga/resources.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "qlga/decompose.hpp"

namespace qlga {

ResourceReport resource_report(const Circuit& circuit) {
    ResourceReport rep;
    std::vector<std::int64_t> qubit_depth(static_cast<std::size_t>(circuit.layout.total()), 0);
    std::set<int> anc_touched;

    bool has_anc = false;
    int anc_lo = 0, anc_hi = -1;
    for (const auto& [name, width] : circuit.layout.blocks()) {
        if (name == "anc" && width > 0) {
            has_anc = true;
            anc_lo = circuit.layout.bit(name, width - 1);
            anc_hi = circuit.layout.bit(name, 0);
        }
    }

    for (const Gate& g : circuit.gates) {
        if (!is_native_gate(g))
            throw std::invalid_argument("resource_report: circuit not decomposed, found " +
                                        g.to_text());
        if (g.is_cx()) {
            ++rep.cx_count;
        } else {
            ++rep.one_qubit_count;
        }
        std::vector<int> qs(g.targets);
        for (const Control& c : g.controls) qs.push_back(c.qubit);
        std::int64_t layer = 0;
        for (int q : qs) layer = std::max(layer, qubit_depth[static_cast<std::size_t>(q)]);
        ++layer;
        for (int q : qs) {
            qubit_depth[static_cast<std::size_t>(q)] = layer;
            if (has_anc && q >= anc_lo && q <= anc_hi) anc_touched.insert(q);
        }
        rep.depth = std::max(rep.depth, layer);
    }
    rep.ancilla_used = static_cast<std::int64_t>(anc_touched.size());
    return rep;
}

}  // namespace qlga
