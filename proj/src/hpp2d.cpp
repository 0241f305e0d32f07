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

#include "qlga/hpp2d.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qlga/shift.hpp"

namespace qlga {

namespace {

// Branch (a2,a3) -> channel whose content the a1 bit reports. Matches the
// mapping circuit's swap pairing and the +1/-1/+N/-N shift directions.
int hpp_branch_channel(int branch) {
    switch (branch) {
        case 0b00: return 1;  // n2, +y
        case 0b10: return 3;  // n4, -y
        case 0b01: return 0;  // n1, +x
        default: return 2;    // n3, -x
    }
}

}  // namespace

HppLayout::HppLayout(int side_sites) : side(side_sites) {
    if (side < 2 || (side & (side - 1)) != 0)
        throw std::invalid_argument("hpp side must be a power of two >= 2");
    n = 2 * std::countr_zero(static_cast<unsigned>(side));
    int w = std::max(2, half() - 2);
    reg = RegisterLayout({{"l", n}, {"c", 4}, {"a", 3}, {"anc", w}});
}

std::vector<int> HppLayout::x_bits() const {
    std::vector<int> out;
    for (int i = 0; i < half(); ++i) out.push_back(lbit(i));
    return out;
}

std::vector<int> HppLayout::y_bits() const {
    std::vector<int> out;
    for (int i = half(); i < n; ++i) out.push_back(lbit(i));
    return out;
}

std::vector<int> HppLayout::measured() const {
    std::vector<int> m = reg.bits("l");
    m.push_back(abit(0));
    m.push_back(abit(1));
    m.push_back(abit(2));
    return m;
}

Circuit build_initialization_hpp(const HppLayout& layout, const LatticeState& occ) {
    if (occ.model() != LatticeModel::HPP || occ.num_sites() != layout.sites())
        throw std::invalid_argument("occupancy field does not match layout");
    Circuit c(layout.reg);
    for (int i = 0; i < layout.n; ++i) c.add(Gate::h(layout.lbit(i)));
    for (int site = 0; site < layout.sites(); ++site) {
        std::vector<Control> site_controls;
        for (int i = 0; i < layout.n; ++i)
            site_controls.push_back({layout.lbit(i), ((site >> (layout.n - 1 - i)) & 1) != 0});
        for (int ch = 0; ch < 4; ++ch)
            if (occ.get(site, ch)) c.add(Gate::mcx(site_controls, layout.cbit(ch)));
    }
    return c;
}

Circuit build_collision_hpp(const HppLayout& layout) {
    Circuit c(layout.reg);
    int c1 = layout.cbit(0), c2 = layout.cbit(1), c3 = layout.cbit(2), c4 = layout.cbit(3);
    int a1 = layout.abit(0);
    std::vector<Control> lr{{c1, true}, {c2, false}, {c3, true}, {c4, false}};   // 1010
    std::vector<Control> ud{{c1, false}, {c2, true}, {c3, false}, {c4, true}};   // 0101
    c.add(Gate::mcx(lr, a1));
    c.add(Gate::mcx(ud, a1));
    c.add(Gate::cx(a1, c1));
    c.add(Gate::cx(a1, c2));
    c.add(Gate::cx(a1, c3));
    c.add(Gate::cx(a1, c4));
    c.add(Gate::mcx(ud, a1));
    c.add(Gate::mcx(lr, a1));
    return c;
}

Circuit build_mapping_hpp(const HppLayout& layout) {
    Circuit c(layout.reg);
    int a1 = layout.abit(0), a2 = layout.abit(1), a3 = layout.abit(2);
    c.add(Gate::h(a2));
    c.add(Gate::h(a3));
    c.add(Gate::mcswap({{a2, false}, {a3, false}}, layout.cbit(1), a1));  // 00 <-> c2
    c.add(Gate::mcswap({{a2, true}, {a3, false}}, layout.cbit(3), a1));   // 10 <-> c4
    c.add(Gate::mcswap({{a2, false}, {a3, true}}, layout.cbit(0), a1));   // 01 <-> c1
    c.add(Gate::mcswap({{a2, true}, {a3, true}}, layout.cbit(2), a1));    // 11 <-> c3
    return c;
}

Circuit build_propagation_hpp(const HppLayout& layout) {
    if (layout.side < 4) throw std::invalid_argument("hpp propagation needs N >= 4");
    Circuit c(layout.reg);
    int a2 = layout.abit(1), a3 = layout.abit(2);
    std::vector<int> xs = layout.x_bits(), ys = layout.y_bits();
    std::vector<int> carries;
    for (int i = 0; i < layout.reg.width("anc"); ++i) carries.push_back(layout.ancbit(i));

    // a3 picks the axis: swap the halves so the shifted value sits in the
    // y half, step it by the a2-selected direction, swap back.
    for (int i = 0; i < layout.half(); ++i)
        c.add(Gate::mcswap({{a3, true}}, xs[static_cast<std::size_t>(i)],
                           ys[static_cast<std::size_t>(i)]));
    append_controlled_increment(c, ys, {a2, false}, carries);
    append_controlled_decrement(c, ys, {a2, true}, carries);
    for (int i = 0; i < layout.half(); ++i)
        c.add(Gate::mcswap({{a3, true}}, xs[static_cast<std::size_t>(i)],
                           ys[static_cast<std::size_t>(i)]));
    return c;
}

Circuit build_dynamics_hpp(const HppLayout& layout) {
    Circuit c(layout.reg);
    c.append(build_collision_hpp(layout));
    c.append(build_mapping_hpp(layout));
    c.append(build_propagation_hpp(layout));
    return c;
}

Circuit build_step_circuit_hpp(const HppLayout& layout, const LatticeState& occ) {
    Circuit c = build_initialization_hpp(layout, occ);
    c.append(build_dynamics_hpp(layout));
    c.measured = layout.measured();
    return c;
}

namespace {

struct HppCandidate {
    std::uint64_t count;
    std::uint64_t key;
    int site;
    int channel;
};

template <class Weight>
void scan_hpp(const std::map<std::uint64_t, Weight>& outcomes, std::vector<HppCandidate>& cands,
              Weight& total, double scale) {
    for (const auto& [key, weight] : outcomes) {
        total += weight;
        int a3 = static_cast<int>(key & 1);
        int a2 = static_cast<int>((key >> 1) & 1);
        int a1 = static_cast<int>((key >> 2) & 1);
        if (a1 == 0) continue;
        cands.push_back({static_cast<std::uint64_t>(static_cast<double>(weight) * scale), key,
                         static_cast<int>(key >> 3), hpp_branch_channel((a2 << 1) | a3)});
    }
}

}  // namespace

DecodeResult decode_shots_hpp(const ShotHistogram& hist, const HppLayout& layout,
                              int mass_budget) {
    if (hist.counts.empty()) throw std::invalid_argument("decode_shots_hpp: empty histogram");
    if (mass_budget > 4 * layout.sites())
        throw std::invalid_argument("decode_shots_hpp: budget exceeds lattice capacity");
    std::vector<HppCandidate> cands;
    std::uint64_t total = 0;
    scan_hpp(hist.counts, cands, total, 1.0);
    std::sort(cands.begin(), cands.end(), [](const HppCandidate& a, const HppCandidate& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.key < b.key;
    });
    DecodeResult res{LatticeState::hpp(layout.side), 0.0, false};
    int remaining = mass_budget;
    for (const HppCandidate& cand : cands) {
        if (remaining == 0) break;
        res.field.set(cand.site, cand.channel, true);
        --remaining;
    }
    return res;
}

DecodeResult decode_support_hpp(const SupportTable& support, const HppLayout& layout) {
    std::vector<HppCandidate> cands;
    double total = 0.0;
    scan_hpp(support.weight, cands, total, 1e18);
    DecodeResult res{LatticeState::hpp(layout.side), 0.0, false};
    for (const HppCandidate& cand : cands) res.field.set(cand.site, cand.channel, true);
    return res;
}

DecodeResult hpp_step_exact(const LatticeState& field, const HppLayout& layout) {
    Circuit circuit = build_step_circuit_hpp(layout, field);
    StateVector sv(layout.total_qubits());
    sv.apply(circuit);
    return decode_support_hpp(enumerate_support(sv, circuit.measured), layout);
}

}  // namespace qlga
