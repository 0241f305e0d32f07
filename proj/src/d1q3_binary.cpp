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

#include "qlga/d1q3_binary.hpp"

#include <algorithm>
#include <stdexcept>

#include "qlga/shift.hpp"

namespace qlga {

namespace {

// Outcome keys are site:a1:a2:a3. Branch (a2,a3) identifies the channel a1
// reports on; (1,1) is the junk branch.
constexpr int kJunkBranch = 0b11;

int branch_channel(int branch) {
    switch (branch) {
        case 0b00: return 0;  // right
        case 0b10: return 1;  // left
        case 0b01: return 2;  // rest
        default: return -1;
    }
}

struct Candidate {
    std::uint64_t count;
    std::uint64_t key;
    int site;
    int channel;
};

template <class Weight>
void scan_outcomes(const std::map<std::uint64_t, Weight>& outcomes, std::vector<Candidate>& cands,
                   Weight& junk, Weight& total, double scale) {
    for (const auto& [key, weight] : outcomes) {
        total += weight;
        int a3 = static_cast<int>(key & 1);
        int a2 = static_cast<int>((key >> 1) & 1);
        int a1 = static_cast<int>((key >> 2) & 1);
        int branch = (a2 << 1) | a3;
        if (branch == kJunkBranch) {
            junk += weight;
            continue;
        }
        if (a1 == 0) continue;
        cands.push_back({static_cast<std::uint64_t>(static_cast<double>(weight) * scale), key,
                         static_cast<int>(key >> 3), branch_channel(branch)});
    }
}

}  // namespace

D1q3Layout::D1q3Layout(int lattice_qubits) : n(lattice_qubits) {
    if (n < 1) throw std::invalid_argument("d1q3 layout needs n >= 1 lattice qubits");
    int w = std::max(1, n - 1);
    reg = RegisterLayout({{"l", n}, {"c", 3}, {"a", 3}, {"anc", w}});
}

std::vector<int> D1q3Layout::measured() const {
    std::vector<int> m = lbits();
    m.push_back(abit(0));
    m.push_back(abit(1));
    m.push_back(abit(2));
    return m;
}

Circuit build_initialization(const D1q3Layout& layout, const LatticeState& occ) {
    if (occ.model() != LatticeModel::D1Q3 || occ.num_sites() != layout.sites())
        throw std::invalid_argument("occupancy field does not match layout site count");
    Circuit c(layout.reg);
    for (int i = 0; i < layout.n; ++i) c.add(Gate::h(layout.lbit(i)));
    for (int site = 0; site < layout.sites(); ++site) {
        std::vector<Control> site_controls;
        site_controls.reserve(static_cast<std::size_t>(layout.n));
        for (int i = 0; i < layout.n; ++i)
            site_controls.push_back({layout.lbit(i), ((site >> (layout.n - 1 - i)) & 1) != 0});
        for (int ch = 0; ch < 3; ++ch)
            if (occ.get(site, ch)) c.add(Gate::mcx(site_controls, layout.cbit(ch)));
    }
    return c;
}

Circuit build_collision(const D1q3Layout& layout) {
    Circuit c(layout.reg);
    int c1 = layout.cbit(0), c2 = layout.cbit(1), c3 = layout.cbit(2);
    c.add(Gate::cx(c3, c2));
    c.add(Gate::cx(c3, c1));
    c.add(Gate::ccx(c1, c2, c3));
    c.add(Gate::cx(c3, c1));
    c.add(Gate::cx(c3, c2));
    return c;
}

Circuit build_mapping(const D1q3Layout& layout, MappingVariant variant) {
    Circuit c(layout.reg);
    int c1 = layout.cbit(0), c2 = layout.cbit(1), c3 = layout.cbit(2);
    int a1 = layout.abit(0), a2 = layout.abit(1), a3 = layout.abit(2);
    if (variant == MappingVariant::swap) {
        c.add(Gate::h(a2));
        c.add(Gate::h(a3));
        c.add(Gate::mcswap({{a2, false}, {a3, false}}, c1, a1));
        c.add(Gate::mcswap({{a2, true}, {a3, false}}, c2, a1));
        c.add(Gate::mcswap({{a2, false}, {a3, true}}, c3, a1));
        return c;
    }
    // Hadamard-based mapping without swaps; uneven branch weights, no junk
    // branch, two ancilla-register qubits.
    c.add(Gate::mch({{c1, true}, {c2, true}}, a1));
    c.add(Gate::mcx({{c1, true}, {c2, true}, {a1, true}}, a2));
    c.add(Gate::mcx({{c1, true}, {c2, true}}, a1));
    c.add(Gate::x(c1));
    c.add(Gate::mch({{c3, true}, {a1, true}}, a2));
    c.add(Gate::mcx({{c1, true}, {c2, true}}, a2));
    c.add(Gate::mch({{c1, true}, {c2, true}, {c3, true}}, a1));
    c.add(Gate::x(c1));
    c.add(Gate::x(c2));
    c.add(Gate::mch({{c1, true}, {c2, true}}, a2));
    c.add(Gate::x(c1));
    c.add(Gate::mcx({{c1, true}, {c2, true}, {c3, true}}, a1));
    c.add(Gate::mcx({{c1, true}, {c2, true}, {c3, true}}, a2));
    return c;
}

Circuit build_propagation(const D1q3Layout& layout) {
    if (layout.n < 2) throw std::invalid_argument("propagation needs n >= 2 lattice qubits");
    Circuit c(layout.reg);
    int a2 = layout.abit(1), a3 = layout.abit(2);
    int flag = layout.ancbit(0);
    std::vector<int> carries;
    for (int i = 1; i < layout.anc_width(); ++i) carries.push_back(layout.ancbit(i));
    std::vector<int> l = layout.lbits();

    std::vector<Control> inc_sel{{a2, false}, {a3, false}};  // a2a3 = 00
    c.add(Gate::mcx(inc_sel, flag));
    append_controlled_increment(c, l, {flag, true}, carries);
    c.add(Gate::mcx(inc_sel, flag));

    std::vector<Control> dec_sel{{a2, true}, {a3, false}};  // a2a3 = 10
    c.add(Gate::mcx(dec_sel, flag));
    append_controlled_decrement(c, l, {flag, true}, carries);
    c.add(Gate::mcx(dec_sel, flag));
    return c;
}

Circuit build_dynamics(const D1q3Layout& layout) {
    Circuit c(layout.reg);
    c.append(build_collision(layout));
    c.append(build_mapping(layout, MappingVariant::swap));
    c.append(build_propagation(layout));
    return c;
}

Circuit build_step_circuit(const D1q3Layout& layout, const LatticeState& occ) {
    Circuit c = build_initialization(layout, occ);
    c.append(build_dynamics(layout));
    c.measured = layout.measured();
    return c;
}

ParticleBudget ParticleBudget::of(const LatticeState& field) {
    ParticleBudget b;
    for (int s = 0; s < field.num_sites(); ++s) {
        b.right += field.get(s, 0) ? 1 : 0;
        b.left += field.get(s, 1) ? 1 : 0;
        b.rest += field.get(s, 2) ? 1 : 0;
    }
    return b;
}

DecodeResult decode_shots(const ShotHistogram& hist, const D1q3Layout& layout,
                          ParticleBudget budget) {
    if (hist.counts.empty()) throw std::invalid_argument("decode_shots: empty histogram");
    const int sites = layout.sites();
    if (budget.mass() > 4 * sites)
        throw std::invalid_argument("decode_shots: budget exceeds lattice capacity");

    std::vector<Candidate> cands;
    std::uint64_t junk = 0, total = 0;
    scan_outcomes(hist.counts, cands, junk, total, 1.0);
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.key < b.key;
    });

    DecodeResult res{LatticeState::d1q3(sites), 0.0, false};
    int remaining = budget.mass();
    for (const Candidate& cand : cands) {
        int w = cand.channel == 2 ? 2 : 1;
        if (w > remaining) continue;
        res.field.set(cand.site, cand.channel, true);
        remaining -= w;
        if (remaining == 0) break;
    }
    res.junk_fraction = total > 0 ? static_cast<double>(junk) / static_cast<double>(total) : 0.0;
    res.no_information = total > 0 && junk == total;
    return res;
}

DecodeResult decode_support(const SupportTable& support, const D1q3Layout& layout) {
    std::vector<Candidate> cands;
    double junk = 0.0, total = 0.0;
    // Counts only order the sampled decode; here every survivor is kept.
    scan_outcomes(support.weight, cands, junk, total, 1e18);
    DecodeResult res{LatticeState::d1q3(layout.sites()), 0.0, false};
    for (const Candidate& cand : cands) res.field.set(cand.site, cand.channel, true);
    res.junk_fraction = total > 0.0 ? junk / total : 0.0;
    res.no_information = total > 0.0 && cands.empty() && junk > 0.999 * total;
    return res;
}

DecodeResult d1q3_binary_step_exact(const LatticeState& field, const D1q3Layout& layout) {
    Circuit circuit = build_step_circuit(layout, field);
    StateVector sv(layout.total_qubits());
    sv.apply(circuit);
    return decode_support(enumerate_support(sv, circuit.measured), layout);
}

}  // namespace qlga
