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

#include "qlga/d1q3_super.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlga/decompose.hpp"
#include "qlga/shift.hpp"

namespace qlga {

namespace {

constexpr std::uint8_t kRight = 0b100;
constexpr std::uint8_t kLeft = 0b010;
constexpr std::uint8_t kRest = 0b001;
constexpr std::uint8_t kMarkRestOnly = 0b111;
constexpr std::uint8_t kMarkPair = 0b000;
constexpr std::uint8_t kCollidedRest = 0b110;  // carries a1 = 1

int term_mass(std::uint8_t code) {
    switch (code) {
        case kRight:
        case kLeft: return 1;
        default: return 2;  // rest or a mark standing for mass-2 content
    }
}

}  // namespace

int MarkedEncoding::mass() const {
    int m = 0;
    for (const auto& [site, code] : terms) {
        (void)site;
        m += term_mass(code);
    }
    return m;
}

MarkedEncoding premark(const LatticeState& occ) {
    if (occ.model() != LatticeModel::D1Q3)
        throw std::invalid_argument("premark expects a D1Q3 field");
    MarkedEncoding enc;
    enc.sites = occ.num_sites();
    enc.marked = true;
    for (int site = 0; site < occ.num_sites(); ++site) {
        bool r = occ.get(site, 0), l = occ.get(site, 1), s = occ.get(site, 2);
        if (s && !r && !l) {
            enc.terms.emplace_back(site, kMarkRestOnly);
        } else if (r && l && !s) {
            enc.terms.emplace_back(site, kMarkPair);
        } else {
            if (r) enc.terms.emplace_back(site, kRight);
            if (l) enc.terms.emplace_back(site, kLeft);
            if (s) enc.terms.emplace_back(site, kRest);
        }
    }
    return enc;
}

LatticeState unmark(const MarkedEncoding& enc) {
    LatticeState field = LatticeState::d1q3(enc.sites);
    for (const auto& [site, code] : enc.terms) {
        switch (code) {
            case kRight: field.set(site, 0, true); break;
            case kLeft: field.set(site, 1, true); break;
            case kRest: field.set(site, 2, true); break;
            case kMarkRestOnly: field.set(site, 2, true); break;
            case kMarkPair:
                field.set(site, 0, true);
                field.set(site, 1, true);
                break;
            default: throw std::invalid_argument("unmark: invalid code");
        }
    }
    return field;
}

Circuit build_collision_super(const D1q3Layout& layout) {
    Circuit c(layout.reg);
    int c1 = layout.cbit(0), c2 = layout.cbit(1), c3 = layout.cbit(2);
    int a1 = layout.abit(0), a2 = layout.abit(1), a3 = layout.abit(2);
    c.add(Gate::ccx(c1, c2, a3));
    c.add(Gate::ccx(c3, a3, a2));
    c.add(Gate::ccx(c1, c2, a3));
    c.add(Gate::cx(a2, c3));
    c.add(Gate::mch({{a2, true}}, c1));
    c.add(Gate::x(c3));
    c.add(Gate::ccx(c1, a2, c2));
    c.add(Gate::mcx({{c1, false}, {c2, false}}, a3));
    c.add(Gate::ccx(c3, a3, a1));
    c.add(Gate::mcx({{c1, false}, {c2, false}}, a3));
    c.add(Gate::x(c3));
    c.add(Gate::cx(a1, c1));
    c.add(Gate::cx(a1, c2));
    return c;
}

Circuit build_propagation_super(const D1q3Layout& layout) {
    if (layout.n < 2) throw std::invalid_argument("propagation needs n >= 2 lattice qubits");
    Circuit c(layout.reg);
    int c1 = layout.cbit(0), c2 = layout.cbit(1), c3 = layout.cbit(2);
    int flag = layout.ancbit(0);
    std::vector<int> carries;
    for (int i = 1; i < layout.anc_width(); ++i) carries.push_back(layout.ancbit(i));
    std::vector<int> l = layout.lbits();

    std::vector<Control> right_sel{{c1, true}, {c2, false}, {c3, false}};  // c = 100
    c.add(Gate::mcx(right_sel, flag));
    append_controlled_increment(c, l, {flag, true}, carries);
    c.add(Gate::mcx(right_sel, flag));

    std::vector<Control> left_sel{{c1, false}, {c2, true}, {c3, false}};  // c = 010
    c.add(Gate::mcx(left_sel, flag));
    append_controlled_decrement(c, l, {flag, true}, carries);
    c.add(Gate::mcx(left_sel, flag));
    return c;
}

StateVector prepare_marked_state(const MarkedEncoding& enc, const D1q3Layout& layout) {
    if (enc.sites != layout.sites())
        throw std::invalid_argument("marked encoding does not match layout site count");
    StateVector sv(layout.total_qubits());
    if (enc.terms.empty()) return sv;  // |0...0>, never run through circuits
    sv.set_amp(0, 0.0);
    double amp = 1.0 / std::sqrt(static_cast<double>(enc.terms.size()));
    for (const auto& [site, code] : enc.terms) {
        std::uint64_t idx = layout.reg.make_index("l", static_cast<std::uint64_t>(site)) |
                            layout.reg.make_index("c", code);
        sv.set_amp(idx, amp);
    }
    return sv;
}

std::vector<int> super_measured(const D1q3Layout& layout) {
    std::vector<int> m = layout.lbits();
    m.push_back(layout.cbit(0));
    m.push_back(layout.cbit(1));
    m.push_back(layout.cbit(2));
    m.push_back(layout.abit(0));
    return m;
}

namespace {

struct SuperCandidate {
    std::uint64_t count;
    std::uint64_t key;
    int site;
    int channel;
};

// Keys read site:c1:c2:c3:a1. Channel of a key, or -1 for junk.
int super_key_channel(std::uint64_t key) {
    int a1 = static_cast<int>(key & 1);
    auto code = static_cast<std::uint8_t>((key >> 1) & 7);
    switch (code) {
        case kRight: return 0;
        case kLeft: return 1;
        case kRest: return 2;
        case kCollidedRest: return a1 == 1 ? 2 : -1;
        default: return -1;
    }
}

template <class Weight>
void scan_super(const std::map<std::uint64_t, Weight>& outcomes,
                std::vector<SuperCandidate>& cands, Weight& junk, Weight& total, double scale) {
    for (const auto& [key, weight] : outcomes) {
        total += weight;
        int ch = super_key_channel(key);
        if (ch < 0) {
            junk += weight;
            continue;
        }
        cands.push_back({static_cast<std::uint64_t>(static_cast<double>(weight) * scale), key,
                         static_cast<int>(key >> 4), ch});
    }
}

DecodeResult fill_super(std::vector<SuperCandidate>& cands, int sites, int mass_budget,
                        bool ranked) {
    if (ranked) {
        std::sort(cands.begin(), cands.end(), [](const SuperCandidate& a, const SuperCandidate& b) {
            if (a.count != b.count) return a.count > b.count;
            return a.key < b.key;
        });
    }
    DecodeResult res{LatticeState::d1q3(sites), 0.0, false};
    int remaining = ranked ? mass_budget : INT32_MAX;
    for (const SuperCandidate& cand : cands) {
        if (res.field.get(cand.site, cand.channel)) continue;  // 001 and 110 both mean rest
        int w = cand.channel == 2 ? 2 : 1;
        if (w > remaining) continue;
        res.field.set(cand.site, cand.channel, true);
        remaining -= w;
        if (remaining == 0) break;
    }
    return res;
}

}  // namespace

DecodeResult decode_shots_super(const ShotHistogram& hist, const D1q3Layout& layout,
                                int mass_budget) {
    if (hist.counts.empty()) throw std::invalid_argument("decode_shots_super: empty histogram");
    if (mass_budget > 4 * layout.sites())
        throw std::invalid_argument("decode_shots_super: budget exceeds lattice capacity");
    std::vector<SuperCandidate> cands;
    std::uint64_t junk = 0, total = 0;
    scan_super(hist.counts, cands, junk, total, 1.0);
    DecodeResult res = fill_super(cands, layout.sites(), mass_budget, true);
    res.junk_fraction = total > 0 ? static_cast<double>(junk) / static_cast<double>(total) : 0.0;
    res.no_information = total > 0 && junk == total;
    return res;
}

DecodeResult decode_support_super(const SupportTable& support, const D1q3Layout& layout) {
    std::vector<SuperCandidate> cands;
    double junk = 0.0, total = 0.0;
    scan_super(support.weight, cands, junk, total, 1e18);
    DecodeResult res = fill_super(cands, layout.sites(), 0, false);
    res.junk_fraction = total > 0.0 ? junk / total : 0.0;
    res.no_information = total > 0.0 && cands.empty() && junk > 0.999 * total;
    return res;
}

DecodeResult run_hybrid_step(const MarkedEncoding& enc, const D1q3Layout& layout,
                             std::uint64_t shots, const NoiseModel& noise, std::uint64_t seed) {
    if (enc.terms.empty())
        return {LatticeState::d1q3(enc.sites), 0.0, false};

    StateVector sv = prepare_marked_state(enc, layout);
    Circuit dynamics(layout.reg);
    dynamics.append(build_collision_super(layout));
    dynamics.append(build_propagation_super(layout));
    dynamics.measured = super_measured(layout);

    if (shots == 0) {
        sv.apply(dynamics);
        return decode_support_super(enumerate_support(sv, dynamics.measured), layout);
    }
    ShotHistogram hist =
        run_noisy_shots_segmented(sv, decompose_segmented(dynamics), noise, shots, seed);
    return decode_shots_super(hist, layout, enc.mass());
}

DecodeResult d1q3_super_step_exact(const LatticeState& field, const D1q3Layout& layout) {
    return run_hybrid_step(premark(field), layout, 0, NoiseModel{}, 0);
}

}  // namespace qlga
