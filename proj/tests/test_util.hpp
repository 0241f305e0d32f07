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

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qlga/gate.hpp"
#include "qlga/lga.hpp"
#include "qlga/rng.hpp"
#include "qlga/statevec.hpp"
#include "qlga/unitary.hpp"

namespace qlga::test {

struct RandomCircuitOpts {
    int data_qubits = 4;
    int anc_qubits = 2;
    int gates = 20;
    bool multi_controlled = true;
};

// Random circuit over a {data, anc} layout; gates act on data qubits only so
// the ancilla block stays clean for decomposition checks.
inline Circuit random_circuit(const RandomCircuitOpts& opts, Rng& rng) {
    Circuit c(RegisterLayout({{"d", opts.data_qubits}, {"anc", opts.anc_qubits}}));
    const int base = opts.anc_qubits;  // data block sits above the anc block
    auto pick_distinct = [&](int count) {
        std::vector<int> qs;
        while (static_cast<int>(qs.size()) < count) {
            int q = base + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(opts.data_qubits)));
            bool dup = false;
            for (int other : qs) dup |= other == q;
            if (!dup) qs.push_back(q);
        }
        return qs;
    };
    auto controls_from = [&](const std::vector<int>& qs, std::size_t from) {
        std::vector<Control> cs;
        for (std::size_t i = from; i < qs.size(); ++i) cs.push_back({qs[i], rng.next_below(2) == 0});
        return cs;
    };
    for (int i = 0; i < opts.gates; ++i) {
        int kind = static_cast<int>(rng.next_below(opts.multi_controlled ? 9 : 6));
        switch (kind) {
            case 0: c.add(Gate::x(pick_distinct(1)[0])); break;
            case 1: c.add(Gate::h(pick_distinct(1)[0])); break;
            case 2: c.add(Gate::rz(pick_distinct(1)[0], rng.next_double() * 6.28318 - 3.14159)); break;
            case 3: c.add(Gate::sx(pick_distinct(1)[0])); break;
            case 4: {
                if (opts.data_qubits < 2) break;
                auto qs = pick_distinct(2);
                c.add(Gate::swap(qs[0], qs[1]));
                break;
            }
            case 5: {
                if (opts.data_qubits < 2) break;
                auto qs = pick_distinct(2);
                c.add(Gate::cx(qs[0], qs[1]));
                break;
            }
            case 6: {  // MCX, up to ancilla capacity (k controls need k-2)
                int max_k = std::min(opts.data_qubits - 1, opts.anc_qubits + 2);
                if (max_k < 2) break;
                int k = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_k - 1)));
                auto qs = pick_distinct(k + 1);
                c.add(Gate::mcx(controls_from(qs, 1), qs[0]));
                break;
            }
            case 7: {  // controlled swap
                if (opts.data_qubits < 3) break;
                auto qs = pick_distinct(3);
                c.add(Gate::mcswap(controls_from(qs, 2), qs[0], qs[1]));
                break;
            }
            case 8: {  // controlled H
                if (opts.data_qubits < 2) break;
                int k = 1 + static_cast<int>(rng.next_below(
                                 static_cast<std::uint64_t>(std::min(opts.data_qubits - 1, opts.anc_qubits + 2)) ));
                auto qs = pick_distinct(k + 1);
                c.add(Gate::mch(controls_from(qs, 1), qs[0]));
                break;
            }
            default: break;
        }
    }
    return c;
}

inline LatticeState random_field(LatticeModel model, int side, double density, Rng& rng) {
    LatticeState f(model, side);
    for (int s = 0; s < f.num_sites(); ++s)
        for (int ch = 0; ch < f.channels(); ++ch) f.set(s, ch, rng.next_double() < density);
    return f;
}

// Operator restricted to `bits` (most significant first): applies the circuit
// to basis states with all other qubits |0> and reads back the same bits.
// Leakage outside that subspace is reported through *max_leak.
inline UnitaryMatrix unitary_on_bits(const Circuit& c, const std::vector<int>& bits,
                                     double* max_leak = nullptr) {
    UnitaryMatrix u;
    u.dim = std::uint64_t{1} << bits.size();
    u.m.assign(u.dim * u.dim, {0.0, 0.0});
    double leak = 0.0;
    StateVector sv(c.layout.total());
    std::uint64_t outside = ~std::uint64_t{0};
    for (int b : bits) outside &= ~(std::uint64_t{1} << b);
    outside &= (std::uint64_t{1} << c.layout.total()) - 1;
    for (std::uint64_t col = 0; col < u.dim; ++col) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if ((col >> (bits.size() - 1 - i)) & 1) idx |= std::uint64_t{1} << bits[static_cast<std::size_t>(i)];
        sv.reset_basis(idx);
        sv.apply(c);
        for (std::uint64_t full = 0; full < sv.dim(); ++full) {
            cplx a = sv.amp(full);
            if (a == cplx{0.0, 0.0}) continue;
            if ((full & outside) != 0) {
                leak = std::max(leak, std::abs(a));
                continue;
            }
            std::uint64_t row = 0;
            for (int b : bits) row = (row << 1) | ((full >> b) & 1);
            u.at(row, col) = a;
        }
    }
    if (max_leak != nullptr) *max_leak = leak;
    return u;
}

}  // namespace qlga::test
