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

#include <cstdint>
#include <vector>

#include "qlga/d1q3_binary.hpp"
#include "qlga/gate.hpp"
#include "qlga/lga.hpp"
#include "qlga/statevec.hpp"

namespace qlga {

/// Registers of the quantum HPP model on an N x N periodic square lattice.
/// The l block holds the flat site index k = y + x*N (x in the high half),
/// c has one qubit per channel, a carries the branch labels.
struct HppLayout {
    int side = 0;  // N
    int n = 0;     // lattice qubits, 2*log2(N)
    RegisterLayout reg;

    explicit HppLayout(int side_sites);

    int sites() const { return side * side; }
    int half() const { return n / 2; }
    int total_qubits() const { return reg.total(); }

    int lbit(int i) const { return reg.bit("l", i); }
    int cbit(int i) const { return reg.bit("c", i); }
    int abit(int i) const { return reg.bit("a", i); }
    int ancbit(int i) const { return reg.bit("anc", i); }

    std::vector<int> x_bits() const;  // high half of l
    std::vector<int> y_bits() const;  // low half of l
    std::vector<int> measured() const;
};

/// Uniform site superposition with channel occupancies written into c.
Circuit build_initialization_hpp(const HppLayout& layout, const LatticeState& occ);

/// The sigma permutation: |1010>_c <-> |0101>_c, identity elsewhere; a1 is
/// the restored scratch qubit.
Circuit build_collision_hpp(const HppLayout& layout);

/// H on a2/a3 plus four controlled swaps against a1. Branches are paired so
/// the literal propagation shifts below move each channel along its lattice
/// velocity: 00 <-> c2 (+y), 10 <-> c4 (-y), 01 <-> c1 (+x), 11 <-> c3 (-x).
Circuit build_mapping_hpp(const HppLayout& layout);

/// Branch-selected 2D shift of the flat index: +1 for a2a3 = 00, -1 for 10,
/// +N for 01, -N for 11. The +-1 shifts wrap inside a column's y coordinate;
/// the +-N shifts wrap x. Built as the y-half +-1 shift conjugated by
/// a3-controlled swaps of the x and y halves. Requires N >= 4.
Circuit build_propagation_hpp(const HppLayout& layout);

Circuit build_dynamics_hpp(const HppLayout& layout);
Circuit build_step_circuit_hpp(const HppLayout& layout, const LatticeState& occ);

/// Decode: every branch is meaningful (no junk branch); an a1 = 1 outcome in
/// branch b places that branch's channel at the measured site.
DecodeResult decode_shots_hpp(const ShotHistogram& hist, const HppLayout& layout,
                              int mass_budget);
DecodeResult decode_support_hpp(const SupportTable& support, const HppLayout& layout);

DecodeResult hpp_step_exact(const LatticeState& field, const HppLayout& layout);

}  // namespace qlga
