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

#include "qlga/gate.hpp"
#include "qlga/lga.hpp"
#include "qlga/statevec.hpp"

namespace qlga {

/// Register plan of the binary-encoded D1Q3 circuits: lattice block l of n
/// qubits (N = 2^n sites), channel block c (c1 right, c2 left, c3 rest),
/// branch block a, and enough ancillas for the shift carries and the AND
/// chains of the decomposition (max(1, n-1)).
struct D1q3Layout {
    int n = 0;
    RegisterLayout reg;

    explicit D1q3Layout(int lattice_qubits);

    int sites() const { return 1 << n; }
    int anc_width() const { return reg.width("anc"); }
    int total_qubits() const { return reg.total(); }

    int lbit(int i) const { return reg.bit("l", i); }  // i = 0 is l_1 (MSB)
    int cbit(int i) const { return reg.bit("c", i); }
    int abit(int i) const { return reg.bit("a", i); }
    int ancbit(int i) const { return reg.bit("anc", i); }

    std::vector<int> lbits() const { return reg.bits("l"); }
    /// Measured qubits: l then a1 a2 a3, so outcome keys read
    /// site:a1:a2:a3 from most to least significant bit.
    std::vector<int> measured() const;
};

/// Maps |0...0> to the uniform site superposition with each site's channel
/// pattern written into c: Hadamards on l, then one l-controlled X per
/// occupied (site, channel). Exactly N nonzero amplitudes of 1/sqrt(N).
Circuit build_initialization(const D1q3Layout& layout, const LatticeState& occ);

/// Exchanges |110>_c and |001>_c, fixing the other six channel states.
Circuit build_collision(const D1q3Layout& layout);

enum class MappingVariant { swap, nonswap };

/// swap: H on a2/a3 plus three controlled swaps against a1, labelling the
/// branches a2a3 = 00/10/01 with channels c1/c2/c3 and leaving 11 as the
/// junk branch. nonswap: the Hadamard-based junk-free alternative, kept for
/// experimentation; its output is not decoded by this module.
Circuit build_mapping(const D1q3Layout& layout, MappingVariant variant = MappingVariant::swap);

/// Branch-selected lattice shift: a2a3 = 00 increments the l register by one
/// (mod N), 10 decrements, 01 and 11 leave it alone; c untouched, ancillas
/// restored. Requires n >= 2.
Circuit build_propagation(const D1q3Layout& layout);

/// Collision + mapping(swap) + propagation, the field-independent part of a
/// time step.
Circuit build_dynamics(const D1q3Layout& layout);

/// Full one-step circuit with the measured qubit list filled in.
Circuit build_step_circuit(const D1q3Layout& layout, const LatticeState& occ);

/// Conserved totals of the field feeding a step; collisions trade two movers
/// against one rest, so only the total mass constrains the decode.
struct ParticleBudget {
    int right = 0;
    int left = 0;
    int rest = 0;

    int mass() const { return right + left + 2 * rest; }
    static ParticleBudget of(const LatticeState& field);
};

struct DecodeResult {
    LatticeState field;
    double junk_fraction = 0.0;
    /// All outcomes were junk; the caller keeps its previous field.
    bool no_information = false;
};

/// Sampled decode: junk branch outcomes (a2a3 = 11) are dropped, outcomes
/// with a1 = 1 are ranked by count (ties by ascending key) and accepted --
/// rest hits at mass 2, movers at 1 -- until the budget is spent.
DecodeResult decode_shots(const ShotHistogram& hist, const D1q3Layout& layout,
                          ParticleBudget budget);

/// Infinite-shot decode from the exact support: every surviving a1 = 1
/// outcome in a non-junk branch is a particle.
DecodeResult decode_support(const SupportTable& support, const D1q3Layout& layout);

/// One noiseless time step through the circuits with infinite-shot decode.
DecodeResult d1q3_binary_step_exact(const LatticeState& field, const D1q3Layout& layout);

}  // namespace qlga
