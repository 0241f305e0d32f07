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
#include <utility>
#include <vector>

#include "qlga/d1q3_binary.hpp"
#include "qlga/noise.hpp"

namespace qlga {

// Superposition-encoded D1Q3. One basis term per particle: the c register
// holds a channel code instead of the occupancy bitmap. Codes used here:
//   100 right mover, 010 left mover, 001 rest particle,
//   111 marks a site whose only particle is the rest particle,
//   000 marks a site holding exactly the left and right movers.
// The collision circuit resolves the marks (111 -> left/right superposition
// tagged by a2, 000 -> rest tagged by a1) and fixes the one-hot codes.

/// Classical pre-marking of an occupancy field into (site, code) basis terms.
struct MarkedEncoding {
    int sites = 0;
    bool marked = false;
    std::vector<std::pair<int, std::uint8_t>> terms;

    /// Total mass the terms carry (movers 1, rest / mark codes 2).
    int mass() const;
};

MarkedEncoding premark(const LatticeState& occ);

/// Inverse of premark on decodable content; decode(premark(occ)) == occ.
LatticeState unmark(const MarkedEncoding& enc);

/// The collision circuit on (c, a). Marked inputs with a = |000>:
/// |111>_c -> (|010>_c - |100>_c)/sqrt(2) with a2 = 1 (a left/right pair),
/// |000>_c -> |110>_c with a1 = 1 (a rest particle); one-hot and two-particle
/// codes are fixed with a restored.
Circuit build_collision_super(const D1q3Layout& layout);

/// Code-selected shift: c = 100 moves the site index up, c = 010 down,
/// everything else stays; ancillas restored.
Circuit build_propagation_super(const D1q3Layout& layout);

/// Uniform superposition of the encoding's basis terms. Built directly in the
/// statevector: these states are not uniform over the lattice block, so no
/// fixed structured circuit prepares them and general state prep is out of
/// scope here.
StateVector prepare_marked_state(const MarkedEncoding& enc, const D1q3Layout& layout);

/// Measured qubits of this variant: l, c1..c3, a1.
std::vector<int> super_measured(const D1q3Layout& layout);

DecodeResult decode_shots_super(const ShotHistogram& hist, const D1q3Layout& layout,
                                int mass_budget);
DecodeResult decode_support_super(const SupportTable& support, const D1q3Layout& layout);

/// One hybrid time step: prepare the marked state, run collision and
/// propagation (decomposed and noisy when shots > 0, exact support
/// enumeration when shots == 0), decode, and hand back the occupancy field
/// for the next step's marking.
DecodeResult run_hybrid_step(const MarkedEncoding& enc, const D1q3Layout& layout,
                             std::uint64_t shots, const NoiseModel& noise, std::uint64_t seed);

DecodeResult d1q3_super_step_exact(const LatticeState& field, const D1q3Layout& layout);

}  // namespace qlga
