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

#include <string>

#include "qlga/gate.hpp"

namespace qlga {

/// True for gates in the native set: uncontrolled 1-qubit gates and CX.
bool is_native_gate(const Gate& g);
bool is_decomposed(const Circuit& c);

/// Rewrites the circuit into the native set {1-qubit gates, CX}.
///
/// Multi-controlled X uses an AND chain of Toffolis over clean qubits of
/// `ancilla_block` (k controls need k-2 ancillas), Toffoli the standard 6-CX
/// construction, SWAP three CX, controlled SWAP two CX around a higher
/// Toffoli, controlled H an RY(pi/4) conjugation of the matching MCX. Open
/// controls become X conjugations. A cancellation pass removes gate pairs
/// that annihilate once the chains are laid out; the realized unitary matches
/// the input up to one global phase, with ancillas returned to |0>.
///
/// Throws std::invalid_argument when a gate needs more ancillas than the
/// block has (the message names the gate), or on controlled RZ/SX.
Circuit decompose(const Circuit& circuit, const std::string& ancilla_block = "anc");

/// Decomposition that remembers which native gates came from which input
/// gate. Each input gate's native chunk realizes it exactly up to a global
/// phase (cancellation runs within chunks only), so a simulator can apply the
/// original gate in one pass wherever nothing needs to be inserted inside
/// the chunk.
struct SegmentedCircuit {
    Circuit native;
    std::vector<Gate> original;                            // one per segment
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;  // native [lo, hi)
    /// Chunks that borrowed scratch ancillas (AND chains): these equal their
    /// gate only on the clean-ancilla subspace. All other chunks equal it on
    /// the whole space.
    std::vector<bool> uses_scratch;
};

SegmentedCircuit decompose_segmented(const Circuit& circuit,
                                     const std::string& ancilla_block = "anc");

}  // namespace qlga
