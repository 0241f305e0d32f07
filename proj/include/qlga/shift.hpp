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

#include <stdexcept>
#include <vector>

#include "qlga/gate.hpp"

namespace qlga {

/// Appends a flag-controlled +1 (mod 2^m) on `bits` (most significant first).
/// Carry ANDs ripple through `carries` (m-2 clean qubits, returned to |0>),
/// so the gate count stays linear in m: every write is a Toffoli of the flag
/// and one carry. When the flag control is inactive the register is untouched.
inline void append_controlled_increment(Circuit& c, const std::vector<int>& bits, Control flag,
                                        const std::vector<int>& carries) {
    const int m = static_cast<int>(bits.size());
    if (m < 1) throw std::invalid_argument("increment needs at least one bit");
    if (m == 1) {
        c.add(Gate::mcx({flag}, bits[0]));
        return;
    }
    if (m == 2) {
        c.add(Gate::mcx({flag, {bits[1], true}}, bits[0]));
    } else {
        if (static_cast<int>(carries.size()) < m - 2)
            throw std::invalid_argument("increment needs m-2 carry qubits");
        // carries[k-1] accumulates AND(bits[m-k-1 .. m-1]); compute up, then
        // flip each bit off its carry while uncomputing on the way down.
        c.add(Gate::ccx(bits[m - 2], bits[m - 1], carries[0]));
        for (int k = 2; k <= m - 2; ++k)
            c.add(Gate::ccx(carries[k - 2], bits[m - k - 1], carries[k - 1]));
        c.add(Gate::mcx({flag, {carries[m - 3], true}}, bits[0]));
        for (int k = m - 2; k >= 1; --k) {
            if (k == 1) c.add(Gate::ccx(bits[m - 2], bits[m - 1], carries[0]));
            else c.add(Gate::ccx(carries[k - 2], bits[m - k - 1], carries[k - 1]));
            Control hold = k == 1 ? Control{bits[m - 1], true} : Control{carries[k - 2], true};
            c.add(Gate::mcx({flag, hold}, bits[m - k - 1]));
        }
    }
    c.add(Gate::mcx({flag}, bits[m - 1]));
}

/// Flag-controlled -1 (mod 2^m): the increment run in reverse (every gate is
/// its own inverse).
inline void append_controlled_decrement(Circuit& c, const std::vector<int>& bits, Control flag,
                                        const std::vector<int>& carries) {
    Circuit tmp(c.layout);
    append_controlled_increment(tmp, bits, flag, carries);
    for (std::size_t i = tmp.gates.size(); i-- > 0;) c.add(tmp.gates[i]);
}

}  // namespace qlga
