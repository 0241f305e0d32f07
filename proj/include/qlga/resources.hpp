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

#include "qlga/gate.hpp"

namespace qlga {

struct ResourceReport {
    std::int64_t cx_count = 0;
    std::int64_t one_qubit_count = 0;
    std::int64_t depth = 0;
    std::int64_t ancilla_used = 0;
};

/// Exact gate counts of a decomposed circuit. Depth is greedy: every gate
/// drops into the earliest layer free on all of its qubits. ancilla_used is
/// the number of distinct "anc" block qubits the circuit touches.
/// Throws std::invalid_argument when a non-native gate is present.
ResourceReport resource_report(const Circuit& circuit);

}  // namespace qlga
