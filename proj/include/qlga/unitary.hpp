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

#include <complex>
#include <cstdint>
#include <vector>

#include "qlga/gate.hpp"

namespace qlga {

/// Dense square matrix, row-major; entry(r, c) is the amplitude of basis
/// state r after applying the circuit to basis state c.
struct UnitaryMatrix {
    std::uint64_t dim = 0;
    std::vector<std::complex<double>> m;

    std::complex<double>& at(std::uint64_t r, std::uint64_t c) { return m[r * dim + c]; }
    const std::complex<double>& at(std::uint64_t r, std::uint64_t c) const { return m[r * dim + c]; }
};

/// Columns are the circuit applied to each basis state. Limited to 12 qubits.
UnitaryMatrix unitary_of(const Circuit& circuit);

/// Max |a - b| entrywise.
double matrix_distance(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Max entrywise distance after aligning b's global phase to a's (using the
/// largest-magnitude entry of a as the anchor).
double matrix_distance_up_to_phase(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Max |(U†U - I)| entry; 0 for an exact unitary.
double unitarity_defect(const UnitaryMatrix& u);

}  // namespace qlga
