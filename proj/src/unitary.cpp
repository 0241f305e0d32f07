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

#include "qlga/unitary.hpp"

#include <cmath>
#include <stdexcept>

#include "qlga/statevec.hpp"

namespace qlga {

UnitaryMatrix unitary_of(const Circuit& circuit) {
    int nq = circuit.layout.total();
    if (nq > 12) throw std::length_error("unitary_of supports at most 12 qubits");
    UnitaryMatrix u;
    u.dim = std::uint64_t{1} << nq;
    u.m.assign(u.dim * u.dim, {0.0, 0.0});
    StateVector sv(nq);
    for (std::uint64_t col = 0; col < u.dim; ++col) {
        sv.reset_basis(col);
        sv.apply(circuit);
        for (std::uint64_t row = 0; row < u.dim; ++row) u.at(row, col) = sv.amp(row);
    }
    return u;
}

double matrix_distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.m.size(); ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
    return worst;
}

double matrix_distance_up_to_phase(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch");
    std::size_t anchor = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < a.m.size(); ++i) {
        double mag = std::abs(a.m[i]);
        if (mag > best) {
            best = mag;
            anchor = i;
        }
    }
    if (best <= 0.0 || std::abs(b.m[anchor]) == 0.0) return matrix_distance(a, b);
    std::complex<double> phase = (a.m[anchor] / std::abs(a.m[anchor])) /
                                 (b.m[anchor] / std::abs(b.m[anchor]));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.m.size(); ++i)
        worst = std::max(worst, std::abs(a.m[i] - phase * b.m[i]));
    return worst;
}

double unitarity_defect(const UnitaryMatrix& u) {
    double worst = 0.0;
    for (std::uint64_t r = 0; r < u.dim; ++r) {
        for (std::uint64_t c = 0; c < u.dim; ++c) {
            std::complex<double> dot{0.0, 0.0};
            for (std::uint64_t k = 0; k < u.dim; ++k) dot += std::conj(u.at(k, r)) * u.at(k, c);
            if (r == c) dot -= 1.0;
            worst = std::max(worst, std::abs(dot));
        }
    }
    return worst;
}

}  // namespace qlga
