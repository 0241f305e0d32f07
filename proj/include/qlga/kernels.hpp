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

namespace qlga::kern {

using cplx = std::complex<double>;

// Every kernel walks the basis indices whose control bits match cval
// (cval is a subset of cmask, target bits excluded from cmask) and whose
// target bit(s) take the canonical 0 value, then touches the paired
// amplitudes. `nq` is the total qubit count, amplitudes array has 2^nq
// entries.
struct KernelOps {
    const char* name;

    // [a[i0], a[i1]] <- m * [a[i0], a[i1]] with m row-major 2x2.
    void (*apply_matrix2)(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval,
                          const cplx* m);

    // Hadamard butterfly: (a0 + a1, a0 - a1) / sqrt(2).
    void (*apply_h)(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval);

    // Diagonal gate: a[i0] *= d0, a[i1] *= d1.
    void (*apply_diag2)(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval,
                        cplx d0, cplx d1);

    // Bit flip: swap(a[i0], a[i1]).
    void (*apply_x)(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval);

    // Swap of two target qubits: exchanges the |01> and |10> amplitudes.
    void (*apply_swap)(cplx* a, int nq, int t0, int t1, std::uint64_t cmask, std::uint64_t cval);

    double (*norm_sq)(const cplx* a, std::uint64_t dim);
};

enum class Backend { scalar, avx2 };

const KernelOps& scalar_ops();
bool avx2_supported();
const KernelOps& avx2_ops();

/// Active table, chosen at startup (AVX2 when the CPU has it, else scalar).
/// The QLGA_KERNEL environment variable ("scalar"/"avx2") overrides.
const KernelOps& active_ops();
Backend active_backend();
/// Returns false when the requested backend is unsupported on this CPU.
bool set_backend(Backend b);

}  // namespace qlga::kern
