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

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "qlga/kernels.hpp"

namespace qlga::kern {

namespace {

// Enumerates indices whose `fixed` bits are zero with the carry trick:
// next = ((x | fixed) + 1) & ~fixed. Calls fn(i0) with control bits filled in.
template <class Fn>
inline void for_each_base(int nq, std::uint64_t fixed, std::uint64_t cval, Fn&& fn) {
    std::uint64_t count = (std::uint64_t{1} << nq) >> std::popcount(fixed);
    std::uint64_t x = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
        fn(x | cval);
        x = ((x | fixed) + 1) & ~fixed;
    }
}

// Complex product written out so the scalar and SIMD paths share the same
// operation order (no library/compiler re-association).
inline cplx cmul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

void s_apply_matrix2(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval,
                     const cplx* m) {
    const std::uint64_t t = std::uint64_t{1} << target;
    for_each_base(nq, cmask | t, cval, [&](std::uint64_t i0) {
        const std::uint64_t i1 = i0 | t;
        const cplx a0 = a[i0], a1 = a[i1];
        a[i0] = cmul(m[0], a0) + cmul(m[1], a1);
        a[i1] = cmul(m[2], a0) + cmul(m[3], a1);
    });
}

void s_apply_h(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval) {
    const double inv_sqrt2 = 0.70710678118654752440;
    const std::uint64_t t = std::uint64_t{1} << target;
    for_each_base(nq, cmask | t, cval, [&](std::uint64_t i0) {
        const std::uint64_t i1 = i0 | t;
        const cplx a0 = a[i0], a1 = a[i1];
        a[i0] = (a0 + a1) * inv_sqrt2;
        a[i1] = (a0 - a1) * inv_sqrt2;
    });
}

void s_apply_diag2(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval, cplx d0,
                   cplx d1) {
    const std::uint64_t t = std::uint64_t{1} << target;
    for_each_base(nq, cmask | t, cval, [&](std::uint64_t i0) {
        const std::uint64_t i1 = i0 | t;
        a[i0] = cmul(d0, a[i0]);
        a[i1] = cmul(d1, a[i1]);
    });
}

void s_apply_x(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval) {
    const std::uint64_t t = std::uint64_t{1} << target;
    const std::uint64_t fixed = cmask | t;
    const int tz = std::countr_zero(fixed);
    if (tz >= 2) {
        // contiguous blocks below the lowest fixed bit: swap whole runs
        const std::uint64_t run = std::uint64_t{1} << tz;
        const std::uint64_t outer = fixed | (run - 1);
        std::uint64_t count = (std::uint64_t{1} << nq) >> std::popcount(outer);
        std::uint64_t x = 0;
        for (std::uint64_t k = 0; k < count; ++k) {
            std::uint64_t i0 = x | cval;
            std::swap_ranges(a + i0, a + i0 + run, a + (i0 | t));
            x = ((x | outer) + 1) & ~outer;
        }
        return;
    }
    for_each_base(nq, fixed, cval, [&](std::uint64_t i0) { std::swap(a[i0], a[i0 | t]); });
}

void s_apply_swap(cplx* a, int nq, int t0, int t1, std::uint64_t cmask, std::uint64_t cval) {
    const std::uint64_t m0 = std::uint64_t{1} << t0;
    const std::uint64_t m1 = std::uint64_t{1} << t1;
    for_each_base(nq, cmask | m0 | m1, cval,
                  [&](std::uint64_t base) { std::swap(a[base | m0], a[base | m1]); });
}

double s_norm_sq(const cplx* a, std::uint64_t dim) {
    double s = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i)
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

}  // namespace

const KernelOps& scalar_ops() {
    static const KernelOps ops{"scalar", s_apply_matrix2, s_apply_h, s_apply_diag2,
                               s_apply_x,  s_apply_swap, s_norm_sq};
    return ops;
}

}  // namespace qlga::kern
