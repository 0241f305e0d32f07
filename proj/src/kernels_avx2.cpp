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

// AVX2 kernel variants. Compiled with -mavx2 for this translation unit only;
// runtime dispatch in kernels.cpp keeps them off CPUs without the feature.
// Vector lanes hold two complex doubles as [re0, im0, re1, im1]. The fast
// path needs runs of at least two consecutive base indices, i.e. bit 0 not
// fixed by the target or a control; otherwise the scalar table is used.

#include "qlga/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>
#include <utility>

namespace qlga::kern {

namespace {

// b * v for a scalar complex b broadcast over both lanes; no FMA so results
// match the scalar kernels bit for bit.
inline __m256d cmul_bcast(__m256d br, __m256d bi, __m256d v) {
    __m256d re = _mm256_mul_pd(v, br);
    __m256d sw = _mm256_permute_pd(v, 0x5);  // [im0, re0, im1, re1]
    __m256d im = _mm256_mul_pd(sw, bi);
    return _mm256_addsub_pd(re, im);  // [re-im, re+im, ...]
}

template <class RunFn, class TailFn>
inline void for_each_run(int nq, std::uint64_t fixed, std::uint64_t cval, RunFn&& run,
                         TailFn&& tail) {
    int tz = std::countr_zero(fixed);
    std::uint64_t run_len = std::uint64_t{1} << tz;
    if (run_len >= 2) {
        std::uint64_t outer_fixed = fixed | (run_len - 1);
        std::uint64_t count = (std::uint64_t{1} << nq) >> std::popcount(outer_fixed);
        std::uint64_t x = 0;
        for (std::uint64_t k = 0; k < count; ++k) {
            run(x | cval, run_len);
            x = ((x | outer_fixed) + 1) & ~outer_fixed;
        }
    } else {
        std::uint64_t count = (std::uint64_t{1} << nq) >> std::popcount(fixed);
        std::uint64_t x = 0;
        for (std::uint64_t k = 0; k < count; ++k) {
            tail(x | cval);
            x = ((x | fixed) + 1) & ~fixed;
        }
    }
}

inline cplx cmul1(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

void v_apply_matrix2(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval,
                     const cplx* m) {
    const std::uint64_t t = std::uint64_t{1} << target;
    const __m256d m00r = _mm256_set1_pd(m[0].real()), m00i = _mm256_set1_pd(m[0].imag());
    const __m256d m01r = _mm256_set1_pd(m[1].real()), m01i = _mm256_set1_pd(m[1].imag());
    const __m256d m10r = _mm256_set1_pd(m[2].real()), m10i = _mm256_set1_pd(m[2].imag());
    const __m256d m11r = _mm256_set1_pd(m[3].real()), m11i = _mm256_set1_pd(m[3].imag());
    for_each_run(
        nq, cmask | t, cval,
        [&](std::uint64_t base, std::uint64_t run_len) {
            double* p = reinterpret_cast<double*>(a);
            for (std::uint64_t j = 0; j < run_len; j += 2) {
                std::uint64_t i0 = base + j, i1 = i0 | t;
                __m256d a0 = _mm256_loadu_pd(p + 2 * i0);
                __m256d a1 = _mm256_loadu_pd(p + 2 * i1);
                __m256d r0 = _mm256_add_pd(cmul_bcast(m00r, m00i, a0), cmul_bcast(m01r, m01i, a1));
                __m256d r1 = _mm256_add_pd(cmul_bcast(m10r, m10i, a0), cmul_bcast(m11r, m11i, a1));
                _mm256_storeu_pd(p + 2 * i0, r0);
                _mm256_storeu_pd(p + 2 * i1, r1);
            }
        },
        [&](std::uint64_t i0) {
            const std::uint64_t i1 = i0 | t;
            const cplx a0 = a[i0], a1 = a[i1];
            a[i0] = cmul1(m[0], a0) + cmul1(m[1], a1);
            a[i1] = cmul1(m[2], a0) + cmul1(m[3], a1);
        });
}

void v_apply_h(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval) {
    const double inv_sqrt2 = 0.70710678118654752440;
    const __m256d s = _mm256_set1_pd(inv_sqrt2);
    const std::uint64_t t = std::uint64_t{1} << target;
    for_each_run(
        nq, cmask | t, cval,
        [&](std::uint64_t base, std::uint64_t run_len) {
            double* p = reinterpret_cast<double*>(a);
            for (std::uint64_t j = 0; j < run_len; j += 2) {
                std::uint64_t i0 = base + j, i1 = i0 | t;
                __m256d a0 = _mm256_loadu_pd(p + 2 * i0);
                __m256d a1 = _mm256_loadu_pd(p + 2 * i1);
                _mm256_storeu_pd(p + 2 * i0, _mm256_mul_pd(_mm256_add_pd(a0, a1), s));
                _mm256_storeu_pd(p + 2 * i1, _mm256_mul_pd(_mm256_sub_pd(a0, a1), s));
            }
        },
        [&](std::uint64_t i0) {
            const std::uint64_t i1 = i0 | t;
            const cplx a0 = a[i0], a1 = a[i1];
            a[i0] = (a0 + a1) * inv_sqrt2;
            a[i1] = (a0 - a1) * inv_sqrt2;
        });
}

void v_apply_diag2(cplx* a, int nq, int target, std::uint64_t cmask, std::uint64_t cval, cplx d0,
                   cplx d1) {
    const std::uint64_t t = std::uint64_t{1} << target;
    const __m256d d0r = _mm256_set1_pd(d0.real()), d0i = _mm256_set1_pd(d0.imag());
    const __m256d d1r = _mm256_set1_pd(d1.real()), d1i = _mm256_set1_pd(d1.imag());
    if (cmask == 0 && target >= 1) {
        // one linear sweep: the target bit alternates in runs of 2^target
        double* p = reinterpret_cast<double*>(a);
        const std::uint64_t dim = std::uint64_t{1} << nq;
        for (std::uint64_t base = 0; base < dim; base += 2 * t) {
            for (std::uint64_t i = base; i < base + t; i += 2)
                _mm256_storeu_pd(p + 2 * i, cmul_bcast(d0r, d0i, _mm256_loadu_pd(p + 2 * i)));
            for (std::uint64_t i = base + t; i < base + 2 * t; i += 2)
                _mm256_storeu_pd(p + 2 * i, cmul_bcast(d1r, d1i, _mm256_loadu_pd(p + 2 * i)));
        }
        return;
    }
    for_each_run(
        nq, cmask | t, cval,
        [&](std::uint64_t base, std::uint64_t run_len) {
            double* p = reinterpret_cast<double*>(a);
            for (std::uint64_t j = 0; j < run_len; j += 2) {
                std::uint64_t i0 = base + j, i1 = i0 | t;
                __m256d a0 = _mm256_loadu_pd(p + 2 * i0);
                __m256d a1 = _mm256_loadu_pd(p + 2 * i1);
                _mm256_storeu_pd(p + 2 * i0, cmul_bcast(d0r, d0i, a0));
                _mm256_storeu_pd(p + 2 * i1, cmul_bcast(d1r, d1i, a1));
            }
        },
        [&](std::uint64_t i0) {
            const std::uint64_t i1 = i0 | t;
            a[i0] = cmul1(d0, a[i0]);
            a[i1] = cmul1(d1, a[i1]);
        });
}

double v_norm_sq(const cplx* a, std::uint64_t dim) {
    const double* p = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::uint64_t i = 0;
    for (; i + 2 <= dim; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < dim; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

}  // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

const KernelOps& avx2_ops() {
    static const KernelOps ops{"avx2",
                               v_apply_matrix2,
                               v_apply_h,
                               v_apply_diag2,
                               scalar_ops().apply_x,
                               scalar_ops().apply_swap,
                               v_norm_sq};
    return ops;
}

}  // namespace qlga::kern

#else  // non-x86 fallback

namespace qlga::kern {
bool avx2_supported() { return false; }
const KernelOps& avx2_ops() { return scalar_ops(); }
}  // namespace qlga::kern

#endif
