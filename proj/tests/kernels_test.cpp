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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qlga/kernels.hpp"
#include "qlga/rng.hpp"

using namespace qlga;
using kern::cplx;

namespace {

std::vector<cplx> random_state(int nq, Rng& rng) {
    std::vector<cplx> a(std::uint64_t{1} << nq);
    double norm = 0.0;
    for (auto& v : a) {
        v = {rng.next_double() - 0.5, rng.next_double() - 0.5};
        norm += std::norm(v);
    }
    double scale = 1.0 / std::sqrt(norm);
    for (auto& v : a) v *= scale;
    return a;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("scalar and simd kernels agree" * doctest::skip(!kern::avx2_supported())) {
    const auto& sc = kern::scalar_ops();
    const auto& vec = kern::avx2_ops();
    Rng rng(2024);
    for (int nq = 2; nq <= 10; ++nq) {
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<cplx> ref = random_state(nq, rng);
            std::vector<cplx> alt = ref;
            int target = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(nq)));
            std::uint64_t cmask = 0, cval = 0;
            if (nq > 1 && trial % 2 == 1) {
                int cq = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(nq)));
                if (cq != target) {
                    cmask = std::uint64_t{1} << cq;
                    if (rng.next_below(2) == 0) cval = cmask;
                }
            }
            cplx m[4] = {{rng.next_double(), rng.next_double()},
                         {rng.next_double(), rng.next_double()},
                         {rng.next_double(), rng.next_double()},
                         {rng.next_double(), rng.next_double()}};
            sc.apply_matrix2(ref.data(), nq, target, cmask, cval, m);
            vec.apply_matrix2(alt.data(), nq, target, cmask, cval, m);
            CHECK(max_diff(ref, alt) == 0.0);

            sc.apply_h(ref.data(), nq, target, cmask, cval);
            vec.apply_h(alt.data(), nq, target, cmask, cval);
            CHECK(max_diff(ref, alt) == 0.0);

            cplx d0{std::cos(0.3), std::sin(0.3)}, d1{std::cos(-0.7), std::sin(-0.7)};
            sc.apply_diag2(ref.data(), nq, target, cmask, cval, d0, d1);
            vec.apply_diag2(alt.data(), nq, target, cmask, cval, d0, d1);
            CHECK(max_diff(ref, alt) == 0.0);

            CHECK(std::abs(sc.norm_sq(ref.data(), ref.size()) - vec.norm_sq(alt.data(), alt.size())) < 1e-14);
        }
    }
}

TEST_CASE("kernel backend selection") {
    kern::Backend before = kern::active_backend();
    CHECK(kern::set_backend(kern::Backend::scalar));
    CHECK(kern::active_backend() == kern::Backend::scalar);
    if (kern::avx2_supported()) {
        CHECK(kern::set_backend(kern::Backend::avx2));
        CHECK(kern::active_backend() == kern::Backend::avx2);
    }
    kern::set_backend(before);
}

TEST_CASE("kernels: control masks gate the right subspace") {
    // CX via apply_x with a closed control: |10> -> |11>, |00> untouched
    std::vector<cplx> a(4, cplx{0.0, 0.0});
    a[2] = 1.0;
    kern::scalar_ops().apply_x(a.data(), 2, 0, 0b10, 0b10);
    CHECK(a[3] == cplx{1.0, 0.0});
    CHECK(a[2] == cplx{0.0, 0.0});

    // open control: fires when the control bit is 0
    std::vector<cplx> b(4, cplx{0.0, 0.0});
    b[0] = 1.0;
    kern::scalar_ops().apply_x(b.data(), 2, 0, 0b10, 0b00);
    CHECK(b[1] == cplx{1.0, 0.0});

    // swap exchanges |01> and |10>
    std::vector<cplx> s(4, cplx{0.0, 0.0});
    s[1] = 1.0;
    kern::scalar_ops().apply_swap(s.data(), 2, 0, 1, 0, 0);
    CHECK(s[2] == cplx{1.0, 0.0});
}
