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

#include "doctest.h"
#include "qlga/statevec.hpp"
#include "qlga/unitary.hpp"
#include "test_util.hpp"

using namespace qlga;

namespace {

RegisterLayout plain(int q) { return RegisterLayout({{"q", q}}); }

}  // namespace

TEST_CASE("basis state preparation") {
    StateVector zero = new_basis_state(plain(3), 0);
    CHECK(zero.amp(0) == cplx{1.0, 0.0});
    CHECK(zero.norm_sq() == doctest::Approx(1.0));

    StateVector five = new_basis_state(plain(3), 5);
    CHECK(five.amp(5) == cplx{1.0, 0.0});
    CHECK(five.amp(0) == cplx{0.0, 0.0});

    CHECK_THROWS(new_basis_state(plain(1), 2));
}

TEST_CASE("single gates on basis states") {
    StateVector sv(1);
    sv.apply(Gate::x(0));
    CHECK(sv.amp(1) == cplx{1.0, 0.0});

    sv.reset_basis(0);
    sv.apply(Gate::h(0));
    CHECK(sv.amp(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(sv.amp(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("controlled gates follow control polarity") {
    // CX(control=q1, target=q0) on |10> -> |11>
    StateVector sv(2);
    sv.reset_basis(0b10);
    sv.apply(Gate::cx(1, 0));
    CHECK(sv.amp(0b11) == cplx{1.0, 0.0});

    // open control fires on |0>: |00> -> |01>
    sv.reset_basis(0b00);
    sv.apply(Gate::mcx({{1, false}}, 0));
    CHECK(sv.amp(0b01) == cplx{1.0, 0.0});

    // closed control stays put on |0>
    sv.reset_basis(0b00);
    sv.apply(Gate::cx(1, 0));
    CHECK(sv.amp(0b00) == cplx{1.0, 0.0});
}

TEST_CASE("gate validation rejects overlaps and bad indices") {
    StateVector sv(2);
    CHECK_THROWS(sv.apply(Gate::cx(0, 0)));
    CHECK_THROWS(sv.apply(Gate::x(5)));
    CHECK_THROWS(sv.apply(Gate::swap(1, 1)));
}

TEST_CASE("every gate kind realizes a unitary") {
    auto defect = [](const Circuit& c) { return unitarity_defect(unitary_of(c)); };
    Circuit c1(plain(1));
    c1.add(Gate::x(0));
    CHECK(defect(c1) < 1e-12);
    Circuit c2(plain(1));
    c2.add(Gate::h(0));
    CHECK(defect(c2) < 1e-12);
    Circuit c3(plain(1));
    c3.add(Gate::rz(0, 0.7));
    CHECK(defect(c3) < 1e-12);
    Circuit c4(plain(1));
    c4.add(Gate::sx(0));
    CHECK(defect(c4) < 1e-12);
    Circuit c5(plain(2));
    c5.add(Gate::swap(0, 1));
    CHECK(defect(c5) < 1e-12);
    Circuit c6(plain(3));
    c6.add(Gate::mcx({{2, true}, {1, false}}, 0));
    CHECK(defect(c6) < 1e-12);
    Circuit c7(plain(3));
    c7.add(Gate::mcswap({{2, true}}, 0, 1));
    CHECK(defect(c7) < 1e-12);
    Circuit c8(plain(2));
    c8.add(Gate::mch({{1, true}}, 0));
    CHECK(defect(c8) < 1e-12);
}

TEST_CASE("unitary_of matches reference matrices") {
    Circuit cx(plain(1));
    cx.add(Gate::x(0));
    UnitaryMatrix ux = unitary_of(cx);
    CHECK(ux.at(0, 0) == cplx{0.0, 0.0});
    CHECK(ux.at(0, 1) == cplx{1.0, 0.0});
    CHECK(ux.at(1, 0) == cplx{1.0, 0.0});

    Circuit empty(plain(2));
    UnitaryMatrix ui = unitary_of(empty);
    for (std::uint64_t r = 0; r < 4; ++r)
        for (std::uint64_t c = 0; c < 4; ++c)
            CHECK(ui.at(r, c) == (r == c ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));

    // controlled H block: identity on control-0 half, H on control-1 half
    Circuit ch(plain(2));
    ch.add(Gate::mch({{1, true}}, 0));
    UnitaryMatrix uh = unitary_of(ch);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(uh.at(0, 0).real() == doctest::Approx(1.0));
    CHECK(uh.at(2, 2).real() == doctest::Approx(s));
    CHECK(uh.at(2, 3).real() == doctest::Approx(s));
    CHECK(uh.at(3, 2).real() == doctest::Approx(s));
    CHECK(uh.at(3, 3).real() == doctest::Approx(-s));
}

TEST_CASE("norm preserved through random circuits") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        test::RandomCircuitOpts opts;
        opts.data_qubits = 6;
        opts.anc_qubits = 0;
        opts.gates = 120;
        opts.multi_controlled = false;
        Circuit c = test::random_circuit(opts, rng);
        StateVector sv(c.layout.total());
        sv.apply(c);
        CHECK(std::abs(sv.norm_sq() - 1.0) < 1e-12);
    }
}

TEST_CASE("sampling: deterministic outcomes and support") {
    StateVector sv = new_basis_state(plain(3), 0b101);
    ShotHistogram hist = sample_measurements(sv, {2, 1, 0}, 50, 42);
    REQUIRE(hist.counts.size() == 1);
    CHECK(hist.counts.at(0b101) == 50);

    // Bell pair: only 00 and 11 appear
    StateVector bell(2);
    bell.apply(Gate::h(1));
    bell.apply(Gate::cx(1, 0));
    ShotHistogram bh = sample_measurements(bell, {1, 0}, 2000, 9);
    CHECK(bh.counts.size() == 2);
    CHECK(bh.counts.count(0b00) == 1);
    CHECK(bh.counts.count(0b11) == 1);

    CHECK_THROWS(sample_measurements(sv, {}, 10, 1));
    CHECK_THROWS(sample_measurements(sv, {0, 0}, 10, 1));
}

TEST_CASE("sampling: uniform frequencies within binomial bound") {
    StateVector sv(2);
    sv.apply(Gate::h(0));
    sv.apply(Gate::h(1));
    const std::uint64_t shots = 100000;
    ShotHistogram hist = sample_measurements(sv, {1, 0}, shots, 1234);
    for (std::uint64_t k = 0; k < 4; ++k) {
        double f = static_cast<double>(hist.counts.at(k)) / static_cast<double>(shots);
        CHECK(std::abs(f - 0.25) < 0.01);  // 5 sigma ~ 0.007
    }
}

TEST_CASE("sampling: chi-square consistency at 1e5 shots") {
    // 3-qubit state with uneven spectrum
    StateVector sv(3);
    sv.apply(Gate::h(0));
    sv.apply(Gate::h(1));
    sv.apply(Gate::mch({{1, true}}, 2));
    sv.apply(Gate::rz(2, 0.3));
    std::vector<int> measured{2, 1, 0};
    SupportTable support = enumerate_support(sv, measured);
    const std::uint64_t shots = 100000;
    ShotHistogram hist = sample_measurements(sv, measured, shots, 77);
    double chi2 = 0.0;
    int df = 0;
    for (const auto& [key, p] : support.weight) {
        double expected = p * static_cast<double>(shots);
        if (expected < 5) continue;
        auto it = hist.counts.find(key);
        double observed = it == hist.counts.end() ? 0.0 : static_cast<double>(it->second);
        chi2 += (observed - expected) * (observed - expected) / expected;
        ++df;
    }
    df -= 1;
    REQUIRE(df >= 1);
    // chi-square 0.999 quantiles for df = 1..7
    const double crit[] = {10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322};
    REQUIRE(df <= 7);
    CHECK(chi2 < crit[df - 1]);
}

TEST_CASE("sampling: seed determinism and order independence") {
    StateVector sv(3);
    sv.apply(Gate::h(2));
    sv.apply(Gate::h(1));
    sv.apply(Gate::cx(1, 0));
    ShotHistogram a = sample_measurements(sv, {2, 1, 0}, 5000, 99);
    ShotHistogram b = sample_measurements(sv, {2, 1, 0}, 5000, 99);
    CHECK(a.counts == b.counts);
    ShotHistogram c = sample_measurements(sv, {2, 1, 0}, 5000, 100);
    CHECK(a.counts != c.counts);

    // Outcomes only depend on (seed, shot index): accumulating the shots in
    // reverse order reproduces the histogram bit for bit.
    std::map<std::uint64_t, std::uint64_t> reversed;
    SupportTable support = enumerate_support(sv, {2, 1, 0});
    std::vector<std::pair<std::uint64_t, double>> cumulative;
    double acc = 0.0;
    for (const auto& [key, p] : support.weight) {
        acc += p;
        cumulative.emplace_back(key, acc);
    }
    for (std::uint64_t s = 5000; s-- > 0;) {
        double u = measurement_draw(99, s) * acc;
        std::uint64_t key = cumulative.back().first;
        for (const auto& [k, edge] : cumulative) {
            if (u < edge) {
                key = k;
                break;
            }
        }
        ++reversed[key];
    }
    CHECK(reversed == a.counts);
}

TEST_CASE("support enumeration drops float dust") {
    StateVector sv(2);
    sv.set_amp(0, {std::sqrt(1.0 - 1e-30), 0.0});
    sv.set_amp(3, {1e-15, 0.0});  // |amp|^2 = 1e-30 < threshold
    SupportTable t = enumerate_support(sv, {1, 0});
    CHECK(t.weight.size() == 1);
    CHECK(t.weight.count(0) == 1);
}
