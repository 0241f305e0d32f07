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
#include "qlga/d1q3_binary.hpp"
#include "qlga/decompose.hpp"
#include "test_util.hpp"

using namespace qlga;

namespace {

// Weight of the state outside the anc = |0> subspace.
double anc_leakage(const StateVector& sv, const D1q3Layout& layout) {
    std::uint64_t anc_mask = 0;
    for (int i = 0; i < layout.anc_width(); ++i) anc_mask |= std::uint64_t{1} << layout.ancbit(i);
    double leak = 0.0;
    for (std::uint64_t i = 0; i < sv.dim(); ++i)
        if ((i & anc_mask) != 0) leak += std::norm(sv.amp(i));
    return leak;
}

std::uint64_t basis_index(const D1q3Layout& lay, int site, unsigned c, unsigned a) {
    return lay.reg.make_index("l", static_cast<std::uint64_t>(site)) |
           lay.reg.make_index("c", c) | lay.reg.make_index("a", a);
}

}  // namespace

TEST_CASE("layout geometry matches the ket convention") {
    D1q3Layout lay(2);
    CHECK(lay.total_qubits() == 2 + 3 + 3 + lay.anc_width());
    // |l=01, c=010, a=000>: l_2 and c_2 set
    std::uint64_t idx = basis_index(lay, 1, 0b010, 0);
    CHECK(((idx >> lay.lbit(1)) & 1) == 1);
    CHECK(((idx >> lay.lbit(0)) & 1) == 0);
    CHECK(((idx >> lay.cbit(1)) & 1) == 1);
    CHECK(lay.reg.block_value(idx, "l") == 1);
}

TEST_CASE("initialization: empty lattice is bare Hadamards") {
    D1q3Layout lay(1);
    LatticeState empty = LatticeState::d1q3(2);
    Circuit init = build_initialization(lay, empty);
    StateVector sv(lay.total_qubits());
    sv.apply(init);
    const double amp = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(sv.amp(basis_index(lay, 0, 0, 0)).real() - amp) < 1e-12);
    CHECK(std::abs(sv.amp(basis_index(lay, 1, 0, 0)).real() - amp) < 1e-12);
}

TEST_CASE("initialization: channel patterns land on their sites") {
    D1q3Layout lay(1);
    LatticeState occ = LatticeState::d1q3(2);
    occ.set(0, 0, true);  // right mover at site 0
    StateVector sv(lay.total_qubits());
    sv.apply(build_initialization(lay, occ));
    const double amp = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(sv.amp(basis_index(lay, 0, 0b100, 0)).real() - amp) < 1e-12);
    CHECK(std::abs(sv.amp(basis_index(lay, 1, 0b000, 0)).real() - amp) < 1e-12);

    D1q3Layout lay2(2);
    LatticeState occ2 = LatticeState::d1q3(4);
    occ2.set(1, 1, true);  // left mover at site 1
    StateVector sv2(lay2.total_qubits());
    sv2.apply(build_initialization(lay2, occ2));
    CHECK(std::abs(sv2.amp(basis_index(lay2, 1, 0b010, 0)).real() - 0.5) < 1e-12);

    // exactly N nonzero amplitudes of magnitude 1/sqrt(N)
    Rng rng(3);
    LatticeState occ3 = test::random_field(LatticeModel::D1Q3, 4, 0.5, rng);
    StateVector sv3(lay2.total_qubits());
    sv3.apply(build_initialization(lay2, occ3));
    int nonzero = 0;
    for (std::uint64_t i = 0; i < sv3.dim(); ++i)
        if (std::abs(sv3.amp(i)) > 1e-12) {
            ++nonzero;
            CHECK(std::abs(std::abs(sv3.amp(i)) - 0.5) < 1e-12);
        }
    CHECK(nonzero == 4);

    CHECK_THROWS(build_initialization(lay, occ3));
}

TEST_CASE("collision circuit is the Table-1 permutation") {
    D1q3Layout lay(2);
    Circuit col = build_collision(lay);
    StateVector sv(lay.total_qubits());
    for (unsigned code = 0; code < 8; ++code) {
        sv.reset_basis(basis_index(lay, 2, code, 0));
        sv.apply(col);
        unsigned want = code == 0b110 ? 0b001u : code == 0b001 ? 0b110u : code;
        CHECK(std::abs(sv.amp(basis_index(lay, 2, want, 0)) - cplx{1.0, 0.0}) < 1e-12);
    }
    // involution and permutation on the c block
    double leak = 0.0;
    std::vector<int> cbits{lay.cbit(0), lay.cbit(1), lay.cbit(2)};
    UnitaryMatrix u = test::unitary_on_bits(col, cbits, &leak);
    CHECK(leak < 1e-14);
    for (std::uint64_t r = 0; r < 8; ++r)
        for (std::uint64_t c = 0; c < 8; ++c) {
            double mag = std::abs(u.at(r, c));
            CHECK((mag < 1e-14 || std::abs(mag - 1.0) < 1e-14));
        }
    UnitaryMatrix uu = u;  // apply twice = identity
    for (std::uint64_t r = 0; r < 8; ++r)
        for (std::uint64_t c = 0; c < 8; ++c) {
            cplx dot{0, 0};
            for (std::uint64_t k = 0; k < 8; ++k) dot += u.at(r, k) * uu.at(k, c);
            CHECK(std::abs(dot - (r == c ? cplx{1, 0} : cplx{0, 0})) < 1e-12);
        }
}

TEST_CASE("mapping: single right mover enumerates the four branches") {
    D1q3Layout lay(1);
    Circuit map = build_mapping(lay);
    StateVector sv(lay.total_qubits());
    sv.reset_basis(basis_index(lay, 0, 0b100, 0));
    sv.apply(map);
    // branches (a2 a3): 00 picks up c1 in a1, 10/01 leave c untouched, 11 junk
    CHECK(std::abs(sv.amp(basis_index(lay, 0, 0b000, 0b100)).real() - 0.5) < 1e-12);
    CHECK(std::abs(sv.amp(basis_index(lay, 0, 0b100, 0b010)).real() - 0.5) < 1e-12);
    CHECK(std::abs(sv.amp(basis_index(lay, 0, 0b100, 0b001)).real() - 0.5) < 1e-12);
    CHECK(std::abs(sv.amp(basis_index(lay, 0, 0b100, 0b011)).real() - 0.5) < 1e-12);
    CHECK(anc_leakage(sv, lay) < 1e-20);
}

TEST_CASE("mapping: branch amplitudes are 1/(2 sqrt(N)) on ideal states") {
    for (int n : {1, 2, 3}) {
        D1q3Layout lay(n);
        Rng rng(100 + static_cast<std::uint64_t>(n));
        LatticeState occ = test::random_field(LatticeModel::D1Q3, 1 << n, 0.45, rng);
        StateVector sv(lay.total_qubits());
        sv.apply(build_initialization(lay, occ));
        sv.apply(build_collision(lay));
        sv.apply(build_mapping(lay));
        const double want = 1.0 / (2.0 * std::sqrt(static_cast<double>(1 << n)));
        int nonzero = 0;
        for (std::uint64_t i = 0; i < sv.dim(); ++i) {
            double mag = std::abs(sv.amp(i));
            if (mag < 1e-12) continue;
            ++nonzero;
            CHECK(std::abs(mag - want) < 1e-10);
        }
        CHECK(nonzero == 4 * (1 << n));
    }
}

TEST_CASE("mapping nonswap variant: unitary, on (c,a1,a2) only") {
    D1q3Layout lay(2);
    Circuit map = build_mapping(lay, MappingVariant::nonswap);
    CHECK(map.size() == 13);
    int mch = 0, mcx = 0, x = 0;
    for (const auto& g : map.gates) {
        if (g.kind == GateKind::H && !g.controls.empty()) ++mch;
        if (g.kind == GateKind::X && g.controls.size() >= 2) ++mcx;
        if (g.kind == GateKind::X && g.controls.empty()) ++x;
    }
    CHECK(mch == 4);
    CHECK(mcx == 5);
    CHECK(x == 4);
    double leak = 0.0;
    std::vector<int> bits{lay.cbit(0), lay.cbit(1), lay.cbit(2), lay.abit(0), lay.abit(1)};
    UnitaryMatrix u = test::unitary_on_bits(map, bits, &leak);
    CHECK(leak < 1e-14);
    CHECK(unitarity_defect(u) < 1e-12);
}

TEST_CASE("propagation: branch-selected shifts on basis states") {
    D1q3Layout lay(3);
    Circuit prop = build_propagation(lay);
    StateVector sv(lay.total_qubits());

    // a2a3 = 00: increment
    sv.reset_basis(basis_index(lay, 3, 0b010, 0b100));
    sv.apply(prop);
    CHECK(std::abs(sv.amp(basis_index(lay, 4, 0b010, 0b100)) - cplx{1, 0}) < 1e-12);

    // a2a3 = 10: decrement with wrap
    sv.reset_basis(basis_index(lay, 0, 0b000, 0b010));
    sv.apply(prop);
    CHECK(std::abs(sv.amp(basis_index(lay, 7, 0b000, 0b010)) - cplx{1, 0}) < 1e-12);

    // a2a3 = 01: rest branch unchanged
    sv.reset_basis(basis_index(lay, 5, 0b001, 0b101));
    sv.apply(prop);
    CHECK(std::abs(sv.amp(basis_index(lay, 5, 0b001, 0b101)) - cplx{1, 0}) < 1e-12);

    // a2a3 = 11: junk branch unchanged
    sv.reset_basis(basis_index(lay, 2, 0b111, 0b011));
    sv.apply(prop);
    CHECK(std::abs(sv.amp(basis_index(lay, 2, 0b111, 0b011)) - cplx{1, 0}) < 1e-12);

    // increment wraps: N-1 -> 0
    sv.reset_basis(basis_index(lay, 7, 0b000, 0b100));
    sv.apply(prop);
    CHECK(std::abs(sv.amp(basis_index(lay, 0, 0b000, 0b100)) - cplx{1, 0}) < 1e-12);

    CHECK_THROWS(build_propagation(D1q3Layout(1)));
}

TEST_CASE("propagation: exhaustive permutation check at n=2") {
    D1q3Layout lay(2);
    Circuit prop = build_propagation(lay);
    StateVector sv(lay.total_qubits());
    for (int site = 0; site < 4; ++site) {
        for (unsigned a = 0; a < 8; ++a) {
            sv.reset_basis(basis_index(lay, site, 0b010, a));
            sv.apply(prop);
            int a2 = (a >> 1) & 1, a3 = a & 1;
            int want = site;
            if (a2 == 0 && a3 == 0) want = (site + 1) % 4;
            if (a2 == 1 && a3 == 0) want = (site + 3) % 4;
            CHECK(std::abs(sv.amp(basis_index(lay, want, 0b010, a)) - cplx{1, 0}) < 1e-12);
            CHECK(anc_leakage(sv, lay) < 1e-20);
        }
    }
}

TEST_CASE("full stage chain leaves ancillas clean") {
    D1q3Layout lay(3);
    Rng rng(17);
    LatticeState occ = test::random_field(LatticeModel::D1Q3, 8, 0.4, rng);
    StateVector sv(lay.total_qubits());
    sv.apply(build_initialization(lay, occ));
    CHECK(anc_leakage(sv, lay) < 1e-20);
    sv.apply(build_collision(lay));
    CHECK(anc_leakage(sv, lay) < 1e-20);
    sv.apply(build_mapping(lay));
    CHECK(anc_leakage(sv, lay) < 1e-20);
    sv.apply(build_propagation(lay));
    CHECK(anc_leakage(sv, lay) < 1e-20);
    CHECK(std::abs(sv.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("decode: ranked budget fill") {
    D1q3Layout lay(3);
    ShotHistogram hist;
    hist.measured = lay.measured();
    hist.shots = 40;
    hist.counts[static_cast<std::uint64_t>(5 << 3) | 0b100] = 40;  // site 5, a1=1, branch 00
    DecodeResult res = decode_shots(hist, lay, {1, 0, 0});
    CHECK(res.field.get(5, 0));
    CHECK(res.field.particle_count() == 1);
    CHECK(res.junk_fraction == 0.0);

    // junk-only histogram: flagged, empty field
    ShotHistogram junk;
    junk.measured = lay.measured();
    junk.shots = 10;
    junk.counts[0b011] = 10;  // a2a3 = 11
    DecodeResult jr = decode_shots(junk, lay, {1, 0, 0});
    CHECK(jr.junk_fraction == 1.0);
    CHECK(jr.no_information);
    CHECK(jr.field.particle_count() == 0);

    CHECK_THROWS(decode_shots(ShotHistogram{}, lay, {0, 0, 0}));
    CHECK_THROWS(decode_shots(hist, lay, {40, 0, 0}));  // beyond capacity

    // budget caps acceptance: two candidate sites, budget for one mover
    ShotHistogram two;
    two.measured = lay.measured();
    two.shots = 30;
    two.counts[static_cast<std::uint64_t>(2 << 3) | 0b100] = 20;
    two.counts[static_cast<std::uint64_t>(6 << 3) | 0b100] = 10;
    DecodeResult tr = decode_shots(two, lay, {1, 0, 0});
    CHECK(tr.field.get(2, 0));
    CHECK_FALSE(tr.field.get(6, 0));

    // tie broken by ascending key
    two.counts[static_cast<std::uint64_t>(6 << 3) | 0b100] = 20;
    DecodeResult tie = decode_shots(two, lay, {1, 0, 0});
    CHECK(tie.field.get(2, 0));

    // rest weighs two mass units
    ShotHistogram rests;
    rests.measured = lay.measured();
    rests.shots = 30;
    rests.counts[static_cast<std::uint64_t>(1 << 3) | 0b101] = 20;  // rest at site 1
    rests.counts[static_cast<std::uint64_t>(3 << 3) | 0b100] = 10;  // right at site 3
    DecodeResult rr = decode_shots(rests, lay, {1, 0, 0});          // mass budget 1
    CHECK_FALSE(rr.field.get(1, 2));                                // rest does not fit
    CHECK(rr.field.get(3, 0));
}

TEST_CASE("one-step pipeline equals the classical oracle (sampled, noiseless)") {
    // single particle, 350 shots: every support point seen with high
    // probability at this seed
    D1q3Layout lay(3);
    LatticeState occ = LatticeState::d1q3(8);
    occ.set(2, 0, true);
    Circuit circuit = build_step_circuit(lay, occ);
    StateVector sv(lay.total_qubits());
    sv.apply(circuit);
    ShotHistogram hist = sample_measurements(sv, circuit.measured, 350, 20260809);
    DecodeResult res = decode_shots(hist, lay, ParticleBudget::of(occ));
    CHECK(res.field == step(occ));
}

TEST_CASE("one-step oracle equivalence across random fields") {
    Rng rng(555);
    for (int n = 2; n <= 4; ++n) {
        D1q3Layout lay(n);
        for (int trial = 0; trial < 20; ++trial) {
            LatticeState occ = test::random_field(LatticeModel::D1Q3, 1 << n, 0.4, rng);
            DecodeResult res = d1q3_binary_step_exact(occ, lay);
            CHECK(res.field == step(occ));
            CHECK(res.junk_fraction == doctest::Approx(0.25).epsilon(1e-9));
        }
    }
}

TEST_CASE("mapping+propagation keep 4N support points on ideal states") {
    D1q3Layout lay(3);
    Rng rng(8);
    LatticeState occ = test::random_field(LatticeModel::D1Q3, 8, 0.5, rng);
    StateVector sv(lay.total_qubits());
    sv.apply(build_initialization(lay, occ));
    sv.apply(build_collision(lay));
    sv.apply(build_mapping(lay));
    int nonzero = 0;
    for (std::uint64_t i = 0; i < sv.dim(); ++i)
        if (std::abs(sv.amp(i)) > 1e-12) ++nonzero;
    CHECK(nonzero == 32);
    sv.apply(build_propagation(lay));
    nonzero = 0;
    for (std::uint64_t i = 0; i < sv.dim(); ++i)
        if (std::abs(sv.amp(i)) > 1e-12) ++nonzero;
    CHECK(nonzero == 32);
}

TEST_CASE("decomposed step circuit still matches the oracle") {
    D1q3Layout lay(2);
    Rng rng(21);
    LatticeState occ = test::random_field(LatticeModel::D1Q3, 4, 0.5, rng);
    Circuit circuit = build_step_circuit(lay, occ);
    Circuit native = decompose(circuit);
    CHECK(is_decomposed(native));
    StateVector sv(lay.total_qubits());
    sv.apply(native);
    DecodeResult res = decode_support(enumerate_support(sv, native.measured), lay);
    CHECK(res.field == step(occ));
}
