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

#include "qlga/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlga/kernels.hpp"
#include "qlga/rng.hpp"

namespace qlga {

namespace {

constexpr int kMaxQubits = 26;  // 2^26 amplitudes = 1 GiB; refuse beyond that

std::uint64_t control_mask(const Gate& g) {
    std::uint64_t m = 0;
    for (const Control& c : g.controls) m |= std::uint64_t{1} << c.qubit;
    return m;
}

std::uint64_t control_value(const Gate& g) {
    std::uint64_t v = 0;
    for (const Control& c : g.controls)
        if (c.closed) v |= std::uint64_t{1} << c.qubit;
    return v;
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::length_error("statevector capacity: need 1.." + std::to_string(kMaxQubits) +
                                " qubits, got " + std::to_string(num_qubits));
    amps_.assign(dim(), cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::reset_basis(std::uint64_t index) {
    if (index >= dim()) throw std::out_of_range("basis index out of range");
    std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
    amps_[index] = 1.0;
}

double StateVector::norm_sq() const { return kern::active_ops().norm_sq(amps_.data(), dim()); }

void StateVector::apply(const Gate& g) {
    g.validate(num_qubits_);
    const auto& ops = kern::active_ops();
    const std::uint64_t cmask = control_mask(g);
    const std::uint64_t cval = control_value(g);
    cplx* a = amps_.data();
    switch (g.kind) {
        case GateKind::X:
            ops.apply_x(a, num_qubits_, g.targets[0], cmask, cval);
            break;
        case GateKind::H:
            ops.apply_h(a, num_qubits_, g.targets[0], cmask, cval);
            break;
        case GateKind::RZ: {
            const double half = g.angle / 2.0;
            ops.apply_diag2(a, num_qubits_, g.targets[0], cmask, cval,
                            cplx{std::cos(half), -std::sin(half)},
                            cplx{std::cos(half), std::sin(half)});
            break;
        }
        case GateKind::SX: {
            // sqrt(X) = ((1+i, 1-i), (1-i, 1+i)) / 2
            const cplx m[4] = {{0.5, 0.5}, {0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}};
            ops.apply_matrix2(a, num_qubits_, g.targets[0], cmask, cval, m);
            break;
        }
        case GateKind::SWAP:
            ops.apply_swap(a, num_qubits_, g.targets[0], g.targets[1], cmask, cval);
            break;
    }
}

void StateVector::apply(const Circuit& c) {
    for (const Gate& g : c.gates) apply(g);
}

StateVector new_basis_state(const RegisterLayout& layout, std::uint64_t index) {
    StateVector sv(layout.total());
    sv.reset_basis(index);
    return sv;
}

double measurement_draw(std::uint64_t seed, std::uint64_t shot_index) {
    Rng rng(derive_seed(derive_seed(seed, shot_index), 2));
    return rng.next_double();
}

namespace {

void check_measured(const StateVector& state, const std::vector<int>& measured) {
    if (measured.empty()) throw std::invalid_argument("measured qubit list is empty");
    std::uint64_t seen = 0;
    for (int q : measured) {
        if (q < 0 || q >= state.num_qubits()) throw std::out_of_range("measured qubit out of range");
        std::uint64_t m = std::uint64_t{1} << q;
        if (seen & m) throw std::invalid_argument("measured qubits must be distinct");
        seen |= m;
    }
}

std::uint64_t outcome_key(std::uint64_t index, const std::vector<int>& measured) {
    std::uint64_t key = 0;
    for (int q : measured) key = (key << 1) | ((index >> q) & 1);
    return key;
}

// Dense marginal over the measured qubits; accumulation order is the basis
// index order, fixed regardless of kernel backend or caller threading.
std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& measured) {
    if (measured.size() > 28) throw std::length_error("too many measured qubits for a marginal");
    std::vector<double> probs(std::uint64_t{1} << measured.size(), 0.0);
    const auto& amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        double p = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
        if (p != 0.0) probs[outcome_key(i, measured)] += p;
    }
    return probs;
}

}  // namespace

ShotHistogram sample_measurements(const StateVector& state, const std::vector<int>& measured,
                                  std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    check_measured(state, measured);
    std::vector<double> probs = marginal_probabilities(state, measured);
    std::vector<double> cumulative(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cumulative[i] = acc;
    }

    ShotHistogram hist;
    hist.measured = measured;
    hist.shots = shots;
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = measurement_draw(seed, s) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::uint64_t key = it == cumulative.end() ? cumulative.size() - 1
                                                   : static_cast<std::uint64_t>(it - cumulative.begin());
        ++hist.counts[key];
    }
    return hist;
}

SupportTable enumerate_support(const StateVector& state, const std::vector<int>& measured) {
    check_measured(state, measured);
    SupportTable table;
    table.measured = measured;
    const auto& amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        double p = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
        if (p >= kSupportThreshold) table.weight[outcome_key(i, measured)] += p;
    }
    return table;
}

}  // namespace qlga
