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
#include <iosfwd>
#include <string>
#include <vector>

#include "qlga/layout.hpp"

namespace qlga {

/// Base gate kinds. A gate with a non-empty control list is the
/// multi-controlled form (MCX, MCSWAP, MCH, ...); CX is X with one closed
/// control.
enum class GateKind { X, H, RZ, SX, SWAP };

struct Control {
    int qubit = 0;
    bool closed = true;  // closed fires on |1>, open on |0>

    bool operator==(const Control&) const = default;
};

struct Gate {
    GateKind kind = GateKind::X;
    double angle = 0.0;  // RZ only
    std::vector<int> targets;
    std::vector<Control> controls;

    bool operator==(const Gate&) const = default;

    static Gate x(int t) { return {GateKind::X, 0.0, {t}, {}}; }
    static Gate h(int t) { return {GateKind::H, 0.0, {t}, {}}; }
    static Gate rz(int t, double angle) { return {GateKind::RZ, angle, {t}, {}}; }
    static Gate sx(int t) { return {GateKind::SX, 0.0, {t}, {}}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, 0.0, {a, b}, {}}; }
    static Gate cx(int c, int t) { return {GateKind::X, 0.0, {t}, {{c, true}}}; }
    static Gate ccx(int c1, int c2, int t) { return {GateKind::X, 0.0, {t}, {{c1, true}, {c2, true}}}; }
    static Gate mcx(std::vector<Control> cs, int t) { return {GateKind::X, 0.0, {t}, std::move(cs)}; }
    static Gate mch(std::vector<Control> cs, int t) { return {GateKind::H, 0.0, {t}, std::move(cs)}; }
    static Gate mcswap(std::vector<Control> cs, int a, int b) {
        return {GateKind::SWAP, 0.0, {a, b}, std::move(cs)};
    }

    bool is_controlled() const { return !controls.empty(); }

    /// True for X with exactly one closed control.
    bool is_cx() const {
        return kind == GateKind::X && controls.size() == 1 && controls[0].closed;
    }

    /// True for an uncontrolled single-target gate.
    bool is_plain_1q() const { return controls.empty() && targets.size() == 1; }

    /// Throws std::invalid_argument when targets/controls overlap or repeat,
    /// or the target count does not match the kind.
    void validate(int num_qubits) const;

    std::string to_text() const;
    static Gate from_text(const std::string& line);
};

struct Circuit {
    RegisterLayout layout;
    std::vector<Gate> gates;
    std::vector<int> measured;

    Circuit() = default;
    explicit Circuit(RegisterLayout l) : layout(std::move(l)) {}

    Circuit& add(Gate g) {
        g.validate(layout.total());
        gates.push_back(std::move(g));
        return *this;
    }

    Circuit& append(const Circuit& other) {
        for (const auto& g : other.gates) add(g);
        return *this;
    }

    std::size_t size() const { return gates.size(); }
};

/// Line-based text format, one gate per line: `KIND targets… | controls(±)…`.
/// Closed controls are marked `+`, open controls `-`, e.g. `X 4 | 2+ 3-`.
std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text, RegisterLayout layout);

const char* gate_kind_name(GateKind k);

}  // namespace qlga
