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

#include "qlga/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qlga {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool self_inverse(const Gate& g) {
    switch (g.kind) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::SWAP:
            return true;
        default:
            return false;
    }
}

bool inverse_pair(const Gate& a, const Gate& b) {
    if (a.kind != b.kind || a.targets != b.targets || a.controls != b.controls) return false;
    if (self_inverse(a)) return true;
    if (a.kind == GateKind::RZ) return a.angle == -b.angle;
    return false;
}

// Role of a qubit inside a gate: controls and RZ targets are diagonal, other
// targets flip. Two gates commute when every shared qubit is diagonal in both.
enum class Role { none, diag, flip };

Role role_of(const Gate& g, int q) {
    for (const Control& c : g.controls)
        if (c.qubit == q) return Role::diag;
    for (int t : g.targets)
        if (t == q) return g.kind == GateKind::RZ ? Role::diag : Role::flip;
    return Role::none;
}

bool commute(const Gate& a, const Gate& b) {
    auto qubits = [](const Gate& g) {
        std::vector<int> qs(g.targets);
        for (const Control& c : g.controls) qs.push_back(c.qubit);
        return qs;
    };
    for (int q : qubits(a)) {
        Role ra = role_of(a, q), rb = role_of(b, q);
        if (rb == Role::none) continue;
        if (ra == Role::diag && rb == Role::diag) continue;
        return false;
    }
    return true;
}

// Removes pairs that cancel after commuting one past intervening gates.
void cancellation_pass(std::vector<Gate>& gates) {
    for (int round = 0; round < 4; ++round) {
        std::vector<Gate> out;
        out.reserve(gates.size());
        bool changed = false;
        for (const Gate& g : gates) {
            bool cancelled = false;
            for (std::size_t back = out.size(); back-- > 0;) {
                const Gate& p = out[back];
                if (inverse_pair(p, g)) {
                    out.erase(out.begin() + static_cast<std::ptrdiff_t>(back));
                    cancelled = true;
                    changed = true;
                    break;
                }
                if (!commute(p, g)) break;
            }
            if (!cancelled) out.push_back(g);
        }
        gates.swap(out);
        if (!changed) break;
    }
}

class Lowerer {
  public:
    Lowerer(const RegisterLayout& layout, const std::string& ancilla_block) {
        for (const auto& [name, width] : layout.blocks()) {
            if (name == ancilla_block) {
                for (int i = 0; i < width; ++i) ancilla_.push_back(layout.bit(name, i));
            }
        }
    }

    // Stage one: everything becomes {plain 1q, CX, closed-closed CCX}.
    void lower(const Gate& g) {
        switch (g.kind) {
            case GateKind::X:
                lower_x(g.controls, g.targets[0], g);
                return;
            case GateKind::SWAP:
                lower_swap(g);
                return;
            case GateKind::H:
                if (g.controls.empty()) {
                    out_.push_back(g);
                } else {
                    lower_mch(g);
                }
                return;
            case GateKind::RZ:
            case GateKind::SX:
                if (!g.controls.empty())
                    throw std::invalid_argument("decompose: controlled " +
                                                std::string(gate_kind_name(g.kind)) +
                                                " is not supported: " + g.to_text());
                out_.push_back(g);
                return;
        }
    }

    std::vector<Gate> take() { return std::move(out_); }

  private:
    // X conjugation turning open controls into closed ones.
    void with_closed_controls(const std::vector<Control>& controls, auto&& body) {
        std::vector<int> flipped;
        for (const Control& c : controls)
            if (!c.closed) flipped.push_back(c.qubit);
        for (int q : flipped) out_.push_back(Gate::x(q));
        std::vector<int> closed;
        closed.reserve(controls.size());
        for (const Control& c : controls) closed.push_back(c.qubit);
        body(closed);
        for (int q : flipped) out_.push_back(Gate::x(q));
    }

    void lower_x(const std::vector<Control>& controls, int target, const Gate& origin) {
        if (controls.empty()) {
            out_.push_back(Gate::x(target));
            return;
        }
        with_closed_controls(controls, [&](const std::vector<int>& cs) {
            emit_closed_mcx(cs, target, origin);
        });
    }

    void emit_closed_mcx(const std::vector<int>& cs, int target, const Gate& origin) {
        if (cs.size() == 1) {
            out_.push_back(Gate::cx(cs[0], target));
            return;
        }
        if (cs.size() == 2) {
            out_.push_back(Gate::ccx(cs[0], cs[1], target));
            return;
        }
        // AND chain over clean ancillas: k controls use k-2 of them.
        std::vector<int> free = free_ancillas(cs, target);
        std::size_t need = cs.size() - 2;
        if (free.size() < need)
            throw std::invalid_argument("decompose: gate needs " + std::to_string(need) +
                                        " ancilla qubits, block has " + std::to_string(free.size()) +
                                        " free: " + origin.to_text());
        std::vector<Gate> chain;
        chain.push_back(Gate::ccx(cs[0], cs[1], free[0]));
        for (std::size_t i = 2; i + 1 < cs.size(); ++i)
            chain.push_back(Gate::ccx(free[i - 2], cs[i], free[i - 1]));
        for (const Gate& g : chain) out_.push_back(g);
        out_.push_back(Gate::ccx(free[need - 1], cs.back(), target));
        for (std::size_t i = chain.size(); i-- > 0;) out_.push_back(chain[i]);
    }

    void lower_swap(const Gate& g) {
        int a = g.targets[0], b = g.targets[1];
        if (g.controls.empty()) {
            out_.push_back(Gate::cx(a, b));
            out_.push_back(Gate::cx(b, a));
            out_.push_back(Gate::cx(a, b));
            return;
        }
        out_.push_back(Gate::cx(b, a));
        std::vector<Control> inner(g.controls);
        inner.push_back({a, true});
        lower_x(inner, b, g);
        out_.push_back(Gate::cx(b, a));
    }

    // H = RY(-pi/4) X RY(pi/4), so a controlled H is the matching controlled X
    // inside the RY conjugation.
    void lower_mch(const Gate& g) {
        int t = g.targets[0];
        emit_ry(t, kPi / 4.0);
        lower_x(g.controls, t, g);
        emit_ry(t, -kPi / 4.0);
    }

    // RY(theta) = RZ(pi/2) H RZ(theta) H RZ(-pi/2), exact including phase.
    void emit_ry(int t, double theta) {
        out_.push_back(Gate::rz(t, -kPi / 2.0));
        out_.push_back(Gate::h(t));
        out_.push_back(Gate::rz(t, theta));
        out_.push_back(Gate::h(t));
        out_.push_back(Gate::rz(t, kPi / 2.0));
    }

    std::vector<int> free_ancillas(const std::vector<int>& cs, int target) const {
        std::vector<int> free;
        for (int q : ancilla_) {
            if (q == target) continue;
            if (std::find(cs.begin(), cs.end(), q) != cs.end()) continue;
            free.push_back(q);
        }
        return free;
    }

    std::vector<int> ancilla_;
    std::vector<Gate> out_;
};

// Standard 6-CX Toffoli; T gates are RZ(pi/4) so the result differs from the
// exact Toffoli by one global phase.
void expand_ccx(const Gate& g, std::vector<Gate>& out) {
    const double t_angle = kPi / 4.0;
    int a = g.controls[0].qubit, b = g.controls[1].qubit, t = g.targets[0];
    out.push_back(Gate::h(t));
    out.push_back(Gate::cx(b, t));
    out.push_back(Gate::rz(t, -t_angle));
    out.push_back(Gate::cx(a, t));
    out.push_back(Gate::rz(t, t_angle));
    out.push_back(Gate::cx(b, t));
    out.push_back(Gate::rz(t, -t_angle));
    out.push_back(Gate::cx(a, t));
    out.push_back(Gate::rz(b, t_angle));
    out.push_back(Gate::rz(t, t_angle));
    out.push_back(Gate::h(t));
    out.push_back(Gate::cx(a, b));
    out.push_back(Gate::rz(a, t_angle));
    out.push_back(Gate::rz(b, -t_angle));
    out.push_back(Gate::cx(a, b));
}

}  // namespace

bool is_native_gate(const Gate& g) {
    if (g.kind == GateKind::SWAP) return false;
    if (g.controls.empty()) return true;
    return g.is_cx();
}

bool is_decomposed(const Circuit& c) {
    return std::all_of(c.gates.begin(), c.gates.end(), is_native_gate);
}

Circuit decompose(const Circuit& circuit, const std::string& ancilla_block) {
    Lowerer lowerer(circuit.layout, ancilla_block);
    for (const Gate& g : circuit.gates) {
        g.validate(circuit.layout.total());
        lowerer.lower(g);
    }
    std::vector<Gate> mid = lowerer.take();
    cancellation_pass(mid);

    std::vector<Gate> native;
    native.reserve(mid.size() * 4);
    for (const Gate& g : mid) {
        if (g.kind == GateKind::X && g.controls.size() == 2) {
            expand_ccx(g, native);
        } else {
            native.push_back(g);
        }
    }
    cancellation_pass(native);

    Circuit out(circuit.layout);
    out.measured = circuit.measured;
    for (Gate& g : native) out.add(std::move(g));
    return out;
}

SegmentedCircuit decompose_segmented(const Circuit& circuit, const std::string& ancilla_block) {
    SegmentedCircuit seg;
    seg.native = Circuit(circuit.layout);
    seg.native.measured = circuit.measured;
    for (const Gate& g : circuit.gates) {
        Circuit one(circuit.layout);
        one.add(g);
        Circuit chunk = decompose(one, ancilla_block);
        auto lo = static_cast<std::uint32_t>(seg.native.size());
        seg.native.append(chunk);
        seg.original.push_back(g);
        seg.ranges.emplace_back(lo, static_cast<std::uint32_t>(seg.native.size()));
        std::uint64_t own = 0;
        for (int t : g.targets) own |= std::uint64_t{1} << t;
        for (const Control& c : g.controls) own |= std::uint64_t{1} << c.qubit;
        bool scratch = false;
        for (const Gate& lowered : chunk.gates) {
            for (int t : lowered.targets) scratch |= ((own >> t) & 1) == 0;
            for (const Control& c : lowered.controls) scratch |= ((own >> c.qubit) & 1) == 0;
        }
        seg.uses_scratch.push_back(scratch);
    }
    return seg;
}

}  // namespace qlga
