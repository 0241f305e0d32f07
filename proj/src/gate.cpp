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

#include "qlga/gate.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace qlga {

const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::H: return "H";
        case GateKind::RZ: return "RZ";
        case GateKind::SX: return "SX";
        case GateKind::SWAP: return "SWAP";
    }
    return "?";
}

void Gate::validate(int num_qubits) const {
    std::size_t want_targets = kind == GateKind::SWAP ? 2 : 1;
    if (targets.size() != want_targets)
        throw std::invalid_argument(std::string(gate_kind_name(kind)) + ": wrong target count");
    for (int t : targets)
        if (t < 0 || t >= num_qubits) throw std::invalid_argument("gate target out of range");
    for (const Control& c : controls)
        if (c.qubit < 0 || c.qubit >= num_qubits)
            throw std::invalid_argument("gate control out of range");
    // No qubit may appear twice across targets and controls.
    std::uint64_t seen = 0;
    auto mark = [&](int q) {
        std::uint64_t m = std::uint64_t{1} << q;
        if (seen & m) throw std::invalid_argument("gate targets/controls overlap");
        seen |= m;
    };
    for (int t : targets) mark(t);
    for (const Control& c : controls) mark(c.qubit);
}

std::string Gate::to_text() const {
    std::ostringstream os;
    if (kind == GateKind::RZ) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "RZ(%.17g)", angle);
        os << buf;
    } else {
        os << gate_kind_name(kind);
    }
    for (int t : targets) os << ' ' << t;
    os << " |";
    for (const Control& c : controls) os << ' ' << c.qubit << (c.closed ? '+' : '-');
    return os.str();
}

Gate Gate::from_text(const std::string& line) {
    Gate g;
    std::istringstream is(line);
    std::string head;
    if (!(is >> head)) throw std::invalid_argument("empty gate line");
    if (head.rfind("RZ(", 0) == 0) {
        if (head.back() != ')') throw std::invalid_argument("malformed RZ angle: " + head);
        g.kind = GateKind::RZ;
        g.angle = std::strtod(head.c_str() + 3, nullptr);
    } else if (head == "X") {
        g.kind = GateKind::X;
    } else if (head == "H") {
        g.kind = GateKind::H;
    } else if (head == "SX") {
        g.kind = GateKind::SX;
    } else if (head == "SWAP") {
        g.kind = GateKind::SWAP;
    } else {
        throw std::invalid_argument("unknown gate kind: " + head);
    }
    std::string tok;
    bool in_controls = false;
    while (is >> tok) {
        if (tok == "|") {
            in_controls = true;
            continue;
        }
        if (!in_controls) {
            g.targets.push_back(std::stoi(tok));
        } else {
            char suffix = tok.back();
            if (suffix != '+' && suffix != '-')
                throw std::invalid_argument("control must end with + or -: " + tok);
            g.controls.push_back({std::stoi(tok.substr(0, tok.size() - 1)), suffix == '+'});
        }
    }
    if (!in_controls) throw std::invalid_argument("gate line missing '|': " + line);
    return g;
}

std::string circuit_to_text(const Circuit& c) {
    std::ostringstream os;
    for (const auto& g : c.gates) os << g.to_text() << '\n';
    return os.str();
}

Circuit circuit_from_text(const std::string& text, RegisterLayout layout) {
    Circuit c(std::move(layout));
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        c.add(Gate::from_text(line.substr(start)));
    }
    return c;
}

}  // namespace qlga
