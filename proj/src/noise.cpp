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

#include "qlga/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qlga/decompose.hpp"
#include "qlga/kernels.hpp"
#include "qlga/rng.hpp"

namespace qlga {

NoiseModel noise_preset(NoiseLevel level) {
    switch (level) {
        case NoiseLevel::none: return {0.0, 0.0, 0.0};
        case NoiseLevel::low: return {1e-5, 1e-4, 1e-4};
        case NoiseLevel::mid: return {3e-5, 2e-3, 2e-3};
        case NoiseLevel::high: return {6e-3, 2e-2, 2e-2};
    }
    return {};
}

NoiseLevel noise_level_from_name(const std::string& name) {
    if (name == "none") return NoiseLevel::none;
    if (name == "low") return NoiseLevel::low;
    if (name == "mid") return NoiseLevel::mid;
    if (name == "high") return NoiseLevel::high;
    throw std::invalid_argument("unknown noise level: " + name);
}

const char* noise_level_name(NoiseLevel level) {
    switch (level) {
        case NoiseLevel::none: return "none";
        case NoiseLevel::low: return "low";
        case NoiseLevel::mid: return "mid";
        case NoiseLevel::high: return "high";
    }
    return "?";
}

namespace {

void apply_pauli(StateVector& sv, int qubit, int pauli) {
    const auto& ops = kern::active_ops();
    cplx* a = sv.amplitudes().data();
    switch (pauli) {
        case 1:
            ops.apply_x(a, sv.num_qubits(), qubit, 0, 0);
            break;
        case 2: {  // Y
            static const cplx m[4] = {{0, 0}, {0, -1}, {0, 1}, {0, 0}};
            ops.apply_matrix2(a, sv.num_qubits(), qubit, 0, 0, m);
            break;
        }
        case 3:
            ops.apply_diag2(a, sv.num_qubits(), qubit, 0, 0, {1, 0}, {-1, 0});
            break;
        default:
            break;
    }
}

struct ErrorEvent {
    std::uint32_t gate_index;
    std::uint8_t pauli_a;  // on the target (1q) or the control qubit (CX)
    std::uint8_t pauli_b;  // on the CX target
};

// Streams 1..3 of a shot's seed drive gate errors, the measurement draw and
// readout flips respectively; stream 2 is shared with sample_measurements.
std::vector<ErrorEvent> draw_errors(const Circuit& c, const NoiseModel& model,
                                    std::uint64_t shot_seed) {
    std::vector<ErrorEvent> events;
    Rng rng(derive_seed(shot_seed, 1));
    for (std::uint32_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        if (g.is_cx()) {
            if (model.p2 > 0.0 && rng.next_double() < model.p2) {
                std::uint64_t k = rng.next_below(15) + 1;  // skip II
                events.push_back({gi, static_cast<std::uint8_t>(k / 4),
                                  static_cast<std::uint8_t>(k % 4)});
            }
        } else {
            if (model.p1 > 0.0 && rng.next_double() < model.p1) {
                std::uint64_t k = rng.next_below(3) + 1;
                events.push_back({gi, static_cast<std::uint8_t>(k), 0});
            }
        }
    }
    return events;
}

std::uint64_t sample_one(const std::vector<double>& cumulative, double total, std::uint64_t seed,
                         std::uint64_t shot) {
    double u = measurement_draw(seed, shot) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return it == cumulative.end() ? cumulative.size() - 1
                                  : static_cast<std::uint64_t>(it - cumulative.begin());
}

std::uint64_t apply_readout_flips(std::uint64_t key, std::size_t bits, double p,
                                  std::uint64_t shot_seed) {
    if (p <= 0.0) return key;
    Rng rng(derive_seed(shot_seed, 3));
    for (std::size_t b = 0; b < bits; ++b)
        if (rng.next_double() < p) key ^= std::uint64_t{1} << (bits - 1 - b);
    return key;
}

std::uint64_t outcome_of_state(const StateVector& sv, const std::vector<int>& measured,
                               std::uint64_t seed, std::uint64_t shot) {
    // Exact per-trajectory marginal; only taken for shots that drew an error.
    std::vector<double> cumulative(std::uint64_t{1} << measured.size(), 0.0);
    const auto& amps = sv.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        double p = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
        if (p == 0.0) continue;
        std::uint64_t key = 0;
        for (int q : measured) key = (key << 1) | ((i >> q) & 1);
        cumulative[key] += p;
    }
    double acc = 0.0;
    for (double& v : cumulative) {
        acc += v;
        v = acc;
    }
    return sample_one(cumulative, acc, seed, shot);
}

}  // namespace

ShotHistogram run_noisy_shots_from(const StateVector& initial, const Circuit& circuit,
                                   const NoiseModel& model, std::uint64_t shots,
                                   std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (!is_decomposed(circuit))
        throw std::invalid_argument("run_noisy_shots: circuit must be decomposed to {1q, CX}");
    if (circuit.measured.empty())
        throw std::invalid_argument("run_noisy_shots: circuit has no measured qubits");

    // Shared clean evolution; its marginal serves every error-free shot.
    StateVector clean = initial;
    clean.apply(circuit);
    std::vector<double> cumulative(std::uint64_t{1} << circuit.measured.size(), 0.0);
    {
        const auto& amps = clean.amplitudes();
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            double p = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
            if (p == 0.0) continue;
            std::uint64_t key = 0;
            for (int q : circuit.measured) key = (key << 1) | ((i >> q) & 1);
            cumulative[key] += p;
        }
        double acc = 0.0;
        for (double& v : cumulative) {
            acc += v;
            v = acc;
        }
    }
    const double total = cumulative.empty() ? 0.0 : cumulative.back();

    ShotHistogram hist;
    hist.measured = circuit.measured;
    hist.shots = shots;

    // Split shots into clean ones (served by the shared marginal) and
    // erroring ones, processed in first-error order so trajectories with a
    // late first error reuse one shared prefix evolution.
    struct Trajectory {
        std::uint64_t shot;
        std::vector<ErrorEvent> events;
    };
    std::vector<Trajectory> dirty;
    for (std::uint64_t s = 0; s < shots; ++s) {
        std::uint64_t shot_seed = derive_seed(seed, s);
        std::vector<ErrorEvent> events = draw_errors(circuit, model, shot_seed);
        if (events.empty()) {
            std::uint64_t key = sample_one(cumulative, total, seed, s);
            key = apply_readout_flips(key, circuit.measured.size(), model.p_readout, shot_seed);
            ++hist.counts[key];
        } else {
            dirty.push_back({s, std::move(events)});
        }
    }
    std::stable_sort(dirty.begin(), dirty.end(), [](const Trajectory& a, const Trajectory& b) {
        return a.events[0].gate_index < b.events[0].gate_index;
    });

    StateVector prefix = initial;       // circuit applied up to gate prefix_end
    std::uint32_t prefix_end = 0;
    StateVector work = initial;
    for (const Trajectory& traj : dirty) {
        std::uint32_t first = traj.events[0].gate_index;
        while (prefix_end <= first) prefix.apply(circuit.gates[prefix_end++]);
        work.amplitudes() = prefix.amplitudes();
        std::size_t next = 0;
        for (std::uint32_t gi = first; gi < circuit.gates.size(); ++gi) {
            const Gate& g = circuit.gates[gi];
            if (gi >= prefix_end) work.apply(g);
            while (next < traj.events.size() && traj.events[next].gate_index == gi) {
                if (g.is_cx()) {
                    apply_pauli(work, g.controls[0].qubit, traj.events[next].pauli_a);
                    apply_pauli(work, g.targets[0], traj.events[next].pauli_b);
                } else {
                    apply_pauli(work, g.targets[0], traj.events[next].pauli_a);
                }
                ++next;
            }
        }
        std::uint64_t key = outcome_of_state(work, circuit.measured, seed, traj.shot);
        key = apply_readout_flips(key, circuit.measured.size(), model.p_readout,
                                  derive_seed(seed, traj.shot));
        ++hist.counts[key];
    }
    return hist;
}

ShotHistogram run_noisy_shots(const Circuit& circuit, const NoiseModel& model,
                              std::uint64_t shots, std::uint64_t seed) {
    StateVector zero(circuit.layout.total());
    return run_noisy_shots_from(zero, circuit, model, shots, seed);
}

ShotHistogram run_noisy_shots_segmented(const StateVector& initial,
                                        const SegmentedCircuit& segmented,
                                        const NoiseModel& model, std::uint64_t shots,
                                        std::uint64_t seed) {
    const Circuit& circuit = segmented.native;
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (!is_decomposed(circuit))
        throw std::invalid_argument("run_noisy_shots: circuit must be decomposed to {1q, CX}");
    if (circuit.measured.empty())
        throw std::invalid_argument("run_noisy_shots: circuit has no measured qubits");

    // Chunks reproduce their gate up to a global phase, so marginals from the
    // original gates match the native evolution.
    StateVector clean = initial;
    for (const Gate& g : segmented.original) clean.apply(g);
    std::vector<double> cumulative(std::uint64_t{1} << circuit.measured.size(), 0.0);
    {
        const auto& amps = clean.amplitudes();
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            double p = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
            if (p == 0.0) continue;
            std::uint64_t key = 0;
            for (int q : circuit.measured) key = (key << 1) | ((i >> q) & 1);
            cumulative[key] += p;
        }
        double acc = 0.0;
        for (double& v : cumulative) {
            acc += v;
            v = acc;
        }
    }
    const double total = cumulative.empty() ? 0.0 : cumulative.back();

    ShotHistogram hist;
    hist.measured = circuit.measured;
    hist.shots = shots;

    struct Trajectory {
        std::uint64_t shot;
        std::vector<ErrorEvent> events;
    };
    std::vector<Trajectory> dirty;
    for (std::uint64_t s = 0; s < shots; ++s) {
        std::uint64_t shot_seed = derive_seed(seed, s);
        std::vector<ErrorEvent> events = draw_errors(circuit, model, shot_seed);
        if (events.empty()) {
            std::uint64_t key = sample_one(cumulative, total, seed, s);
            key = apply_readout_flips(key, circuit.measured.size(), model.p_readout, shot_seed);
            ++hist.counts[key];
        } else {
            dirty.push_back({s, std::move(events)});
        }
    }
    std::stable_sort(dirty.begin(), dirty.end(), [](const Trajectory& a, const Trajectory& b) {
        return a.events[0].gate_index < b.events[0].gate_index;
    });

    // Trajectories cross event-free chunks on the original gate in one pass.
    // That is exact for scratch-free chunks on any state; scratch-using
    // chunks (AND chains) need clean ancillas, so once an error touches an
    // ancilla or lands inside a scratch-using chunk -- either can leave the
    // ancillas dirty -- those chunks replay natively for the rest of the
    // trajectory. Shots sort by first error so the error-free prefix is one
    // shared evolution.
    std::uint64_t anc_mask = 0;
    for (const auto& [bname, bwidth] : circuit.layout.blocks())
        if (bname == "anc")
            for (int i = 0; i < bwidth; ++i)
                anc_mask |= std::uint64_t{1} << circuit.layout.bit(bname, i);
    auto event_hits_anc = [&](const Gate& g, const ErrorEvent& e) {
        if (g.is_cx()) {
            return (e.pauli_a != 0 && ((anc_mask >> g.controls[0].qubit) & 1) != 0) ||
                   (e.pauli_b != 0 && ((anc_mask >> g.targets[0]) & 1) != 0);
        }
        return ((anc_mask >> g.targets[0]) & 1) != 0;
    };

    const std::size_t num_segments = segmented.ranges.size();
    StateVector prefix = initial;  // segments [0, prefix_seg) applied
    std::size_t prefix_seg = 0;
    StateVector work = initial;
    for (const Trajectory& traj : dirty) {
        std::uint32_t first = traj.events[0].gate_index;
        std::size_t start_seg = prefix_seg;
        while (start_seg < num_segments && segmented.ranges[start_seg].second <= first)
            ++start_seg;
        while (prefix_seg < start_seg) prefix.apply(segmented.original[prefix_seg++]);
        work.amplitudes() = prefix.amplitudes();
        std::size_t next = 0;
        bool anc_dirty = false;
        for (std::size_t si = start_seg; si < num_segments; ++si) {
            auto [lo, hi] = segmented.ranges[si];
            bool has_events = next < traj.events.size() && traj.events[next].gate_index < hi;
            if (!has_events && (!segmented.uses_scratch[si] || !anc_dirty)) {
                work.apply(segmented.original[si]);
                continue;
            }
            if (has_events && segmented.uses_scratch[si]) anc_dirty = true;
            for (std::uint32_t gi = lo; gi < hi; ++gi) {
                const Gate& g = circuit.gates[gi];
                work.apply(g);
                while (next < traj.events.size() && traj.events[next].gate_index == gi) {
                    if (g.is_cx()) {
                        apply_pauli(work, g.controls[0].qubit, traj.events[next].pauli_a);
                        apply_pauli(work, g.targets[0], traj.events[next].pauli_b);
                    } else {
                        apply_pauli(work, g.targets[0], traj.events[next].pauli_a);
                    }
                    anc_dirty |= event_hits_anc(g, traj.events[next]);
                    ++next;
                }
            }
        }
        std::uint64_t key = outcome_of_state(work, circuit.measured, seed, traj.shot);
        key = apply_readout_flips(key, circuit.measured.size(), model.p_readout,
                                  derive_seed(seed, traj.shot));
        ++hist.counts[key];
    }
    return hist;
}

}  // namespace qlga
