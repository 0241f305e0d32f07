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
#include <string>

#include "qlga/decompose.hpp"
#include "qlga/statevec.hpp"

namespace qlga {

/// Depolarizing error rates per 1-qubit gate and per CX, plus a readout flip
/// probability per measured bit.
struct NoiseModel {
    double p1 = 0.0;
    double p2 = 0.0;
    double p_readout = 0.0;

    bool is_zero() const { return p1 == 0.0 && p2 == 0.0 && p_readout == 0.0; }
};

enum class NoiseLevel { none, low, mid, high };

NoiseModel noise_preset(NoiseLevel level);
NoiseLevel noise_level_from_name(const std::string& name);
const char* noise_level_name(NoiseLevel level);

/// Monte Carlo trajectory sampling of a decomposed circuit under the model.
///
/// Each shot owns a derived RNG stream: after every 1-qubit gate a uniformly
/// random non-identity Pauli hits its qubit with probability p1, after every
/// CX one of the fifteen non-identity two-qubit Paulis hits the pair with
/// probability p2, and each measured bit flips with probability p_readout.
/// Error-free trajectories reuse one shared evolution of `initial`, so only
/// shots that actually draw an error pay for a full pass. Histograms are
/// independent of shot evaluation order, and a zero model reproduces
/// sample_measurements byte for byte.
///
/// Throws std::invalid_argument if the circuit is not decomposed or has no
/// measured qubits.
ShotHistogram run_noisy_shots_from(const StateVector& initial, const Circuit& circuit,
                                   const NoiseModel& model, std::uint64_t shots,
                                   std::uint64_t seed);

/// Same, starting from |0...0>.
ShotHistogram run_noisy_shots(const Circuit& circuit, const NoiseModel& model,
                              std::uint64_t shots, std::uint64_t seed);

/// Same noise semantics as running segmented.native through
/// run_noisy_shots_from, but a trajectory crosses error-free chunks by
/// applying the original gate in one pass -- an order of magnitude fewer
/// amplitude sweeps per trajectory on multi-controlled circuits.
ShotHistogram run_noisy_shots_segmented(const StateVector& initial,
                                        const SegmentedCircuit& segmented,
                                        const NoiseModel& model, std::uint64_t shots,
                                        std::uint64_t seed);

}  // namespace qlga
