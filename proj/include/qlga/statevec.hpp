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

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qlga/gate.hpp"
#include "qlga/layout.hpp"

namespace qlga {

using cplx = std::complex<double>;

/// Amplitudes below this weight count as unpopulated when enumerating the
/// support of a state; guards decode comparisons against float dust.
inline constexpr double kSupportThreshold = 1e-24;

/// Counted measurement outcomes over an ordered qubit list. Keys pack the
/// measured bits with the first listed qubit most significant, mirroring the
/// ket-string convention of RegisterLayout.
struct ShotHistogram {
    std::vector<int> measured;
    std::uint64_t shots = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
};

/// Probability-weighted exact support of a state over an ordered qubit list;
/// the infinite-shot stand-in for a ShotHistogram.
struct SupportTable {
    std::vector<int> measured;
    std::map<std::uint64_t, double> weight;
};

class StateVector {
  public:
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << num_qubits_; }

    cplx amp(std::uint64_t index) const { return amps_[index]; }
    void set_amp(std::uint64_t index, cplx v) { amps_[index] = v; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }

    /// Resets to the computational basis state |index>.
    void reset_basis(std::uint64_t index);

    double norm_sq() const;

    void apply(const Gate& g);
    void apply(const Circuit& c);

  private:
    int num_qubits_;
    std::vector<cplx> amps_;
};

/// Basis state |index> over the layout's full register.
StateVector new_basis_state(const RegisterLayout& layout, std::uint64_t index);

/// Samples `shots` outcomes of the measured qubits from the Born marginal.
/// The state is read, not collapsed; each shot draws from an independent
/// stream derived from (seed, shot index), so the histogram is independent of
/// evaluation order.
ShotHistogram sample_measurements(const StateVector& state, const std::vector<int>& measured,
                                  std::uint64_t shots, std::uint64_t seed);

/// Marginal probabilities over the measured qubits, keyed like histogram
/// outcomes, with entries below kSupportThreshold dropped.
SupportTable enumerate_support(const StateVector& state, const std::vector<int>& measured);

/// Per-shot uniform variate used for the measurement draw; shared by exact
/// and noisy sampling so a zero-noise model reproduces sample_measurements
/// byte for byte.
double measurement_draw(std::uint64_t seed, std::uint64_t shot_index);

}  // namespace qlga
