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
#include <optional>
#include <string>
#include <vector>

#include "qlga/lga.hpp"
#include "qlga/noise.hpp"

namespace qlga {

enum class ModelKind { d1q3_binary, d1q3_super, hpp };

const char* model_kind_name(ModelKind m);
ModelKind model_kind_from_name(const std::string& name);

struct InitialCondition {
    enum class Kind { random_pulse, explicit_field };
    Kind kind = Kind::random_pulse;
    double p_inside = 0.95;
    double p_outside = 0.05;
    // Fraction of the domain (x slab for HPP); default pulse is the central
    // quarter.
    double region_start = 0.375;
    double region_end = 0.625;
    std::optional<LatticeState> explicit_field;
};

struct ExperimentConfig {
    ModelKind model = ModelKind::d1q3_binary;
    int sites = 512;  // sites for D1Q3, sites per side for HPP
    int steps = 16;
    std::uint64_t shots = 0;  // 0 = infinite-shot decode from the exact support
    NoiseModel noise;
    std::string noise_name = "none";
    int ensemble = 1;
    int block = 32;
    std::uint64_t seed = 1;
    /// All ensemble members draw the same initial field (for exact-equality
    /// tests); default draws independent fields per member.
    bool shared_initial = false;
    InitialCondition initial;

    int lattice_sites() const { return model == ModelKind::hpp ? sites * sites : sites; }
    /// Throws std::invalid_argument with a message naming the bad field.
    void validate() const;
    int qubits() const;
};

/// Per-step block mass profiles of one run (or an ensemble average).
///
/// `mass` comes from the decoded occupancy fields. `freq_mass` is the raw
/// measured mass distribution (outcome frequencies scaled to the step's mass
/// budget) before the ranked decode; for exact runs the two coincide.
/// `flagged[t]` is the fraction of members whose step t carried no usable
/// propagation signal: decode agreement with the locally predicted step
/// fell below 0.5, or decode returned junk only.
struct ProfileSeries {
    int sites = 0;
    int block = 1;
    int steps = 0;
    std::vector<std::vector<double>> mass;       // [steps+1][sites/block]
    std::vector<std::vector<double>> freq_mass;  // [steps+1][sites/block]
    std::vector<double> junk;                    // [steps+1]
    std::vector<double> flagged;                 // [steps+1]
    /// Fraction of members with at least one flagged step.
    double member_flag_rate = 0.0;
    std::vector<std::uint64_t> member_seeds;

    int bins() const { return mass.empty() ? 0 : static_cast<int>(mass[0].size()); }
};

struct ExperimentResult {
    ProfileSeries quantum;
    ProfileSeries classical;
    /// Final fields of the first ensemble member, for checkpointing.
    LatticeState final_quantum;
    LatticeState final_classical;
};

/// Bernoulli occupancy field: probability p_inside within the region,
/// p_outside elsewhere; fixed site/channel draw order per seed.
LatticeState generate_initial(const InitialCondition& init, int sites, ModelKind model,
                              std::uint64_t seed);

/// Runs the hybrid loop for every ensemble member next to its classical twin
/// started from the identical field, then ensemble-averages both series.
/// A no-information decode keeps the previous field and flags the step.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Element-wise mean over equally shaped series.
ProfileSeries ensemble_average(const std::vector<ProfileSeries>& members);

/// Occupied-slot overlap of two fields in [0, 1]; 1 for identical particle
/// sets, 1 when both are empty.
double field_agreement(const LatticeState& a, const LatticeState& b);

double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

/// CSV: `step,block_index,quantum_mass,classical_mass,junk_fraction` with
/// `# key=value` header comments echoing the configuration and seed.
std::string profile_series_csv(const ExperimentConfig& cfg, const ProfileSeries& quantum,
                               const ProfileSeries& classical);

std::string config_echo(const ExperimentConfig& cfg);

}  // namespace qlga
