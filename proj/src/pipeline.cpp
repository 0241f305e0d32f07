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

#include "qlga/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qlga/d1q3_binary.hpp"
#include "qlga/d1q3_super.hpp"
#include "qlga/decompose.hpp"
#include "qlga/hpp2d.hpp"
#include "qlga/rng.hpp"

namespace qlga {

namespace {

constexpr double kFlagAgreement = 0.5;  // pre-registered no-signal threshold

// Seed stream indices per ensemble member.
constexpr std::uint64_t kStreamInitial = 1;
constexpr std::uint64_t kStreamSteps = 2;

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

const char* model_kind_name(ModelKind m) {
    switch (m) {
        case ModelKind::d1q3_binary: return "d1q3-binary";
        case ModelKind::d1q3_super: return "d1q3-super";
        case ModelKind::hpp: return "hpp";
    }
    return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "d1q3-binary" || name == "d1q3") return ModelKind::d1q3_binary;
    if (name == "d1q3-super") return ModelKind::d1q3_super;
    if (name == "hpp") return ModelKind::hpp;
    throw std::invalid_argument("unknown model: " + name);
}

void ExperimentConfig::validate() const {
    if (!power_of_two(sites)) throw std::invalid_argument("sites must be a power of two");
    if (model == ModelKind::hpp && sites < 4) throw std::invalid_argument("hpp needs sites >= 4");
    if (model != ModelKind::hpp && sites < 4)
        throw std::invalid_argument("d1q3 needs sites >= 4");
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    if (block < 1 || lattice_sites() % block != 0)
        throw std::invalid_argument("block must divide sites");
    if (ensemble < 1) throw std::invalid_argument("ensemble must be >= 1");
    if (initial.p_inside < 0 || initial.p_inside > 1 || initial.p_outside < 0 ||
        initial.p_outside > 1)
        throw std::invalid_argument("occupancy probabilities must be in [0, 1]");
    if (initial.region_start < 0 || initial.region_end > 1 ||
        initial.region_start >= initial.region_end)
        throw std::invalid_argument("region must satisfy 0 <= start < end <= 1");
    if (noise.p1 < 0 || noise.p1 > 1 || noise.p2 < 0 || noise.p2 > 1 || noise.p_readout < 0 ||
        noise.p_readout > 1)
        throw std::invalid_argument("noise rates must be in [0, 1]");
}

int ExperimentConfig::qubits() const {
    if (model == ModelKind::hpp) return HppLayout(sites).total_qubits();
    return D1q3Layout(std::countr_zero(static_cast<unsigned>(sites))).total_qubits();
}

LatticeState generate_initial(const InitialCondition& init, int sites, ModelKind model,
                              std::uint64_t seed) {
    LatticeState field = model == ModelKind::hpp ? LatticeState::hpp(sites)
                                                 : LatticeState::d1q3(sites);
    if (init.kind == InitialCondition::Kind::explicit_field) {
        if (!init.explicit_field || init.explicit_field->num_sites() != field.num_sites() ||
            init.explicit_field->model() != field.model())
            throw std::invalid_argument("explicit initial field does not match configuration");
        return *init.explicit_field;
    }
    Rng rng(seed);
    const int lo = static_cast<int>(std::floor(init.region_start * sites));
    const int hi = static_cast<int>(std::ceil(init.region_end * sites));
    for (int site = 0; site < field.num_sites(); ++site) {
        // Pulse region spans the x coordinate (the whole domain for D1Q3).
        int coord = model == ModelKind::hpp ? site / sites : site;
        double p = (coord >= lo && coord < hi) ? init.p_inside : init.p_outside;
        for (int ch = 0; ch < field.channels(); ++ch)
            field.set(site, ch, rng.next_double() < p);
    }
    return field;
}

double field_agreement(const LatticeState& a, const LatticeState& b) {
    int ca = a.particle_count(), cb = b.particle_count();
    if (ca == 0 && cb == 0) return 1.0;
    int match = 0;
    for (int s = 0; s < a.num_sites(); ++s)
        for (int ch = 0; ch < a.channels(); ++ch)
            if (a.get(s, ch) && b.get(s, ch)) ++match;
    return static_cast<double>(match) / static_cast<double>(std::max(ca, cb));
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("profile length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

namespace {

std::vector<double> block_sum(const std::vector<double>& per_site, int block) {
    std::vector<double> out(per_site.size() / static_cast<std::size_t>(block), 0.0);
    for (std::size_t i = 0; i < per_site.size(); ++i)
        out[i / static_cast<std::size_t>(block)] += per_site[i];
    return out;
}

// Mass distribution as measured: per-(site,channel) outcome frequencies
// weighted by channel mass and normalized to the step's mass budget. This is
// the pre-decode view; shot noise shows up here even when the ranked decode
// recovers the field exactly.
template <class Table>
std::vector<double> frequency_mass_profile(const Table& outcomes, int sites, int block,
                                           double budget_mass, ModelKind model) {
    std::vector<double> per_site(static_cast<std::size_t>(sites), 0.0);
    double total = 0.0;
    for (const auto& [key, weight] : outcomes) {
        double w = static_cast<double>(weight);
        int site, mass;
        if (model == ModelKind::d1q3_binary) {
            int a1 = static_cast<int>((key >> 2) & 1);
            int branch = static_cast<int>(key & 3);
            if (a1 == 0 || branch == 0b11) continue;
            site = static_cast<int>(key >> 3);
            mass = branch == 0b01 ? 2 : 1;
        } else if (model == ModelKind::d1q3_super) {
            int a1 = static_cast<int>(key & 1);
            int code = static_cast<int>((key >> 1) & 7);
            site = static_cast<int>(key >> 4);
            if (code == 0b100 || code == 0b010) mass = 1;
            else if (code == 0b001 || (code == 0b110 && a1 == 1)) mass = 2;
            else continue;
        } else {
            int a1 = static_cast<int>((key >> 2) & 1);
            if (a1 == 0) continue;
            site = static_cast<int>(key >> 3);
            mass = 1;
        }
        if (site >= sites) continue;  // readout flips can leave the lattice range
        per_site[static_cast<std::size_t>(site)] += w * mass;
        total += w * mass;
    }
    if (total > 0.0) {
        double scale = budget_mass / total;
        for (double& v : per_site) v *= scale;
    }
    return block_sum(per_site, block);
}

struct StepOutcome {
    DecodeResult decode;
    std::vector<double> freq_profile;  // empty for exact decode
};

class QuantumStepper {
  public:
    QuantumStepper(const ExperimentConfig& cfg)
        : cfg_(cfg) {
        if (cfg.model == ModelKind::hpp) {
            hpp_.emplace(cfg.sites);
            if (cfg.shots > 0) {
                Circuit dyn = build_dynamics_hpp(*hpp_);
                dyn.measured = hpp_->measured();
                segmented_ = decompose_segmented(dyn);
            }
        } else {
            d1q3_.emplace(std::countr_zero(static_cast<unsigned>(cfg.sites)));
            if (cfg.shots > 0) {
                Circuit dyn(d1q3_->reg);
                if (cfg.model == ModelKind::d1q3_binary) {
                    dyn = build_dynamics(*d1q3_);
                    dyn.measured = d1q3_->measured();
                } else {
                    dyn.append(build_collision_super(*d1q3_));
                    dyn.append(build_propagation_super(*d1q3_));
                    dyn.measured = super_measured(*d1q3_);
                }
                segmented_ = decompose_segmented(dyn);
            }
        }
    }

    StepOutcome step(const LatticeState& field, std::uint64_t step_seed) {
        StepOutcome out;
        switch (cfg_.model) {
            case ModelKind::d1q3_binary: {
                if (cfg_.shots == 0) {
                    out.decode = d1q3_binary_step_exact(field, *d1q3_);
                } else {
                    // Initialization is ideal state loading; gate noise
                    // covers the decomposed dynamics, readout the sampling.
                    StateVector sv(d1q3_->total_qubits());
                    sv.apply(build_initialization(*d1q3_, field));
                    ShotHistogram hist = run_noisy_shots_segmented(sv, *segmented_, cfg_.noise,
                                                                   cfg_.shots, step_seed);
                    ParticleBudget budget = ParticleBudget::of(field);
                    out.decode = decode_shots(hist, *d1q3_, budget);
                    out.freq_profile = frequency_mass_profile(
                        hist.counts, cfg_.sites, cfg_.block, budget.mass(), cfg_.model);
                }
                return out;
            }
            case ModelKind::d1q3_super: {
                MarkedEncoding enc = premark(field);
                if (cfg_.shots == 0 || enc.terms.empty()) {
                    out.decode = run_hybrid_step(enc, *d1q3_, cfg_.shots, cfg_.noise, step_seed);
                } else {
                    StateVector sv = prepare_marked_state(enc, *d1q3_);
                    ShotHistogram hist = run_noisy_shots_segmented(sv, *segmented_, cfg_.noise,
                                                                   cfg_.shots, step_seed);
                    out.decode = decode_shots_super(hist, *d1q3_, enc.mass());
                    out.freq_profile = frequency_mass_profile(
                        hist.counts, cfg_.sites, cfg_.block, enc.mass(), cfg_.model);
                }
                return out;
            }
            case ModelKind::hpp: {
                if (cfg_.shots == 0) {
                    out.decode = hpp_step_exact(field, *hpp_);
                } else {
                    StateVector sv(hpp_->total_qubits());
                    sv.apply(build_initialization_hpp(*hpp_, field));
                    ShotHistogram hist = run_noisy_shots_segmented(sv, *segmented_, cfg_.noise,
                                                                   cfg_.shots, step_seed);
                    int budget = field.particle_count();
                    out.decode = decode_shots_hpp(hist, *hpp_, budget);
                    out.freq_profile = frequency_mass_profile(
                        hist.counts, cfg_.lattice_sites(), cfg_.block, budget, cfg_.model);
                }
                return out;
            }
        }
        throw std::logic_error("unreachable");
    }

  private:
    ExperimentConfig cfg_;
    std::optional<D1q3Layout> d1q3_;
    std::optional<HppLayout> hpp_;
    std::optional<SegmentedCircuit> segmented_;
};

ProfileSeries make_series(const ExperimentConfig& cfg) {
    ProfileSeries s;
    s.sites = cfg.lattice_sites();
    s.block = cfg.block;
    s.steps = cfg.steps;
    return s;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.qubits() > 24)
        std::cerr << "warning: simulating " << cfg.qubits() << " qubits; this will be slow\n";

    std::vector<ProfileSeries> q_members, c_members;
    QuantumStepper stepper(cfg);
    ExperimentResult result;

    for (int m = 0; m < cfg.ensemble; ++m) {
        std::uint64_t member_seed = derive_seed(cfg.seed, cfg.shared_initial ? 0 : static_cast<std::uint64_t>(m));
        LatticeState field = generate_initial(cfg.initial, cfg.sites, cfg.model,
                                              derive_seed(member_seed, kStreamInitial));
        ProfileSeries q = make_series(cfg), c = make_series(cfg);
        q.member_seeds.push_back(member_seed);
        c.member_seeds.push_back(member_seed);

        LatticeState qfield = field, cfield = field;
        q.mass.push_back(mass_profile(qfield, cfg.block));
        q.freq_mass.push_back(q.mass.back());
        q.junk.push_back(0.0);
        q.flagged.push_back(0.0);
        c.mass.push_back(q.mass.front());
        c.freq_mass.push_back(q.mass.front());
        c.junk.push_back(0.0);
        c.flagged.push_back(0.0);

        std::uint64_t steps_seed = derive_seed(member_seed, kStreamSteps);
        bool any_flagged = false;
        for (int t = 1; t <= cfg.steps; ++t) {
            LatticeState expected = step(qfield);
            StepOutcome out = stepper.step(qfield, derive_seed(steps_seed, static_cast<std::uint64_t>(t)));
            bool flagged = out.decode.no_information ||
                           field_agreement(out.decode.field, expected) < kFlagAgreement;
            any_flagged |= flagged;
            if (!out.decode.no_information) qfield = out.decode.field;
            // else: frozen step, previous field carries forward

            cfield = step(cfield);
            q.mass.push_back(mass_profile(qfield, cfg.block));
            q.freq_mass.push_back(out.freq_profile.empty() ? q.mass.back() : out.freq_profile);
            q.junk.push_back(out.decode.junk_fraction);
            q.flagged.push_back(flagged ? 1.0 : 0.0);
            c.mass.push_back(mass_profile(cfield, cfg.block));
            c.freq_mass.push_back(c.mass.back());
            c.junk.push_back(0.0);
            c.flagged.push_back(0.0);
        }
        q.member_flag_rate = any_flagged ? 1.0 : 0.0;
        if (m == 0) {
            result.final_quantum = qfield;
            result.final_classical = cfield;
        }
        q_members.push_back(std::move(q));
        c_members.push_back(std::move(c));
    }
    result.quantum = ensemble_average(q_members);
    result.classical = ensemble_average(c_members);
    return result;
}

ProfileSeries ensemble_average(const std::vector<ProfileSeries>& members) {
    if (members.empty()) throw std::invalid_argument("ensemble_average: no members");
    ProfileSeries avg = members.front();
    for (std::size_t m = 1; m < members.size(); ++m) {
        const ProfileSeries& s = members[m];
        if (s.steps != avg.steps || s.bins() != avg.bins() || s.sites != avg.sites)
            throw std::invalid_argument("ensemble_average: shape mismatch");
        for (std::size_t t = 0; t < avg.mass.size(); ++t) {
            for (std::size_t b = 0; b < avg.mass[t].size(); ++b) {
                avg.mass[t][b] += s.mass[t][b];
                avg.freq_mass[t][b] += s.freq_mass[t][b];
            }
            avg.junk[t] += s.junk[t];
            avg.flagged[t] += s.flagged[t];
        }
        avg.member_flag_rate += s.member_flag_rate;
        avg.member_seeds.insert(avg.member_seeds.end(), s.member_seeds.begin(),
                                s.member_seeds.end());
    }
    const double inv = 1.0 / static_cast<double>(members.size());
    for (std::size_t t = 0; t < avg.mass.size(); ++t) {
        for (std::size_t b = 0; b < avg.mass[t].size(); ++b) {
            avg.mass[t][b] *= inv;
            avg.freq_mass[t][b] *= inv;
        }
        avg.junk[t] *= inv;
        avg.flagged[t] *= inv;
    }
    avg.member_flag_rate *= inv;
    return avg;
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "model=" << model_kind_name(cfg.model) << " sites=" << cfg.sites
       << " steps=" << cfg.steps << " shots=" << cfg.shots << " noise=" << cfg.noise_name
       << " p1=" << cfg.noise.p1 << " p2=" << cfg.noise.p2 << " pread=" << cfg.noise.p_readout
       << " ensemble=" << cfg.ensemble << " block=" << cfg.block << " seed=" << cfg.seed
       << " p-inside=" << cfg.initial.p_inside << " p-outside=" << cfg.initial.p_outside
       << " region=" << cfg.initial.region_start << ":" << cfg.initial.region_end
       << " shared-initial=" << (cfg.shared_initial ? 1 : 0);
    return os.str();
}

std::string profile_series_csv(const ExperimentConfig& cfg, const ProfileSeries& quantum,
                               const ProfileSeries& classical) {
    std::ostringstream os;
    os << "# qlga profile v1\n# " << config_echo(cfg) << "\n";
    os << "step,block_index,quantum_mass,classical_mass,junk_fraction\n";
    char buf[64];
    for (int t = 0; t <= quantum.steps; ++t) {
        for (int b = 0; b < quantum.bins(); ++b) {
            os << t << ',' << b << ',';
            std::snprintf(buf, sizeof buf, "%.17g", quantum.mass[static_cast<std::size_t>(t)][static_cast<std::size_t>(b)]);
            os << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", classical.mass[static_cast<std::size_t>(t)][static_cast<std::size_t>(b)]);
            os << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", quantum.junk[static_cast<std::size_t>(t)]);
            os << buf << '\n';
        }
    }
    return os.str();
}

}  // namespace qlga
