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
#include <vector>

namespace qlga {

enum class LatticeModel { D1Q3, HPP };

/// Per-site boolean channel occupancies of a lattice gas.
///
/// D1Q3: one row of N sites, channels (n1 right, n2 left, n3 rest), site
/// masses 1/1/2. HPP: N x N periodic square lattice flattened by
/// k = y + x*N, channels (n1 +x, n2 +y, n3 -x, n4 -y), unit masses.
/// Site counts are powers of two so the quantum encodings line up.
class LatticeState {
  public:
    LatticeState() = default;
    LatticeState(LatticeModel model, int sites_per_side);

    static LatticeState d1q3(int sites) { return {LatticeModel::D1Q3, sites}; }
    static LatticeState hpp(int side) { return {LatticeModel::HPP, side}; }

    LatticeModel model() const { return model_; }
    int side() const { return side_; }
    int num_sites() const { return static_cast<int>(occ_.size()) / channels(); }
    int channels() const { return model_ == LatticeModel::D1Q3 ? 3 : 4; }

    bool get(int site, int channel) const {
        return occ_[static_cast<std::size_t>(site * channels() + channel)] != 0;
    }
    void set(int site, int channel, bool value) {
        occ_[static_cast<std::size_t>(site * channels() + channel)] = value ? 1 : 0;
    }

    /// Channel bits of one site packed with channel 1 most significant,
    /// matching the paper's (n1 n2 n3 [n4]) strings.
    unsigned site_code(int site) const;
    void set_site_code(int site, unsigned code);

    int site_mass(int site) const;
    std::int64_t total_mass() const;
    /// D1Q3: sum(n1 - n2). HPP: (sum(n1 - n3), sum(n2 - n4)).
    std::pair<std::int64_t, std::int64_t> momentum() const;

    int particle_count() const;

    bool operator==(const LatticeState&) const = default;

  private:
    LatticeModel model_ = LatticeModel::D1Q3;
    int side_ = 0;
    std::vector<std::uint8_t> occ_;
};

/// HPP flat index k = y + x*N. Throws on out-of-range coordinates.
int hpp_site_index(int x, int y, int side);

/// Per-site collision lookup: D1Q3 exchanges (110) <-> (001), HPP exchanges
/// (1010) <-> (0101); everything else is fixed. An involution that conserves
/// mass and momentum.
LatticeState collide(const LatticeState& s);

/// Moves each channel's content one site along its velocity, periodically.
LatticeState propagate(const LatticeState& s);

/// One time step: collide then propagate.
LatticeState step(const LatticeState& s);

/// Sums site masses over contiguous aligned blocks; block must divide the
/// site count.
std::vector<double> mass_profile(const LatticeState& s, int block);

/// CSV with one row per site: `site,n1,n2,n3` (D1Q3) or `x,y,n1,n2,n3,n4`.
std::string lattice_to_csv(const LatticeState& s);
LatticeState lattice_from_csv(const std::string& csv);

}  // namespace qlga
