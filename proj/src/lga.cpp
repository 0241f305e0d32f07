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

#include "qlga/lga.hpp"

#include <sstream>
#include <stdexcept>

namespace qlga {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

LatticeState::LatticeState(LatticeModel model, int sites_per_side) : model_(model), side_(sites_per_side) {
    if (!power_of_two(sites_per_side))
        throw std::invalid_argument("lattice side must be a power of two");
    int sites = model == LatticeModel::D1Q3 ? sites_per_side : sites_per_side * sites_per_side;
    occ_.assign(static_cast<std::size_t>(sites) * static_cast<std::size_t>(channels()), 0);
}

unsigned LatticeState::site_code(int site) const {
    unsigned code = 0;
    for (int ch = 0; ch < channels(); ++ch) code = (code << 1) | (get(site, ch) ? 1u : 0u);
    return code;
}

void LatticeState::set_site_code(int site, unsigned code) {
    for (int ch = 0; ch < channels(); ++ch)
        set(site, ch, ((code >> (channels() - 1 - ch)) & 1u) != 0);
}

int LatticeState::site_mass(int site) const {
    if (model_ == LatticeModel::D1Q3)
        return (get(site, 0) ? 1 : 0) + (get(site, 1) ? 1 : 0) + (get(site, 2) ? 2 : 0);
    int m = 0;
    for (int ch = 0; ch < 4; ++ch) m += get(site, ch) ? 1 : 0;
    return m;
}

std::int64_t LatticeState::total_mass() const {
    std::int64_t m = 0;
    for (int s = 0; s < num_sites(); ++s) m += site_mass(s);
    return m;
}

std::pair<std::int64_t, std::int64_t> LatticeState::momentum() const {
    std::int64_t px = 0, py = 0;
    for (int s = 0; s < num_sites(); ++s) {
        if (model_ == LatticeModel::D1Q3) {
            px += (get(s, 0) ? 1 : 0) - (get(s, 1) ? 1 : 0);
        } else {
            px += (get(s, 0) ? 1 : 0) - (get(s, 2) ? 1 : 0);
            py += (get(s, 1) ? 1 : 0) - (get(s, 3) ? 1 : 0);
        }
    }
    return {px, py};
}

int LatticeState::particle_count() const {
    int n = 0;
    for (std::uint8_t b : occ_) n += b;
    return n;
}

int hpp_site_index(int x, int y, int side) {
    if (x < 0 || x >= side || y < 0 || y >= side)
        throw std::out_of_range("hpp coordinates out of range");
    return y + x * side;
}

LatticeState collide(const LatticeState& s) {
    LatticeState out = s;
    if (s.model() == LatticeModel::D1Q3) {
        for (int site = 0; site < s.num_sites(); ++site) {
            unsigned code = s.site_code(site);
            if (code == 0b110) out.set_site_code(site, 0b001);
            else if (code == 0b001) out.set_site_code(site, 0b110);
        }
    } else {
        for (int site = 0; site < s.num_sites(); ++site) {
            unsigned code = s.site_code(site);
            if (code == 0b1010) out.set_site_code(site, 0b0101);
            else if (code == 0b0101) out.set_site_code(site, 0b1010);
        }
    }
    return out;
}

LatticeState propagate(const LatticeState& s) {
    LatticeState out(s.model(), s.side());
    const int n = s.side();
    if (s.model() == LatticeModel::D1Q3) {
        for (int i = 0; i < n; ++i) {
            if (s.get(i, 0)) out.set((i + 1) % n, 0, true);
            if (s.get(i, 1)) out.set((i + n - 1) % n, 1, true);
            if (s.get(i, 2)) out.set(i, 2, true);
        }
    } else {
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                int k = hpp_site_index(x, y, n);
                if (s.get(k, 0)) out.set(hpp_site_index((x + 1) % n, y, n), 0, true);
                if (s.get(k, 1)) out.set(hpp_site_index(x, (y + 1) % n, n), 1, true);
                if (s.get(k, 2)) out.set(hpp_site_index((x + n - 1) % n, y, n), 2, true);
                if (s.get(k, 3)) out.set(hpp_site_index(x, (y + n - 1) % n, n), 3, true);
            }
        }
    }
    return out;
}

LatticeState step(const LatticeState& s) { return propagate(collide(s)); }

std::vector<double> mass_profile(const LatticeState& s, int block) {
    int sites = s.num_sites();
    if (block < 1 || sites % block != 0)
        throw std::invalid_argument("block must divide the site count");
    std::vector<double> profile(static_cast<std::size_t>(sites / block), 0.0);
    for (int site = 0; site < sites; ++site)
        profile[static_cast<std::size_t>(site / block)] += s.site_mass(site);
    return profile;
}

std::string lattice_to_csv(const LatticeState& s) {
    std::ostringstream os;
    if (s.model() == LatticeModel::D1Q3) {
        os << "# model=d1q3 sites=" << s.side() << "\nsite,n1,n2,n3\n";
        for (int i = 0; i < s.num_sites(); ++i)
            os << i << ',' << s.get(i, 0) << ',' << s.get(i, 1) << ',' << s.get(i, 2) << '\n';
    } else {
        os << "# model=hpp side=" << s.side() << "\nx,y,n1,n2,n3,n4\n";
        for (int x = 0; x < s.side(); ++x)
            for (int y = 0; y < s.side(); ++y) {
                int k = hpp_site_index(x, y, s.side());
                os << x << ',' << y << ',' << s.get(k, 0) << ',' << s.get(k, 1) << ','
                   << s.get(k, 2) << ',' << s.get(k, 3) << '\n';
            }
    }
    return os.str();
}

LatticeState lattice_from_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    // the model header may follow other comment lines
    while (std::getline(is, line) && line.find("model=") == std::string::npos) {
    }
    if (line.find("model=") == std::string::npos)
        throw std::invalid_argument("lattice csv missing model header");
    LatticeState out;
    auto read_kv = [&](const std::string& key) {
        std::size_t pos = line.find(key + "=");
        if (pos == std::string::npos) throw std::invalid_argument("lattice csv missing " + key);
        return std::stoi(line.substr(pos + key.size() + 1));
    };
    bool d1q3 = line.find("model=d1q3") != std::string::npos;
    if (d1q3) out = LatticeState::d1q3(read_kv("sites"));
    else if (line.find("model=hpp") != std::string::npos) out = LatticeState::hpp(read_kv("side"));
    else throw std::invalid_argument("lattice csv missing model header");
    std::getline(is, line);  // column header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<int> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stoi(cell));
        if (d1q3) {
            if (vals.size() != 4) throw std::invalid_argument("bad d1q3 csv row: " + line);
            for (int ch = 0; ch < 3; ++ch) out.set(vals[0], ch, vals[static_cast<std::size_t>(ch) + 1] != 0);
        } else {
            if (vals.size() != 6) throw std::invalid_argument("bad hpp csv row: " + line);
            int k = hpp_site_index(vals[0], vals[1], out.side());
            for (int ch = 0; ch < 4; ++ch) out.set(k, ch, vals[static_cast<std::size_t>(ch) + 2] != 0);
        }
    }
    return out;
}

}  // namespace qlga
