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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlga {

/// Named blocks of qubits over one basis index.
///
/// The basis index is the concatenation of the blocks in listed order with the
/// first block most significant; inside a block, position 0 is the most
/// significant bit. |l_1...l_n | c_1 c_2 c_3> therefore reads left to right
/// exactly like the binary expansion of the index. Gate targets and controls
/// use absolute bit positions (bit 0 = least significant).
class RegisterLayout {
  public:
    RegisterLayout() = default;

    explicit RegisterLayout(std::vector<std::pair<std::string, int>> blocks)
        : blocks_(std::move(blocks)) {
        total_ = 0;
        for (const auto& [name, width] : blocks_) {
            (void)name;
            if (width < 0) throw std::invalid_argument("register block width must be >= 0");
            total_ += width;
        }
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            for (std::size_t j = i + 1; j < blocks_.size(); ++j)
                if (blocks_[i].first == blocks_[j].first)
                    throw std::invalid_argument("duplicate register block name: " + blocks_[i].first);
    }

    int total() const { return total_; }

    int width(const std::string& name) const { return blocks_[block_index(name)].second; }

    /// Bit position of the least significant qubit of the block.
    int offset(const std::string& name) const {
        int off = 0;
        std::size_t k = block_index(name);
        for (std::size_t i = blocks_.size(); i-- > k + 1;) off += blocks_[i].second;
        return off;
    }

    /// Absolute bit position of qubit `pos` of a block, with pos 0 the most
    /// significant (the paper's 1-based subscript minus one).
    int bit(const std::string& name, int pos) const {
        std::size_t k = block_index(name);
        int w = blocks_[k].second;
        if (pos < 0 || pos >= w) throw std::out_of_range("qubit position outside block " + name);
        return offset(name) + (w - 1 - pos);
    }

    /// All bit positions of a block, most significant first.
    std::vector<int> bits(const std::string& name) const {
        std::vector<int> out;
        int w = width(name);
        out.reserve(static_cast<std::size_t>(w));
        for (int i = 0; i < w; ++i) out.push_back(bit(name, i));
        return out;
    }

    /// Value held by a block inside a basis index.
    std::uint64_t block_value(std::uint64_t index, const std::string& name) const {
        int w = width(name);
        if (w == 64) return index >> offset(name);
        return (index >> offset(name)) & ((std::uint64_t{1} << w) - 1);
    }

    /// Basis index contribution of a block value.
    std::uint64_t make_index(const std::string& name, std::uint64_t value) const {
        int w = width(name);
        if (w < 64 && value >= (std::uint64_t{1} << w))
            throw std::out_of_range("value does not fit block " + name);
        return value << offset(name);
    }

    const std::vector<std::pair<std::string, int>>& blocks() const { return blocks_; }

  private:
    std::size_t block_index(const std::string& name) const {
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            if (blocks_[i].first == name) return i;
        throw std::out_of_range("no register block named " + name);
    }

    std::vector<std::pair<std::string, int>> blocks_;
    int total_ = 0;
};

}  // namespace qlga
