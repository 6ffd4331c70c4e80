// Copyright 2026 The Flagshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLAGSHARE_BITS_H
#define FLAGSHARE_BITS_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flagshare {

/// Thrown when operands disagree on qubit count or bit length.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Fixed-length packed bit vector. Length is set at construction.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : size_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    /// Parses a string of '0'/'1' characters, first character is bit 0.
    static BitVector from_string(std::string_view bits);

    size_t size() const {
        return size_;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool operator[](size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }

    uint64_t word(size_t w) const {
        return words_[w];
    }
    uint64_t &word(size_t w) {
        return words_[w];
    }

    bool none() const;
    size_t popcount() const;

    BitVector &operator^=(const BitVector &other);
    BitVector operator^(const BitVector &other) const {
        BitVector r = *this;
        r ^= other;
        return r;
    }
    BitVector &operator|=(const BitVector &other);
    BitVector operator&(const BitVector &other) const;

    bool operator==(const BitVector &other) const = default;
    bool operator<(const BitVector &other) const;

    /// Parity of the bitwise AND with `other`.
    bool dot(const BitVector &other) const;

    /// Lowest 64 bits as an integer (bit k -> 2^k).
    uint64_t to_u64() const {
        return words_.empty() ? 0 : words_[0];
    }
    static BitVector from_u64(uint64_t value, size_t num_bits);

    /// '0'/'1' string, bit 0 first.
    std::string str() const;

   private:
    void check_same_size(const BitVector &other) const {
        if (size_ != other.size_) {
            throw DimensionError(
                "bit vector length mismatch: " + std::to_string(size_) + " vs " + std::to_string(other.size_));
        }
    }

    size_t size_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace flagshare

#endif
