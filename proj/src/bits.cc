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

#include "flagshare/bits.h"

namespace flagshare {

BitVector BitVector::from_string(std::string_view bits) {
    BitVector r(bits.size());
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k] == '1') {
            r.set(k, true);
        } else if (bits[k] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1': " + std::string(bits));
        }
    }
    return r;
}

BitVector BitVector::from_u64(uint64_t value, size_t num_bits) {
    if (num_bits < 64 && (value >> num_bits) != 0) {
        throw DimensionError("value does not fit in " + std::to_string(num_bits) + " bits");
    }
    BitVector r(num_bits);
    if (!r.words_.empty()) {
        r.words_[0] = value;
    }
    return r;
}

bool BitVector::none() const {
    for (uint64_t w : words_) {
        if (w) {
            return false;
        }
    }
    return true;
}

size_t BitVector::popcount() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    check_same_size(other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVector &BitVector::operator|=(const BitVector &other) {
    check_same_size(other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

BitVector BitVector::operator&(const BitVector &other) const {
    check_same_size(other);
    BitVector r = *this;
    for (size_t w = 0; w < words_.size(); w++) {
        r.words_[w] &= other.words_[w];
    }
    return r;
}

bool BitVector::operator<(const BitVector &other) const {
    if (size_ != other.size_) {
        return size_ < other.size_;
    }
    for (size_t w = words_.size(); w-- > 0;) {
        if (words_[w] != other.words_[w]) {
            return words_[w] < other.words_[w];
        }
    }
    return false;
}

bool BitVector::dot(const BitVector &other) const {
    check_same_size(other);
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

std::string BitVector::str() const {
    std::string s(size_, '0');
    for (size_t k = 0; k < size_; k++) {
        if ((*this)[k]) {
            s[k] = '1';
        }
    }
    return s;
}

}  // namespace flagshare
