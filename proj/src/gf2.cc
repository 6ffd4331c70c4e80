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

#include "flagshare/gf2.h"

namespace flagshare {

bool Gf2Basis::insert(BitVector v) {
    v = reduce(std::move(v));
    if (v.none()) {
        return false;
    }
    size_t pivot = 0;
    while (!v[pivot]) {
        pivot++;
    }
    for (auto &row : rows_) {
        if (row[pivot]) {
            row ^= v;
        }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

BitVector Gf2Basis::reduce(BitVector v) const {
    if (v.size() != num_bits_) {
        throw DimensionError("vector length does not match basis");
    }
    for (size_t r = 0; r < rows_.size(); r++) {
        if (v[pivots_[r]]) {
            v ^= rows_[r];
        }
    }
    return v;
}

size_t gf2_rank(const std::vector<BitVector> &rows) {
    if (rows.empty()) {
        return 0;
    }
    std::vector<BitVector> m = rows;
    size_t rank = 0;
    size_t width = m[0].size();
    for (size_t col = 0; col < width && rank < m.size(); col++) {
        size_t sel = rank;
        while (sel < m.size() && !m[sel][col]) {
            sel++;
        }
        if (sel == m.size()) {
            continue;
        }
        std::swap(m[sel], m[rank]);
        for (size_t r = 0; r < m.size(); r++) {
            if (r != rank && m[r][col]) {
                m[r] ^= m[rank];
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace flagshare
