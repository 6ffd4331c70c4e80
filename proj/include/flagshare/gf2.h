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

#ifndef FLAGSHARE_GF2_H
#define FLAGSHARE_GF2_H

#include <vector>

#include "flagshare/bits.h"

namespace flagshare {

/// Incrementally maintained row-echelon basis of a subspace of GF(2)^m.
///
/// Rows are kept fully reduced so `reduce` returns a canonical coset
/// representative: two vectors differ by an element of the span iff their
/// reductions are equal.
class Gf2Basis {
   public:
    explicit Gf2Basis(size_t num_bits) : num_bits_(num_bits) {
    }

    size_t num_bits() const {
        return num_bits_;
    }
    size_t rank() const {
        return rows_.size();
    }

    /// Adds `v` to the basis. Returns false if it was already in the span.
    bool insert(BitVector v);

    BitVector reduce(BitVector v) const;

    bool contains(const BitVector &v) const {
        return reduce(v).none();
    }

   private:
    size_t num_bits_;
    std::vector<BitVector> rows_;
    std::vector<size_t> pivots_;
};

/// Rank of a list of equal-length vectors (Gaussian elimination).
size_t gf2_rank(const std::vector<BitVector> &rows);

}  // namespace flagshare

#endif
