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

#ifndef FLAGSHARE_PAULI_H
#define FLAGSHARE_PAULI_H

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flagshare/bits.h"

namespace flagshare {

enum class PauliType { X, Z };

inline PauliType opposite(PauliType t) {
    return t == PauliType::X ? PauliType::Z : PauliType::X;
}
inline char type_char(PauliType t) {
    return t == PauliType::X ? 'X' : 'Z';
}

/// One bit per generator, ordered as the generator list it was computed against.
using Syndrome = BitVector;

/// An n-qubit Pauli operator modulo global phase, in binary symplectic form.
///
/// Qubit i carries X if only x[i] is set, Z if only z[i] is set and Y if both are.
/// Qubits are 0-indexed internally; text rendering uses the 1-based indices
/// common in the QEC literature ("X1Y2Z3").
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t num_qubits) : x_(num_qubits), z_(num_qubits) {
    }
    PauliOperator(BitVector x, BitVector z);

    /// Pure X- or Z-type operator on the given 0-based qubits.
    static PauliOperator of_type(PauliType type, size_t num_qubits, std::span<const size_t> qubits);
    static PauliOperator single(size_t num_qubits, size_t qubit, char pauli);

    /// Parses index notation: "X2 X4 X6", "Z1Z2", "X1Y2Z3", "X_{2,3,4}", "I".
    /// Indices are 1-based. Throws std::invalid_argument on malformed text.
    static PauliOperator parse(std::string_view text, size_t num_qubits);
    /// Parses a dense string such as "XXZ_I" (one character per qubit).
    static PauliOperator parse_dense(std::string_view text);

    size_t num_qubits() const {
        return x_.size();
    }
    const BitVector &x_bits() const {
        return x_;
    }
    const BitVector &z_bits() const {
        return z_;
    }
    BitVector &x_bits() {
        return x_;
    }
    BitVector &z_bits() {
        return z_;
    }

    /// 'I', 'X', 'Y' or 'Z' on qubit k.
    char at(size_t k) const;
    void set(size_t k, char pauli);

    bool is_identity() const {
        return x_.none() && z_.none();
    }
    bool is_x_type() const {
        return z_.none();
    }
    bool is_z_type() const {
        return x_.none();
    }
    size_t weight() const;
    std::vector<size_t> support() const;

    /// The X-only or Z-only component.
    PauliOperator part(PauliType type) const;

    PauliOperator &operator*=(const PauliOperator &other);
    PauliOperator operator*(const PauliOperator &other) const {
        PauliOperator r = *this;
        r *= other;
        return r;
    }

    bool operator==(const PauliOperator &other) const = default;
    bool operator<(const PauliOperator &other) const;

    /// "X2 X4 X6" style, 1-based; "I" for the identity.
    std::string str() const;
    /// One character per qubit, '_' for identity.
    std::string dense_str() const;

   private:
    BitVector x_;
    BitVector z_;
};

bool commutes(const PauliOperator &p, const PauliOperator &q);
PauliOperator multiply(const PauliOperator &p, const PauliOperator &q);
inline size_t weight(const PauliOperator &p) {
    return p.weight();
}

/// Bit i is 1 iff `e` anticommutes with generators[i].
Syndrome syndrome_of(const PauliOperator &e, std::span<const PauliOperator> generators);

}  // namespace flagshare

#endif
