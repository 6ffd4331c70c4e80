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

#include "flagshare/pauli.h"

#include <cctype>

namespace flagshare {

namespace {

void check_same_n(const PauliOperator &p, const PauliOperator &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw DimensionError(
            "pauli qubit count mismatch: " + std::to_string(p.num_qubits()) + " vs " +
            std::to_string(q.num_qubits()));
    }
}

bool is_pauli_char(char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

}  // namespace

PauliOperator::PauliOperator(BitVector x, BitVector z) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) {
        throw DimensionError("x and z bit vectors must have equal length");
    }
}

PauliOperator PauliOperator::of_type(PauliType type, size_t num_qubits, std::span<const size_t> qubits) {
    PauliOperator p(num_qubits);
    for (size_t q : qubits) {
        if (q >= num_qubits) {
            throw DimensionError("qubit index " + std::to_string(q) + " out of range");
        }
        (type == PauliType::X ? p.x_ : p.z_).set(q, true);
    }
    return p;
}

PauliOperator PauliOperator::single(size_t num_qubits, size_t qubit, char pauli) {
    PauliOperator p(num_qubits);
    if (qubit >= num_qubits) {
        throw DimensionError("qubit index " + std::to_string(qubit) + " out of range");
    }
    p.set(qubit, pauli);
    return p;
}

PauliOperator PauliOperator::parse(std::string_view text, size_t num_qubits) {
    PauliOperator p(num_qubits);
    size_t k = 0;
    auto skip_sep = [&] {
        while (k < text.size() && (std::isspace(static_cast<unsigned char>(text[k])) || text[k] == '*')) {
            k++;
        }
    };
    auto read_index = [&]() -> size_t {
        size_t start = k;
        size_t v = 0;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
            v = v * 10 + static_cast<size_t>(text[k] - '0');
            k++;
        }
        if (k == start) {
            throw std::invalid_argument("expected qubit index in pauli text: " + std::string(text));
        }
        if (v == 0 || v > num_qubits) {
            throw std::invalid_argument(
                "qubit index " + std::to_string(v) + " out of range 1.." + std::to_string(num_qubits));
        }
        return v - 1;
    };
    auto apply = [&](char c, size_t q) {
        PauliOperator single_op = PauliOperator::single(num_qubits, q, c);
        p *= single_op;
    };

    skip_sep();
    if (text.substr(k) == "I" || text.substr(k) == "None" || k == text.size()) {
        return p;
    }
    while (k < text.size()) {
        char c = text[k];
        if (!is_pauli_char(c)) {
            throw std::invalid_argument("unexpected character in pauli text: " + std::string(text));
        }
        k++;
        if (k < text.size() && text[k] == '_') {
            k++;
        }
        if (k < text.size() && text[k] == '{') {
            k++;
            while (true) {
                skip_sep();
                apply(c, read_index());
                skip_sep();
                if (k < text.size() && text[k] == ',') {
                    k++;
                    continue;
                }
                if (k < text.size() && text[k] == '}') {
                    k++;
                    break;
                }
                throw std::invalid_argument("unterminated index list in pauli text: " + std::string(text));
            }
        } else {
            apply(c, read_index());
        }
        skip_sep();
    }
    return p;
}

PauliOperator PauliOperator::parse_dense(std::string_view text) {
    PauliOperator p(text.size());
    for (size_t k = 0; k < text.size(); k++) {
        char c = text[k] == '_' ? 'I' : text[k];
        if (!is_pauli_char(c)) {
            throw std::invalid_argument("unexpected character in dense pauli: " + std::string(text));
        }
        p.set(k, c);
    }
    return p;
}

char PauliOperator::at(size_t k) const {
    bool x = x_[k];
    bool z = z_[k];
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void PauliOperator::set(size_t k, char pauli) {
    x_.set(k, pauli == 'X' || pauli == 'Y');
    z_.set(k, pauli == 'Z' || pauli == 'Y');
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    for (size_t i = 0; i < x_.num_words(); i++) {
        w += std::popcount(x_.word(i) | z_.word(i));
    }
    return w;
}

std::vector<size_t> PauliOperator::support() const {
    std::vector<size_t> s;
    for (size_t k = 0; k < num_qubits(); k++) {
        if (x_[k] || z_[k]) {
            s.push_back(k);
        }
    }
    return s;
}

PauliOperator PauliOperator::part(PauliType type) const {
    if (type == PauliType::X) {
        return PauliOperator(x_, BitVector(num_qubits()));
    }
    return PauliOperator(BitVector(num_qubits()), z_);
}

PauliOperator &PauliOperator::operator*=(const PauliOperator &other) {
    check_same_n(*this, other);
    x_ ^= other.x_;
    z_ ^= other.z_;
    return *this;
}

bool PauliOperator::operator<(const PauliOperator &other) const {
    if (x_ == other.x_) {
        return z_ < other.z_;
    }
    return x_ < other.x_;
}

std::string PauliOperator::str() const {
    if (is_identity()) {
        return "I";
    }
    std::string s;
    for (size_t k = 0; k < num_qubits(); k++) {
        char c = at(k);
        if (c != 'I') {
            if (!s.empty()) {
                s += ' ';
            }
            s += c;
            s += std::to_string(k + 1);
        }
    }
    return s;
}

std::string PauliOperator::dense_str() const {
    std::string s(num_qubits(), '_');
    for (size_t k = 0; k < num_qubits(); k++) {
        char c = at(k);
        if (c != 'I') {
            s[k] = c;
        }
    }
    return s;
}

bool commutes(const PauliOperator &p, const PauliOperator &q) {
    check_same_n(p, q);
    return p.x_bits().dot(q.z_bits()) == p.z_bits().dot(q.x_bits());
}

PauliOperator multiply(const PauliOperator &p, const PauliOperator &q) {
    return p * q;
}

Syndrome syndrome_of(const PauliOperator &e, std::span<const PauliOperator> generators) {
    Syndrome s(generators.size());
    for (size_t i = 0; i < generators.size(); i++) {
        s.set(i, !commutes(e, generators[i]));
    }
    return s;
}

}  // namespace flagshare
