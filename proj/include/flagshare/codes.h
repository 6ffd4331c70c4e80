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

#ifndef FLAGSHARE_CODES_H
#define FLAGSHARE_CODES_H

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagshare/gf2.h"
#include "flagshare/pauli.h"

namespace flagshare {

/// Thrown when a code definition is internally inconsistent.
struct CodeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class ResidualClass {
    Trivial,                ///< the identity
    StabilizerEquivalent,   ///< zero syndrome, inside the stabilizer group
    Logical,                ///< zero syndrome, outside the stabilizer group
    Detectable,             ///< nonzero syndrome
};

const char *residual_class_name(ResidualClass c);

/// A CSS stabilizer code with an ordered generator list.
///
/// Generator order is significant: syndrome bit positions, lookup tables and
/// fault tables all index generators by their position in `generators()`.
/// `x_indices()` / `z_indices()` list the positions of each type, in order;
/// "X-syndromes" are outcomes of the X-type generators (they detect Z errors).
class CssCode {
   public:
    CssCode(std::string name, size_t n, size_t k, size_t d, std::vector<PauliOperator> generators);

    const std::string &name() const {
        return name_;
    }
    size_t n() const {
        return n_;
    }
    size_t k() const {
        return k_;
    }
    size_t d() const {
        return d_;
    }
    size_t num_generators() const {
        return generators_.size();
    }
    const std::vector<PauliOperator> &generators() const {
        return generators_;
    }
    const PauliOperator &generator(size_t g) const {
        return generators_[g];
    }
    PauliType generator_type(size_t g) const {
        return types_[g];
    }
    /// Positions (into `generators()`) of the generators of one type.
    const std::vector<size_t> &indices(PauliType t) const {
        return t == PauliType::X ? x_indices_ : z_indices_;
    }
    const std::vector<size_t> &x_indices() const {
        return x_indices_;
    }
    const std::vector<size_t> &z_indices() const {
        return z_indices_;
    }
    std::vector<PauliOperator> gens_of_type(PauliType t) const;

    const std::vector<PauliOperator> &logical_x() const {
        return logical_x_;
    }
    const std::vector<PauliOperator> &logical_z() const {
        return logical_z_;
    }
    bool has_logicals() const {
        return logical_x_.size() == k_ && k_ > 0;
    }
    void set_logicals(std::vector<PauliOperator> lx, std::vector<PauliOperator> lz);

    /// Outcomes of the generators of type `t` for error `e`, packed with bit i
    /// for the i-th generator of that type. Requires at most 64 generators.
    uint64_t type_syndrome(const PauliOperator &e, PauliType t) const;
    Syndrome syndrome(const PauliOperator &e) const {
        return syndrome_of(e, generators_);
    }

    /// Membership in the stabilizer group by GF(2) rank comparison.
    bool in_stabilizer_group(const PauliOperator &e) const;
    /// Canonical representative of e modulo the stabilizer group.
    PauliOperator reduce_mod_stabilizers(const PauliOperator &e) const;

    /// True iff e (assumed syndrome-free) anticommutes with any logical operator.
    bool flips_logical(const PauliOperator &e) const;

    ResidualClass classify(const PauliOperator &e) const;

   private:
    std::string name_;
    size_t n_;
    size_t k_;
    size_t d_;
    std::vector<PauliOperator> generators_;
    std::vector<PauliType> types_;
    std::vector<size_t> x_indices_;
    std::vector<size_t> z_indices_;
    std::vector<PauliOperator> logical_x_;
    std::vector<PauliOperator> logical_z_;
    Gf2Basis stabilizer_span_;
};

using CodePtr = std::shared_ptr<const CssCode>;

/// Symplectic row vector x|z of length 2n.
BitVector symplectic_vector(const PauliOperator &p);
PauliOperator from_symplectic(const BitVector &v);

/// Names accepted by `catalog`: 422, steane713, shor913, rm1513.
std::vector<std::string> catalog_names();

/// Built-in codes with logical operators already filled in and d verified.
CodePtr catalog(std::string_view name);

/// Searches Pauli operators in increasing weight for normalizer elements
/// outside the stabilizer group, picks k symplectically paired logical
/// representatives and checks that the minimum logical weight equals d.
/// Throws CodeError when the search disagrees with the declared parameters.
CssCode find_logicals(const CssCode &code);

/// Minimum weight of a nontrivial logical operator, by exhaustive search over
/// pure X and pure Z operators.
size_t minimum_logical_weight(const CssCode &code);

ResidualClass classify_residual(const PauliOperator &e, const CssCode &code);

/// Parses the structured text code format:
///
///     name my_code
///     n 7
///     k 1
///     d 3
///     gen X1 X3 X5 X7
///     gen Z1Z3Z5Z7
///
/// Lines starting with '#' are ignored. Logicals are found automatically.
CssCode parse_code_definition(std::string_view text);
std::string format_code_definition(const CssCode &code);

}  // namespace flagshare

#endif
