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

#ifndef FLAGSHARE_SCHEME_H
#define FLAGSHARE_SCHEME_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flagshare/circuit.h"
#include "flagshare/codes.h"
#include "flagshare/propagate.h"

namespace flagshare {

enum class SchemeKind { Flag, Parallel };

SchemeKind parse_scheme_kind(std::string_view s);
const char *scheme_kind_name(SchemeKind k);

/// Which stabilizer type a gadget measures.
enum class GadgetSide { X, Z, Mixed };

/// One extraction circuit of the complete flagged extraction.
struct Gadget {
    Circuit circuit;
    CompiledCircuit compiled;
    GadgetSide side;
    /// Bit set over generator indices.
    uint64_t generators = 0;
    /// True when the gadget has no dedicated flag qubit and its ancillas flag
    /// one another: any nonzero outcome pattern plays the role of a raised flag.
    bool self_flagging = false;
};

/// A conditional follow-up extraction: circuits run back to back.
struct Followup {
    std::vector<Circuit> circuits;
    std::vector<CompiledCircuit> compiled;
    uint64_t generators = 0;

    bool empty() const {
        return circuits.empty();
    }
    void add(Circuit c);
};

/// Extra conditional extractions counted per EC block when the census
/// includes unflagged follow-ups.
struct FollowupMultiplicity {
    size_t complete = 0;
    size_t z_only = 0;
    size_t x_only = 0;
};

struct Scheme {
    CodePtr code;
    SchemeKind kind;
    std::vector<Gadget> gadgets;
    /// Unflagged extraction of all X-type generators (detects Z errors).
    Followup x_extraction;
    /// Unflagged extraction of all Z-type generators (detects X errors).
    Followup z_extraction;
    Followup complete;
    /// Error detection only (distance 2).
    bool detection_only = false;
    FollowupMultiplicity census_followups;

    std::string id() const;
    std::vector<size_t> gadgets_on_side(GadgetSide side) const;
    const Followup &followup_measuring(PauliType t) const {
        return t == PauliType::X ? x_extraction : z_extraction;
    }
};

/// Default CNOT orders (0-based data qubits) for the shared-flag groups.
struct GroupSpec {
    std::vector<size_t> generators;
    std::vector<std::vector<size_t>> orders;
};

/// The parallel grouping of a code: one entry per part, in execution order.
std::vector<GroupSpec> default_parallel_groups(const CssCode &code);

Scheme build_scheme(CodePtr code, SchemeKind kind);
/// Parallel scheme with explicit shared-flag groups (shor913 / rm1513).
Scheme build_parallel_scheme(CodePtr code, const std::vector<GroupSpec> &groups);

/// Leading extraction on both blocks, transversal CNOT (block 1 controls),
/// trailing extraction on both blocks. Data qubits of block b are
/// b*n .. b*n+n-1.
Circuit build_exrec_cnot(const Scheme &scheme);

/// Census of the ex-Rec. With `include_conditional_unflagged` the scheme's
/// follow-up multiplicities are added for each of the four EC blocks.
LocationCensus exrec_census(const Scheme &scheme, bool include_conditional_unflagged = false);

/// Gadget circuits of the [[4,2,2]] and [[7,1,3]] parallel schemes.
Circuit parallel_422_circuit();
std::vector<Circuit> parallel_steane_circuits();

}  // namespace flagshare

#endif
