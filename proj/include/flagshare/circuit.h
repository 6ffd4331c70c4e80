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

#ifndef FLAGSHARE_CIRCUIT_H
#define FLAGSHARE_CIRCUIT_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flagshare/pauli.h"

namespace flagshare {

enum class QubitRole : uint8_t { Data, Ancilla, Flag };

enum class GateKind : uint8_t { PrepZ, PrepX, CNOT, SWAP, MeasZ, MeasX, Idle };

enum class LocationKind : uint8_t { Prep, MeasX, MeasZ, Cnot, Swap, Idle, Single };

const char *gate_name(GateKind k);
const char *location_kind_name(LocationKind k);
LocationKind location_kind(GateKind k);

inline bool is_two_qubit(GateKind k) {
    return k == GateKind::CNOT || k == GateKind::SWAP;
}
inline bool is_measurement(GateKind k) {
    return k == GateKind::MeasZ || k == GateKind::MeasX;
}
inline bool is_prep(GateKind k) {
    return k == GateKind::PrepZ || k == GateKind::PrepX;
}

/// One gate. For CNOT `a` is the control and `b` the target.
/// For measurements `tag` is the generator index (ancilla) or flag number (flag).
struct Gate {
    GateKind kind;
    uint32_t a;
    uint32_t b = 0;
    int32_t tag = -1;

    bool operator==(const Gate &) const = default;
};

struct Location {
    size_t step;
    size_t gate;
    LocationKind kind;

    bool operator==(const Location &) const = default;
};

struct LocationCensus {
    size_t prep = 0;
    size_t meas_x = 0;
    size_t meas_z = 0;
    size_t cnot = 0;
    size_t idle = 0;
    size_t swap = 0;

    size_t total() const {
        return prep + meas_x + meas_z + cnot + idle + swap;
    }
    LocationCensus &operator+=(const LocationCensus &o);
    LocationCensus scaled(size_t factor) const;
    bool operator==(const LocationCensus &) const = default;
};

struct MeasurementInfo {
    size_t step;
    size_t gate;
    uint32_t qubit;
    bool x_basis;
    QubitRole role;
    int32_t tag;
};

/// Timestep-scheduled circuit over a register whose first `num_data` qubits
/// are data qubits.
///
/// Idle gates are explicit. Builders fill idles on every register qubit not
/// touched during a step that contains a CNOT or SWAP; preparation and
/// measurement layers carry no idles.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(size_t num_data);

    uint32_t add_qubit(QubitRole role);

    size_t num_qubits() const {
        return roles_.size();
    }
    size_t num_data() const {
        return num_data_;
    }
    QubitRole role(uint32_t q) const {
        return roles_[q];
    }
    const std::vector<QubitRole> &roles() const {
        return roles_;
    }
    const std::vector<std::vector<Gate>> &steps() const {
        return steps_;
    }
    size_t num_steps() const {
        return steps_.size();
    }
    size_t num_gates() const;

    /// Appends a timestep. Throws std::invalid_argument when a qubit appears
    /// twice or an index is out of range.
    void append_step(std::vector<Gate> gates);

    /// Adds Idle gates to each unitary step (one containing a CNOT or SWAP)
    /// for every qubit the step does not touch.
    void fill_idles();

    /// Appends `sub` after the current steps. Data qubit i of `sub` maps to
    /// data qubit data_map[i] here; its non-data qubits become fresh qubits.
    void append(const Circuit &sub, std::span<const uint32_t> data_map);

    /// Every gate in (step, gate) order.
    std::vector<Location> locations() const;
    std::vector<MeasurementInfo> measurements() const;

    /// Removes flag qubits and every gate touching them.
    Circuit without_flags() const;

    const std::string &name() const {
        return name_;
    }
    void set_name(std::string name) {
        name_ = std::move(name);
    }

    bool operator==(const Circuit &o) const {
        return num_data_ == o.num_data_ && roles_ == o.roles_ && steps_ == o.steps_;
    }

   private:
    size_t num_data_ = 0;
    std::vector<QubitRole> roles_;
    std::vector<std::vector<Gate>> steps_;
    std::string name_;
};

LocationCensus census(const Circuit &c);

/// Bare parity measurement of a pure-type generator. `order` lists 0-based
/// data qubits in CNOT order and defaults to the support order.
Circuit build_unflagged(const PauliOperator &g, int32_t gen_index, std::vector<size_t> order = {});

/// Standard flagged extraction: the flag couples to the ancilla right after
/// the first and right before the last data CNOT. Requires weight >= 3.
Circuit build_flagged(const PauliOperator &g, int32_t gen_index, std::vector<size_t> order = {});

struct GroupMember {
    PauliOperator g;
    int32_t gen_index;
    std::vector<size_t> order;
};

/// Same-type generators measured in parallel, one ancilla each, optionally
/// guarded by a single shared flag. Per-generator gate sequences are
/// interleaved round-robin and packed greedily into the earliest free step.
Circuit build_shared_flag(const std::vector<GroupMember> &group, bool with_flag = true);

/// Text format:
///
///     circuit <name>
///     data 4
///     ancilla 4 5
///     flag 6
///     PZ 4; PX 6
///     CX 0 4; I 1; I 2; I 3
///     MZ 4 g0; MX 6 f0
///
/// Qubits are 0-based. `g<i>` tags a syndrome bit of generator i, `f<i>` a flag bit.
std::string format_circuit(const Circuit &c);
Circuit parse_circuit(std::string_view text);

}  // namespace flagshare

#endif
