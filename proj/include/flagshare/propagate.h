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

#ifndef FLAGSHARE_PROPAGATE_H
#define FLAGSHARE_PROPAGATE_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flagshare/circuit.h"
#include "flagshare/codes.h"
#include "flagshare/faults.h"

namespace flagshare {

/// Outcome of pushing a Pauli frame through a circuit.
struct FrameResult {
    /// Frame on the data qubits after the circuit.
    PauliOperator residual;
    /// One bit per measurement in circuit order; 1 means the -1 outcome.
    std::vector<uint8_t> outcomes;
    /// Outcomes of flag-qubit measurements, in circuit order.
    std::vector<uint8_t> flag_bits;
    /// Outcomes of syndrome-ancilla measurements, in circuit order.
    std::vector<uint8_t> synd_bits;
    /// Generator index of each entry of synd_bits.
    std::vector<int32_t> synd_generators;

    bool flag_raised() const;
    bool any_syndrome() const;
};

/// Propagates faults (and an optional input data error) through `c`.
/// Throws std::out_of_range for a fault on a nonexistent location.
FrameResult propagate(const Circuit &c, std::span<const FaultEvent> faults, const PauliOperator *input = nullptr);

struct RoundResult {
    /// Per-circuit results, in order.
    std::vector<FrameResult> parts;
    PauliOperator output_frame;
    /// Concatenated outcomes of all parts.
    std::vector<uint8_t> outcomes;
};

/// Runs the circuits back to back on the same data register, feeding each
/// circuit's residual into the next. `faults[i]` belongs to circuit i and may
/// be shorter than `circuits` (missing entries mean no faults).
RoundResult run_round(std::span<const Circuit> circuits, const PauliOperator &input,
                      std::span<const std::vector<FaultEvent>> faults = {});

/// The data-register observable each measurement reveals on a noiseless run,
/// or nullopt when the outcome is not determined by the data state.
std::vector<std::optional<PauliOperator>> measured_observables(const Circuit &c);

/// True iff every ancilla measurement reveals exactly its tagged generator and
/// every flag measurement is deterministic and trivial. `why` gets a reason.
bool check_deterministic(const Circuit &c, const CssCode &code, std::string *why = nullptr);

/// A fault as consumed by the compiled simulator.
struct Injection {
    uint32_t gate;
    uint8_t effect;
};

struct GadgetResult {
    uint64_t x = 0;
    uint64_t z = 0;
    /// Bit m is the outcome of the m-th measurement.
    uint64_t outcomes = 0;
};

/// Flattened circuit over at most 64 qubits and 64 measurements, with frames
/// held as machine words.
class CompiledCircuit {
   public:
    struct Op {
        GateKind kind;
        uint8_t a;
        uint8_t b;
        uint8_t meas;
    };

    CompiledCircuit() = default;
    explicit CompiledCircuit(const Circuit &c);

    const Circuit &source() const {
        return source_;
    }
    size_t num_gates() const {
        return ops_.size();
    }
    size_t num_meas() const {
        return meas_tags_.size();
    }
    size_t num_data() const {
        return num_data_;
    }
    const std::vector<Op> &ops() const {
        return ops_;
    }
    LocationKind kind(uint32_t gate) const {
        return location_kind(ops_[gate].kind);
    }

    /// `in_x`/`in_z` are the data frame; injections must be sorted by gate.
    GadgetResult run(uint64_t in_x, uint64_t in_z, std::span<const Injection> faults) const;

    /// Measurement-index masks.
    uint64_t flag_mask() const {
        return flag_mask_;
    }
    uint64_t syndrome_mask() const {
        return syndrome_mask_;
    }
    const std::vector<int32_t> &meas_tags() const {
        return meas_tags_;
    }

    /// Projects measurement outcomes onto generator indices (bit g set when
    /// the measurement tagged g reads -1).
    uint64_t generator_bits(uint64_t outcomes) const;
    /// Flag outcomes packed by flag order.
    uint64_t flag_bits(uint64_t outcomes) const;
    /// Generators this circuit measures, as a bit set.
    uint64_t measured_generators() const {
        return measured_generators_;
    }

   private:
    Circuit source_;
    size_t num_data_ = 0;
    std::vector<Op> ops_;
    std::vector<int32_t> meas_tags_;
    std::vector<uint8_t> flag_meas_;
    uint64_t flag_mask_ = 0;
    uint64_t syndrome_mask_ = 0;
    uint64_t measured_generators_ = 0;
};

/// Applies a fault effect to word-packed frames.
inline void apply_effect(uint64_t &x, uint64_t &z, uint8_t a, uint8_t b, bool two_qubit, uint8_t effect) {
    x ^= static_cast<uint64_t>(effect & 1) << a;
    z ^= static_cast<uint64_t>((effect >> 1) & 1) << a;
    if (two_qubit) {
        x ^= static_cast<uint64_t>((effect >> 2) & 1) << b;
        z ^= static_cast<uint64_t>((effect >> 3) & 1) << b;
    }
}

uint64_t to_mask(const BitVector &v);
PauliOperator from_masks(uint64_t x, uint64_t z, size_t n);

}  // namespace flagshare

#endif
