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

#ifndef FLAGSHARE_FAULTS_H
#define FLAGSHARE_FAULTS_H

#include <cstdint>
#include <string>
#include <vector>

#include "flagshare/circuit.h"
#include "flagshare/rng.h"

namespace flagshare {

/// A single location failure.
///
/// `location` is the flat gate index in (step, gate) order. `effect` encodes
/// the Pauli applied after the gate: bit 0 = X and bit 1 = Z on the first
/// qubit, bits 2 and 3 the same on the second qubit of a CNOT or SWAP. For a
/// measurement the only effect is 1, an outcome flip.
struct FaultEvent {
    uint32_t location;
    uint8_t effect;

    bool operator==(const FaultEvent &) const = default;
    auto operator<=>(const FaultEvent &) const = default;
};

struct NoiseParams {
    double p = 0.0;
    double gamma = 1.0;

    /// Throws std::invalid_argument unless 0 <= p <= 1 and 0 <= gamma <= 1.
    void validate() const;

    /// Total failure probability of one location of the given kind.
    double rate(LocationKind kind) const {
        return p * rate_multiple(kind, gamma);
    }
    static double rate_multiple(LocationKind kind, double gamma);
};

struct WeightedFault {
    FaultEvent event;
    /// Probability as a multiple of p.
    double weight;
};

/// Number of distinct effects a location of this kind can suffer.
int num_effects(LocationKind kind);

/// All faults of one location with their probabilities in units of p.
std::vector<WeightedFault> fault_set(const Circuit &c, uint32_t location, double gamma = 1.0);

/// Every (location, effect) pair once, ordered by location then effect.
std::vector<FaultEvent> enumerate_single_faults(const Circuit &c);

/// Independent draw of a fault for every location; result in circuit order.
std::vector<FaultEvent> sample_faults(const Circuit &c, const NoiseParams &params, Rng &rng);

/// "X", "Z", "Y", "flip", or two-qubit labels such as "XZ" (first qubit first).
std::string effect_name(LocationKind kind, uint8_t effect);

/// Human-readable location, e.g. "step 3 CX 0 4".
std::string location_label(const Circuit &c, uint32_t location);

/// Flat gate list in location order.
std::vector<Gate> flat_gates(const Circuit &c);

}  // namespace flagshare

#endif
