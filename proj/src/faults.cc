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

#include "flagshare/faults.h"

#include <stdexcept>

namespace flagshare {

void NoiseParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
}

double NoiseParams::rate_multiple(LocationKind kind, double gamma) {
    switch (kind) {
        case LocationKind::MeasX:
        case LocationKind::MeasZ:
            return 2.0 / 3.0;
        case LocationKind::Idle:
            return gamma;
        default:
            return 1.0;
    }
}

int num_effects(LocationKind kind) {
    switch (kind) {
        case LocationKind::Cnot:
        case LocationKind::Swap:
            return 15;
        case LocationKind::MeasX:
        case LocationKind::MeasZ:
            return 1;
        default:
            return 3;
    }
}

std::vector<Gate> flat_gates(const Circuit &c) {
    std::vector<Gate> out;
    for (const auto &step : c.steps()) {
        out.insert(out.end(), step.begin(), step.end());
    }
    return out;
}

std::vector<WeightedFault> fault_set(const Circuit &c, uint32_t location, double gamma) {
    auto gates = flat_gates(c);
    if (location >= gates.size()) {
        throw std::out_of_range("location " + std::to_string(location) + " not in circuit");
    }
    LocationKind kind = location_kind(gates[location].kind);
    int count = num_effects(kind);
    double each = NoiseParams::rate_multiple(kind, gamma) / count;
    std::vector<WeightedFault> out;
    for (int e = 1; e <= count; e++) {
        out.push_back(WeightedFault{FaultEvent{location, static_cast<uint8_t>(e)}, each});
    }
    return out;
}

std::vector<FaultEvent> enumerate_single_faults(const Circuit &c) {
    std::vector<FaultEvent> out;
    uint32_t loc = 0;
    for (const auto &step : c.steps()) {
        for (const auto &g : step) {
            int count = num_effects(location_kind(g.kind));
            for (int e = 1; e <= count; e++) {
                out.push_back(FaultEvent{loc, static_cast<uint8_t>(e)});
            }
            loc++;
        }
    }
    return out;
}

std::vector<FaultEvent> sample_faults(const Circuit &c, const NoiseParams &params, Rng &rng) {
    params.validate();
    std::vector<FaultEvent> out;
    uint32_t loc = 0;
    for (const auto &step : c.steps()) {
        for (const auto &g : step) {
            LocationKind kind = location_kind(g.kind);
            if (rng.uniform() < params.rate(kind)) {
                int count = num_effects(kind);
                out.push_back(FaultEvent{loc, static_cast<uint8_t>(1 + rng.below(count))});
            }
            loc++;
        }
    }
    return out;
}

std::string effect_name(LocationKind kind, uint8_t effect) {
    static const char names[4] = {'I', 'X', 'Z', 'Y'};
    switch (kind) {
        case LocationKind::MeasX:
        case LocationKind::MeasZ:
            return "flip";
        case LocationKind::Cnot:
        case LocationKind::Swap:
            return std::string{names[effect & 3], names[(effect >> 2) & 3]};
        default:
            return std::string{names[effect & 3]};
    }
}

std::string location_label(const Circuit &c, uint32_t location) {
    uint32_t loc = 0;
    for (size_t s = 0; s < c.num_steps(); s++) {
        for (const auto &g : c.steps()[s]) {
            if (loc == location) {
                std::string label = "step " + std::to_string(s) + " " + gate_name(g.kind) + " " + std::to_string(g.a);
                if (is_two_qubit(g.kind)) {
                    label += " " + std::to_string(g.b);
                }
                return label;
            }
            loc++;
        }
    }
    throw std::out_of_range("location " + std::to_string(location) + " not in circuit");
}

}  // namespace flagshare
