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

#include "flagshare/propagate.h"

#include <algorithm>
#include <stdexcept>

namespace flagshare {

bool FrameResult::flag_raised() const {
    return std::any_of(flag_bits.begin(), flag_bits.end(), [](uint8_t b) { return b != 0; });
}

bool FrameResult::any_syndrome() const {
    return std::any_of(synd_bits.begin(), synd_bits.end(), [](uint8_t b) { return b != 0; });
}

uint64_t to_mask(const BitVector &v) {
    if (v.size() > 64) {
        throw DimensionError("bit vector longer than 64 bits");
    }
    return v.to_u64();
}

PauliOperator from_masks(uint64_t x, uint64_t z, size_t n) {
    return PauliOperator(BitVector::from_u64(x, n), BitVector::from_u64(z, n));
}

FrameResult propagate(const Circuit &c, std::span<const FaultEvent> faults, const PauliOperator *input) {
    size_t nq = c.num_qubits();
    BitVector x(nq);
    BitVector z(nq);
    if (input) {
        if (input->num_qubits() != c.num_data()) {
            throw DimensionError("input frame does not match the data register");
        }
        for (size_t q = 0; q < c.num_data(); q++) {
            x.set(q, input->x_bits()[q]);
            z.set(q, input->z_bits()[q]);
        }
    }
    size_t total = c.num_gates();
    std::vector<std::vector<uint8_t>> at(total);
    for (const auto &f : faults) {
        if (f.location >= total) {
            throw std::out_of_range("fault on nonexistent location " + std::to_string(f.location));
        }
        at[f.location].push_back(f.effect);
    }

    FrameResult r;
    uint32_t loc = 0;
    for (const auto &step : c.steps()) {
        for (const auto &g : step) {
            switch (g.kind) {
                case GateKind::PrepZ:
                case GateKind::PrepX:
                    x.set(g.a, false);
                    z.set(g.a, false);
                    break;
                case GateKind::CNOT:
                    if (x[g.a]) {
                        x.flip(g.b);
                    }
                    if (z[g.b]) {
                        z.flip(g.a);
                    }
                    break;
                case GateKind::SWAP: {
                    bool xa = x[g.a];
                    bool za = z[g.a];
                    x.set(g.a, x[g.b]);
                    z.set(g.a, z[g.b]);
                    x.set(g.b, xa);
                    z.set(g.b, za);
                    break;
                }
                case GateKind::MeasZ:
                case GateKind::MeasX: {
                    bool bit = g.kind == GateKind::MeasZ ? x[g.a] : z[g.a];
                    for (uint8_t e : at[loc]) {
                        bit ^= (e & 1) != 0;
                    }
                    r.outcomes.push_back(bit);
                    if (c.role(g.a) == QubitRole::Flag) {
                        r.flag_bits.push_back(bit);
                    } else {
                        r.synd_bits.push_back(bit);
                        r.synd_generators.push_back(g.tag);
                    }
                    break;
                }
                case GateKind::Idle:
                    break;
            }
            if (!is_measurement(g.kind)) {
                for (uint8_t e : at[loc]) {
                    if (e & 1) {
                        x.flip(g.a);
                    }
                    if (e & 2) {
                        z.flip(g.a);
                    }
                    if (is_two_qubit(g.kind)) {
                        if (e & 4) {
                            x.flip(g.b);
                        }
                        if (e & 8) {
                            z.flip(g.b);
                        }
                    }
                }
            }
            loc++;
        }
    }
    r.residual = PauliOperator(c.num_data());
    for (size_t q = 0; q < c.num_data(); q++) {
        r.residual.x_bits().set(q, x[q]);
        r.residual.z_bits().set(q, z[q]);
    }
    return r;
}

RoundResult run_round(std::span<const Circuit> circuits, const PauliOperator &input,
                      std::span<const std::vector<FaultEvent>> faults) {
    RoundResult out;
    PauliOperator frame = input;
    for (size_t i = 0; i < circuits.size(); i++) {
        if (circuits[i].num_data() != input.num_qubits()) {
            throw DimensionError("circuit " + std::to_string(i) + " acts on a different data register");
        }
        std::span<const FaultEvent> f;
        if (i < faults.size()) {
            f = faults[i];
        }
        FrameResult r = propagate(circuits[i], f, &frame);
        frame = r.residual;
        out.outcomes.insert(out.outcomes.end(), r.outcomes.begin(), r.outcomes.end());
        out.parts.push_back(std::move(r));
    }
    out.output_frame = frame;
    return out;
}

std::vector<std::optional<PauliOperator>> measured_observables(const Circuit &c) {
    std::vector<std::optional<PauliOperator>> out;
    size_t nq = c.num_qubits();
    const auto &steps = c.steps();
    for (const auto &m : c.measurements()) {
        BitVector x(nq);
        BitVector z(nq);
        (m.x_basis ? x : z).set(m.qubit, true);
        bool ok = true;
        for (size_t s = m.step; s-- > 0 && ok;) {
            for (const auto &g : steps[s]) {
                switch (g.kind) {
                    case GateKind::CNOT:
                        if (x[g.a]) {
                            x.flip(g.b);
                        }
                        if (z[g.b]) {
                            z.flip(g.a);
                        }
                        break;
                    case GateKind::SWAP: {
                        bool xa = x[g.a];
                        bool za = z[g.a];
                        x.set(g.a, x[g.b]);
                        z.set(g.a, z[g.b]);
                        x.set(g.b, xa);
                        z.set(g.b, za);
                        break;
                    }
                    case GateKind::PrepZ:
                        if (x[g.a]) {
                            ok = false;
                        }
                        z.set(g.a, false);
                        break;
                    case GateKind::PrepX:
                        if (z[g.a]) {
                            ok = false;
                        }
                        x.set(g.a, false);
                        break;
                    case GateKind::MeasZ:
                    case GateKind::MeasX:
                        if (x[g.a] || z[g.a]) {
                            ok = false;
                        }
                        break;
                    case GateKind::Idle:
                        break;
                }
            }
        }
        for (size_t q = c.num_data(); q < nq && ok; q++) {
            if (x[q] || z[q]) {
                ok = false;
            }
        }
        if (!ok) {
            out.emplace_back(std::nullopt);
            continue;
        }
        PauliOperator p(c.num_data());
        for (size_t q = 0; q < c.num_data(); q++) {
            p.x_bits().set(q, x[q]);
            p.z_bits().set(q, z[q]);
        }
        out.emplace_back(std::move(p));
    }
    return out;
}

bool check_deterministic(const Circuit &c, const CssCode &code, std::string *why) {
    auto obs = measured_observables(c);
    auto meas = c.measurements();
    auto fail = [&](const std::string &msg) {
        if (why) {
            *why = msg;
        }
        return false;
    };
    if (c.num_data() != code.n()) {
        return fail("circuit data register does not match the code");
    }
    for (size_t i = 0; i < meas.size(); i++) {
        if (!obs[i]) {
            return fail("measurement " + std::to_string(i) + " on qubit " + std::to_string(meas[i].qubit) +
                        " is not deterministic");
        }
        if (meas[i].role == QubitRole::Flag) {
            if (!obs[i]->is_identity()) {
                return fail("flag measurement " + std::to_string(i) + " reveals " + obs[i]->str());
            }
            continue;
        }
        if (meas[i].tag < 0 || static_cast<size_t>(meas[i].tag) >= code.num_generators()) {
            return fail("measurement " + std::to_string(i) + " has no generator tag");
        }
        if (!(*obs[i] == code.generator(meas[i].tag))) {
            return fail("measurement " + std::to_string(i) + " reveals " + obs[i]->str() + " instead of " +
                        code.generator(meas[i].tag).str());
        }
    }
    return true;
}

CompiledCircuit::CompiledCircuit(const Circuit &c) : source_(c), num_data_(c.num_data()) {
    if (c.num_qubits() > 64) {
        throw DimensionError("compiled circuits support at most 64 qubits");
    }
    for (const auto &step : c.steps()) {
        for (const auto &g : step) {
            Op op{g.kind, static_cast<uint8_t>(g.a), static_cast<uint8_t>(g.b), 0};
            if (is_measurement(g.kind)) {
                if (meas_tags_.size() >= 64) {
                    throw DimensionError("compiled circuits support at most 64 measurements");
                }
                op.meas = static_cast<uint8_t>(meas_tags_.size());
                bool flag = c.role(g.a) == QubitRole::Flag;
                if (flag) {
                    flag_mask_ |= uint64_t{1} << op.meas;
                } else {
                    syndrome_mask_ |= uint64_t{1} << op.meas;
                    if (g.tag >= 0) {
                        measured_generators_ |= uint64_t{1} << g.tag;
                    }
                }
                meas_tags_.push_back(g.tag);
                flag_meas_.push_back(flag);
            }
            ops_.push_back(op);
        }
    }
}

GadgetResult CompiledCircuit::run(uint64_t in_x, uint64_t in_z, std::span<const Injection> faults) const {
    uint64_t x = in_x;
    uint64_t z = in_z;
    uint64_t outcomes = 0;
    size_t fi = 0;
    size_t nf = faults.size();
    size_t count = ops_.size();
    for (size_t i = 0; i < count; i++) {
        const Op &op = ops_[i];
        switch (op.kind) {
            case GateKind::PrepZ:
            case GateKind::PrepX: {
                uint64_t keep = ~(uint64_t{1} << op.a);
                x &= keep;
                z &= keep;
                break;
            }
            case GateKind::CNOT:
                x ^= ((x >> op.a) & 1) << op.b;
                z ^= ((z >> op.b) & 1) << op.a;
                break;
            case GateKind::SWAP: {
                uint64_t dx = ((x >> op.a) ^ (x >> op.b)) & 1;
                x ^= (dx << op.a) | (dx << op.b);
                uint64_t dz = ((z >> op.a) ^ (z >> op.b)) & 1;
                z ^= (dz << op.a) | (dz << op.b);
                break;
            }
            case GateKind::MeasZ:
            case GateKind::MeasX: {
                uint64_t bit = ((op.kind == GateKind::MeasZ ? x : z) >> op.a) & 1;
                while (fi < nf && faults[fi].gate == i) {
                    bit ^= faults[fi].effect & 1;
                    fi++;
                }
                outcomes |= bit << op.meas;
                continue;
            }
            case GateKind::Idle:
                break;
        }
        while (fi < nf && faults[fi].gate == i) {
            apply_effect(x, z, op.a, op.b, is_two_qubit(op.kind), faults[fi].effect);
            fi++;
        }
    }
    uint64_t data = num_data_ >= 64 ? ~uint64_t{0} : (uint64_t{1} << num_data_) - 1;
    return GadgetResult{x & data, z & data, outcomes};
}

uint64_t CompiledCircuit::generator_bits(uint64_t outcomes) const {
    uint64_t g = 0;
    for (size_t m = 0; m < meas_tags_.size(); m++) {
        if (!flag_meas_[m] && ((outcomes >> m) & 1) && meas_tags_[m] >= 0) {
            g ^= uint64_t{1} << meas_tags_[m];
        }
    }
    return g;
}

uint64_t CompiledCircuit::flag_bits(uint64_t outcomes) const {
    uint64_t f = 0;
    size_t k = 0;
    for (size_t m = 0; m < meas_tags_.size(); m++) {
        if (flag_meas_[m]) {
            f |= ((outcomes >> m) & 1) << k;
            k++;
        }
    }
    return f;
}

}  // namespace flagshare
