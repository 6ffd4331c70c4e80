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

#include <gtest/gtest.h>

#include <random>

#include "flagshare/codes.h"
#include "flagshare/faults.h"
#include "flagshare/propagate.h"
#include "flagshare/scheme.h"

using namespace flagshare;

namespace {

PauliOperator P(std::string_view s, size_t n) {
    return PauliOperator::parse(s, n);
}

std::vector<PauliOperator> errors_up_to_two(size_t n) {
    std::vector<PauliOperator> out;
    auto single = [&](PauliOperator &p, size_t q, int e) {
        if (e & 1) {
            p.x_bits().flip(q);
        }
        if (e & 2) {
            p.z_bits().flip(q);
        }
    };
    for (size_t a = 0; a < n; a++) {
        for (int ea = 1; ea <= 3; ea++) {
            PauliOperator p(n);
            single(p, a, ea);
            out.push_back(p);
            for (size_t b = a + 1; b < n; b++) {
                for (int eb = 1; eb <= 3; eb++) {
                    PauliOperator q = p;
                    single(q, b, eb);
                    out.push_back(q);
                }
            }
        }
    }
    return out;
}

/// Syndrome bits in generator order from a run of extraction circuits.
std::vector<uint8_t> measured_syndrome(const std::vector<Circuit> &circuits, const PauliOperator &input,
                                       size_t num_generators) {
    RoundResult r = run_round(circuits, input);
    std::vector<uint8_t> bits(num_generators, 0);
    for (const auto &part : r.parts) {
        for (size_t i = 0; i < part.synd_bits.size(); i++) {
            bits[part.synd_generators[i]] ^= part.synd_bits[i];
        }
    }
    return bits;
}

}  // namespace

TEST(Propagate, NoFaultsAllZero) {
    Circuit c = build_flagged(P("Z1 Z2 Z3 Z4", 4), 0);
    FrameResult r = propagate(c, {});
    EXPECT_TRUE(r.residual.is_identity());
    for (auto b : r.outcomes) {
        EXPECT_EQ(b, 0);
    }
}

TEST(Propagate, HookAtLocationATriggersFlag) {
    Circuit c = build_flagged(P("Z1 Z2 Z3 Z4", 4), 0);
    auto gates = flat_gates(c);
    // Z on the ancilla right after the second data CNOT.
    size_t data_cnots = 0;
    uint32_t loc = 0;
    for (uint32_t i = 0; i < gates.size(); i++) {
        if (gates[i].kind == GateKind::CNOT && c.role(gates[i].a) == QubitRole::Data && ++data_cnots == 2) {
            loc = i;
        }
    }
    std::vector<FaultEvent> f{{loc, 8}};
    FrameResult r = propagate(c, f);
    EXPECT_EQ(r.residual, P("Z3 Z4", 4));
    ASSERT_EQ(r.flag_bits.size(), 1u);
    EXPECT_EQ(r.flag_bits[0], 1);
}

TEST(Propagate, ShorInputXOne) {
    auto code = catalog("shor913");
    std::vector<Circuit> zs;
    for (size_t g : code->z_indices()) {
        zs.push_back(build_unflagged(code->generator(g), g));
    }
    auto bits = measured_syndrome(zs, P("X1", 9), code->num_generators());
    std::vector<uint8_t> want{1, 0, 0, 0, 0, 0, 0, 0};
    EXPECT_EQ(bits, want);
}

TEST(Propagate, FourTwoTwoInputZFour) {
    Scheme s = build_scheme(catalog("422"), SchemeKind::Parallel);
    FrameResult r = propagate(s.gadgets[0].circuit, {}, nullptr);
    PauliOperator in = P("Z4", 4);
    r = propagate(s.gadgets[0].circuit, {}, &in);
    ASSERT_EQ(r.synd_generators.size(), 2u);
    for (size_t i = 0; i < 2; i++) {
        EXPECT_EQ(r.synd_bits[i], r.synd_generators[i] == 1 ? 1 : 0);
    }
}

TEST(Propagate, StabilizerInputGivesZeroSyndrome) {
    for (const auto &name : catalog_names()) {
        auto code = catalog(name);
        Scheme s = build_scheme(code, SchemeKind::Flag);
        for (const auto &g : code->generators()) {
            auto bits = measured_syndrome(s.complete.circuits, g, code->num_generators());
            for (auto b : bits) {
                EXPECT_EQ(b, 0);
            }
        }
    }
}

TEST(Propagate, OracleEquivalenceWeightTwo) {
    for (const auto &name : catalog_names()) {
        auto code = catalog(name);
        for (auto kind : {SchemeKind::Flag, SchemeKind::Parallel}) {
            Scheme s = build_scheme(code, kind);
            std::vector<Circuit> circuits;
            for (const auto &g : s.gadgets) {
                circuits.push_back(g.circuit);
            }
            for (const auto &e : errors_up_to_two(code->n())) {
                Syndrome want = code->syndrome(e);
                auto got = measured_syndrome(circuits, e, code->num_generators());
                for (size_t i = 0; i < got.size(); i++) {
                    ASSERT_EQ(got[i], want[i] ? 1 : 0) << s.id() << " " << e.str() << " gen " << i;
                }
                RoundResult r = run_round(circuits, e);
                EXPECT_EQ(r.output_frame, e);
            }
        }
    }
}

TEST(Propagate, CompiledMatchesReference) {
    std::mt19937_64 rng(7);
    for (const auto &name : catalog_names()) {
        Scheme s = build_scheme(catalog(name), SchemeKind::Parallel);
        for (const auto &g : s.gadgets) {
            auto faults = enumerate_single_faults(g.circuit);
            for (int trial = 0; trial < 200; trial++) {
                std::vector<FaultEvent> pick;
                for (int k = 0; k < 3; k++) {
                    pick.push_back(faults[rng() % faults.size()]);
                }
                std::sort(pick.begin(), pick.end());
                pick.erase(std::unique(pick.begin(), pick.end(),
                                       [](const FaultEvent &a, const FaultEvent &b) { return a.location == b.location; }),
                           pick.end());
                std::vector<Injection> inj;
                for (const auto &f : pick) {
                    inj.push_back(Injection{f.location, f.effect});
                }
                FrameResult ref = propagate(g.circuit, pick);
                GadgetResult fast = g.compiled.run(0, 0, inj);
                EXPECT_EQ(from_masks(fast.x, fast.z, g.circuit.num_data()), ref.residual);
                for (size_t m = 0; m < ref.outcomes.size(); m++) {
                    EXPECT_EQ((fast.outcomes >> m) & 1, ref.outcomes[m]);
                }
            }
        }
    }
}

TEST(Propagate, Linearity) {
    std::mt19937_64 rng(11);
    Scheme s = build_scheme(catalog("steane713"), SchemeKind::Flag);
    const Circuit &c = s.gadgets[0].circuit;
    auto all = enumerate_single_faults(c);
    for (int trial = 0; trial < 500; trial++) {
        FaultEvent a = all[rng() % all.size()];
        FaultEvent b = all[rng() % all.size()];
        if (a.location == b.location) {
            continue;
        }
        std::vector<FaultEvent> fa{a}, fb{b}, both{a, b};
        std::sort(both.begin(), both.end());
        FrameResult ra = propagate(c, fa);
        FrameResult rb = propagate(c, fb);
        FrameResult rab = propagate(c, both);
        EXPECT_EQ(rab.residual, ra.residual * rb.residual);
        for (size_t m = 0; m < rab.outcomes.size(); m++) {
            EXPECT_EQ(rab.outcomes[m], ra.outcomes[m] ^ rb.outcomes[m]);
        }
    }
}

TEST(Propagate, CnotConjugationTable) {
    // Two data qubits, CNOT 0 -> 1, then nothing. Input Pauli P on (0,1)
    // must come out as the standard conjugate.
    Circuit c(2);
    c.append_step({Gate{GateKind::CNOT, 0, 1}});
    for (int in = 0; in < 16; in++) {
        bool x0 = in & 1, z0 = in & 2, x1 = in & 4, z1 = in & 8;
        PauliOperator p(2);
        if (x0) p.x_bits().flip(0);
        if (z0) p.z_bits().flip(0);
        if (x1) p.x_bits().flip(1);
        if (z1) p.z_bits().flip(1);
        PauliOperator want(2);
        if (x0) want.x_bits().flip(0);
        if (x0 ^ x1) want.x_bits().flip(1);
        if (z0 ^ z1) want.z_bits().flip(0);
        if (z1) want.z_bits().flip(1);
        EXPECT_EQ(propagate(c, {}, &p).residual, want) << in;
    }
}

TEST(Propagate, SwapAndMeasurementRules) {
    Circuit c(1);
    uint32_t a = c.add_qubit(QubitRole::Ancilla);
    c.append_step({Gate{GateKind::PrepZ, a}});
    c.append_step({Gate{GateKind::SWAP, 0, a}});
    c.append_step({Gate{GateKind::MeasZ, a, 0, 0}});
    PauliOperator x = P("X1", 1);
    FrameResult r = propagate(c, {}, &x);
    EXPECT_TRUE(r.residual.is_identity());
    EXPECT_EQ(r.outcomes[0], 1);
    std::vector<FaultEvent> flip{{2, 1}};
    EXPECT_EQ(propagate(c, flip, &x).outcomes[0], 0);
    std::vector<FaultEvent> bad{{9, 1}};
    EXPECT_THROW(propagate(c, bad), std::out_of_range);
}
