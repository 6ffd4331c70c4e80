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

#include <set>

#include "flagshare/circuit.h"
#include "flagshare/codes.h"
#include "flagshare/propagate.h"
#include "flagshare/scheme.h"

using namespace flagshare;

namespace {

size_t count_kind(const Circuit &c, GateKind k) {
    size_t n = 0;
    for (const auto &step : c.steps()) {
        for (const auto &g : step) {
            n += g.kind == k;
        }
    }
    return n;
}

PauliOperator P(std::string_view s, size_t n) {
    return PauliOperator::parse(s, n);
}

}  // namespace

TEST(Circuit, UnflaggedWeightFourZ) {
    Circuit c = build_unflagged(P("Z1 Z2 Z3 Z4", 4), 0);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 4u);
    EXPECT_EQ(c.num_qubits(), 5u);
    EXPECT_EQ(count_kind(c, GateKind::PrepZ), 1u);
    EXPECT_EQ(count_kind(c, GateKind::MeasZ), 1u);
    for (const auto &g : c.steps()[1]) {
        if (g.kind == GateKind::CNOT) {
            EXPECT_EQ(g.b, 4u);
        }
    }
}

TEST(Circuit, UnflaggedWeightTwo) {
    Circuit c = build_unflagged(P("Z1 Z2", 9), 0);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 2u);
}

TEST(Circuit, BuildersRejectBadInput) {
    EXPECT_THROW(build_unflagged(PauliOperator(4), 0), std::invalid_argument);
    EXPECT_THROW(build_unflagged(P("X1 Z2", 4), 0), std::invalid_argument);
    EXPECT_THROW(build_flagged(P("Z1 Z2", 4), 0), std::invalid_argument);
    std::vector<GroupMember> mixed{{P("Z1 Z2 Z3", 4), 0, {}}, {P("X1 X2 X3", 4), 1, {}}};
    EXPECT_THROW(build_shared_flag(mixed), std::invalid_argument);
}

TEST(Circuit, FlaggedZHasPlusFlagCoupledAfterFirstAndBeforeLast) {
    Circuit c = build_flagged(P("Z1 Z2 Z3 Z4", 4), 0);
    EXPECT_EQ(c.num_qubits(), 6u);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 6u);
    EXPECT_EQ(count_kind(c, GateKind::PrepX), 1u);
    EXPECT_EQ(count_kind(c, GateKind::MeasX), 1u);
    std::vector<Gate> cnots;
    for (const auto &step : c.steps()) {
        for (const auto &g : step) {
            if (g.kind == GateKind::CNOT) {
                cnots.push_back(g);
            }
        }
    }
    ASSERT_EQ(cnots.size(), 6u);
    EXPECT_EQ(cnots[0].a, 0u);
    EXPECT_EQ(c.role(cnots[1].a), QubitRole::Flag);
    EXPECT_EQ(c.role(cnots[4].a), QubitRole::Flag);
    EXPECT_EQ(cnots[5].a, 3u);
}

TEST(Circuit, FlaggedXIsDual) {
    Circuit c = build_flagged(P("X1 X2 X3 X4", 4), 1);
    EXPECT_EQ(count_kind(c, GateKind::PrepZ), 1u);
    EXPECT_EQ(count_kind(c, GateKind::PrepX), 1u);
    for (const auto &step : c.steps()) {
        for (const auto &g : step) {
            if (g.kind == GateKind::CNOT) {
                EXPECT_EQ(c.role(g.a), QubitRole::Ancilla);
            }
        }
    }
}

TEST(Circuit, ShorWeightSixFlagged) {
    auto code = catalog("shor913");
    Circuit c = build_flagged(code->generator(6), 6);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 8u);
}

TEST(Circuit, EveryBuilderIsDeterministicOnCodewords) {
    for (const auto &name : catalog_names()) {
        auto code = catalog(name);
        for (size_t g = 0; g < code->num_generators(); g++) {
            std::string why;
            EXPECT_TRUE(check_deterministic(build_unflagged(code->generator(g), g), *code, &why)) << why;
            if (code->generator(g).weight() >= 3) {
                Circuit f = build_flagged(code->generator(g), g);
                EXPECT_TRUE(check_deterministic(f, *code, &why)) << name << " g" << g << ": " << why;
                EXPECT_TRUE(check_deterministic(f.without_flags(), *code, &why)) << why;
            }
        }
        for (auto kind : {SchemeKind::Flag, SchemeKind::Parallel}) {
            Scheme s = build_scheme(code, kind);
            for (const auto &gadget : s.gadgets) {
                std::string why;
                EXPECT_TRUE(check_deterministic(gadget.circuit, *code, &why)) << s.id() << ": " << why;
            }
        }
    }
}

TEST(Circuit, SingleMemberGroupMatchesFlagged) {
    auto code = catalog("steane713");
    Circuit a = build_shared_flag({GroupMember{code->generator(1), 1, {}}}, true);
    Circuit b = build_flagged(code->generator(1), 1);
    EXPECT_EQ(census(a), census(b));
    EXPECT_EQ(count_kind(a, GateKind::CNOT), count_kind(b, GateKind::CNOT));
}

TEST(Circuit, ShorPartsShape) {
    auto code = catalog("shor913");
    Scheme s = build_scheme(code, SchemeKind::Parallel);
    ASSERT_EQ(s.gadgets.size(), 2u);
    const Circuit &a = s.gadgets[0].circuit;
    const Circuit &b = s.gadgets[1].circuit;
    EXPECT_EQ(count_kind(a, GateKind::CNOT), 12u);
    EXPECT_EQ(a.num_qubits(), 15u);
    size_t flags = 0;
    size_t ancillas = 0;
    for (auto r : b.roles()) {
        flags += r == QubitRole::Flag;
        ancillas += r == QubitRole::Ancilla;
    }
    EXPECT_EQ(flags, 1u);
    EXPECT_EQ(ancillas, 2u);
}

TEST(Circuit, SchemeShapes) {
    EXPECT_EQ(build_scheme(catalog("rm1513"), SchemeKind::Parallel).gadgets.size(), 5u);
    Circuit c = parallel_422_circuit();
    EXPECT_EQ(c.num_qubits(), 6u);
    EXPECT_EQ(count_kind(c, GateKind::SWAP), 2u);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 8u);
}

TEST(Circuit, OneGatePerQubitPerStep) {
    Circuit c(2);
    c.add_qubit(QubitRole::Ancilla);
    EXPECT_THROW(c.append_step({Gate{GateKind::CNOT, 0, 2}, Gate{GateKind::CNOT, 1, 2}}), std::invalid_argument);
    EXPECT_THROW(c.append_step({Gate{GateKind::CNOT, 0, 5}}), std::invalid_argument);
    EXPECT_THROW(c.append_step({}), std::invalid_argument);
}

TEST(Circuit, IdlesFillUnitarySteps) {
    auto code = catalog("steane713");
    Circuit c = build_flagged(code->generator(0), 0);
    for (const auto &step : c.steps()) {
        bool unitary = false;
        std::set<uint32_t> touched;
        for (const auto &g : step) {
            unitary |= g.kind == GateKind::CNOT || g.kind == GateKind::SWAP;
            touched.insert(g.a);
            if (is_two_qubit(g.kind)) {
                touched.insert(g.b);
            }
        }
        if (unitary) {
            EXPECT_EQ(touched.size(), c.num_qubits());
        }
    }
}

TEST(Circuit, TextRoundTrip) {
    for (const auto &name : catalog_names()) {
        for (auto kind : {SchemeKind::Flag, SchemeKind::Parallel}) {
            Scheme s = build_scheme(catalog(name), kind);
            for (const auto &g : s.gadgets) {
                std::string text = format_circuit(g.circuit);
                Circuit back = parse_circuit(text);
                EXPECT_EQ(back, g.circuit) << text;
                EXPECT_EQ(format_circuit(back), text);
            }
        }
    }
    EXPECT_THROW(parse_circuit("data 2\nCX 0 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("data 2\nFOO 1\n"), std::invalid_argument);
}

TEST(Census, EmptyCircuitIsZero) {
    EXPECT_EQ(census(Circuit(3)).total(), 0u);
}

TEST(Census, FourTwoTwoFlagExRec) {
    Scheme s = build_scheme(catalog("422"), SchemeKind::Flag);
    LocationCensus c = exrec_census(s);
    EXPECT_EQ(c.prep, 16u);
    EXPECT_EQ(c.meas_x, 8u);
    EXPECT_EQ(c.meas_z, 8u);
    EXPECT_EQ(c.cnot, 52u);
    EXPECT_EQ(c.idle, 192u);
    EXPECT_EQ(c.swap, 0u);
    EXPECT_EQ(c.total(), 276u);
}

TEST(Census, FourTwoTwoParallelExRec) {
    Scheme s = build_scheme(catalog("422"), SchemeKind::Parallel);
    LocationCensus c = exrec_census(s);
    EXPECT_EQ(c.prep, 8u);
    EXPECT_EQ(c.cnot, 36u);
    EXPECT_EQ(c.swap, 8u);
    EXPECT_EQ(c.total(), 124u);
}

TEST(Census, FootnotedColumnsCnotAndPrep) {
    struct Row {
        const char *code;
        SchemeKind kind;
        size_t prep, mx, mz, cnot;
    };
    for (const Row &r : {Row{"steane713", SchemeKind::Flag, 264, 132, 132, 1015},
                         Row{"steane713", SchemeKind::Parallel, 72, 36, 36, 343},
                         Row{"shor913", SchemeKind::Flag, 176, 24, 152, 457},
                         Row{"shor913", SchemeKind::Parallel, 100, 24, 76, 313}}) {
        LocationCensus c = exrec_census(build_scheme(catalog(r.code), r.kind), true);
        EXPECT_EQ(c.cnot, r.cnot) << r.code;
        EXPECT_EQ(c.prep, r.prep) << r.code;
        EXPECT_EQ(c.meas_x, r.mx) << r.code;
        EXPECT_EQ(c.meas_z, r.mz) << r.code;
    }
}

TEST(Census, ExRecHasTransversalLayer) {
    Scheme s = build_scheme(catalog("422"), SchemeKind::Flag);
    Circuit ex = build_exrec_cnot(s);
    size_t transversal = 0;
    for (const auto &step : ex.steps()) {
        for (const auto &g : step) {
            transversal += g.kind == GateKind::CNOT && g.a < 4 && g.b >= 4 && g.b < 8;
        }
    }
    EXPECT_EQ(transversal, 4u);
}

TEST(Census, InvariantUnderReorderWithinStep) {
    Circuit c = build_flagged(catalog("steane713")->generator(3), 3);
    Circuit r(c.num_data());
    for (size_t q = c.num_data(); q < c.num_qubits(); q++) {
        r.add_qubit(c.role(q));
    }
    for (const auto &step : c.steps()) {
        std::vector<Gate> rev(step.rbegin(), step.rend());
        r.append_step(rev);
    }
    EXPECT_EQ(census(r), census(c));
}
