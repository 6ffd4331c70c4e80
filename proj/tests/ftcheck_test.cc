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

#include <algorithm>
#include <chrono>

#include "flagshare/ftcheck.h"

using namespace flagshare;

namespace {

struct Pair {
    std::string error;
    std::string m;
    bool operator<(const Pair &o) const {
        return std::tie(error, m) < std::tie(o.error, o.m);
    }
    bool operator==(const Pair &) const = default;
};

std::string name_or_none(const PauliOperator &p) {
    return p.is_identity() ? "None" : p.str();
}

/// Inserts a single-qubit Pauli on qubit q immediately before gate `before`
/// by attaching it to the previous gate acting on q.
std::optional<Injection> before_gate(const std::vector<Gate> &gates, uint32_t before, uint32_t q, char pauli) {
    for (int64_t i = static_cast<int64_t>(before) - 1; i >= 0; i--) {
        const Gate &g = gates[i];
        uint8_t bits = pauli == 'X' ? 1 : 2;
        if (g.a == q) {
            return Injection{static_cast<uint32_t>(i), bits};
        }
        if (is_two_qubit(g.kind) && g.b == q) {
            return Injection{static_cast<uint32_t>(i), static_cast<uint8_t>(bits << 2)};
        }
    }
    return std::nullopt;
}

}  // namespace

TEST(FtCheck, FlagRaisedGoldenTableShor) {
    Scheme s = build_scheme(catalog("shor913"), SchemeKind::Parallel);
    std::vector<GoldenRow> want{
        {"X2 X3 X4 X5 X6", "001", "100000"}, {"X2 X4 X5 X6", "001", "110000"},
        {"X2 X4 X6", "001", "111100"},       {"X2 X6", "001", "110100"},
        {"X6", "001", "000100"},             {"X4 X5 X6 X8 X9", "001", "000010"},
        {"X4 X5 X6 X8", "001", "000011"},    {"X4 X6 X8", "001", "001111"},
        {"X4 X6", "001", "001100"},          {"X4", "001", "001000"},
    };
    std::sort(want.begin(), want.end());
    EXPECT_EQ(shor_flag_raised_rows(s), want);
}

TEST(FtCheck, PreCnotGoldenTableFourTwoTwo) {
    Scheme s = build_scheme(catalog("422"), SchemeKind::Parallel);
    const Gadget &g = s.gadgets[0];
    auto gates = flat_gates(g.circuit);
    std::vector<Pair> got;
    for (char pauli : {'X', 'Z'}) {
        for (uint32_t i = 0; i < gates.size(); i++) {
            if (gates[i].kind != GateKind::CNOT) {
                continue;
            }
            for (uint32_t q : {gates[i].a, gates[i].b}) {
                auto inj = before_gate(gates, i, q, pauli);
                ASSERT_TRUE(inj.has_value());
                GadgetResult r = g.compiled.run(0, 0, std::span<const Injection>(&*inj, 1));
                std::string m;
                for (size_t b = 0; b < 2; b++) {
                    m += ((r.outcomes >> b) & 1) ? '1' : '0';
                }
                got.push_back({name_or_none(from_masks(r.x, r.z, 4)), m});
            }
        }
    }
    std::vector<Pair> want;
    const char *xs[16][2] = {{"X1", "10"}, {"X2", "00"},   {"X3", "00"},   {"X4", "10"},
                             {"X1", "10"}, {"X2", "10"},   {"X3", "10"},   {"X4", "10"},
                             {"None", "10"}, {"None", "10"}, {"None", "10"}, {"None", "10"},
                             {"X1 X2 X3 X4", "00"}, {"X2 X3 X4", "10"}, {"X2 X4", "10"}, {"X2", "00"}};
    const char *zs[16][2] = {{"Z1", "01"}, {"Z2", "01"}, {"Z3", "01"}, {"Z4", "01"},
                             {"Z1", "00"}, {"Z2", "01"}, {"Z3", "01"}, {"Z4", "00"},
                             {"Z1 Z2 Z3 Z4", "00"}, {"Z1 Z2 Z4", "01"}, {"Z2 Z4", "01"}, {"Z4", "00"},
                             {"None", "01"}, {"None", "01"}, {"None", "01"}, {"None", "01"}};
    for (auto &r : xs) {
        want.push_back({r[0], r[1]});
    }
    for (auto &r : zs) {
        want.push_back({r[0], r[1]});
    }
    ASSERT_EQ(got.size(), 32u);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);

    std::vector<Pair> lib;
    for (const auto &r : pre_cnot_rows(g, 4)) {
        lib.push_back({r.residual, r.bits});
    }
    std::sort(lib.begin(), lib.end());
    EXPECT_EQ(lib, want);
}

TEST(FtCheck, FaultTableFourTwoTwoShape) {
    Scheme s = build_scheme(catalog("422"), SchemeKind::Parallel);
    auto rows = fault_table(s, 0);
    EXPECT_EQ(rows.size(), enumerate_single_faults(s.gadgets[0].circuit).size());
    std::string csv = fault_table_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "fault_id,location,effect,residual,m,f,m_prime");
    EXPECT_NE(fault_table_json(rows).find("\"m_prime\""), std::string::npos);
}

TEST(FtCheck, FlagClassBound) {
    for (const auto &name : catalog_names()) {
        auto code = catalog(name);
        for (size_t g = 0; g < code->num_generators(); g++) {
            size_t w = code->generator(g).weight();
            if (w < 3) {
                continue;
            }
            EXPECT_LE(b_count(build_flagged(code->generator(g), g), *code), w - 1) << name << " g" << g + 1;
        }
    }
    auto shor = catalog("shor913");
    EXPECT_EQ(b_count(build_flagged(shor->generator(6), 6), *shor), 5u);
    EXPECT_EQ(b_count(build_flagged(shor->generator(7), 7), *shor), 5u);
    EXPECT_THROW(b_count(build_unflagged(shor->generator(6), 6), *shor), std::invalid_argument);
}

TEST(FtCheck, Budgets) {
    auto shor = catalog("shor913");
    size_t total = 0;
    size_t budget = 0;
    EXPECT_TRUE(check_budget({6, 7}, *shor, &total, &budget));
    EXPECT_EQ(total, 10u);
    EXPECT_EQ(budget, 64u);
    auto rm = catalog("rm1513");
    EXPECT_TRUE(check_budget({0, 5, 9}, *rm));
    EXPECT_TRUE(check_budget({1, 4, 7}, *rm));
    EXPECT_TRUE(check_budget({2, 6}, *rm));
    EXPECT_TRUE(check_budget({3, 8}, *rm));
    EXPECT_FALSE(check_budget({0, 1, 2, 3}, *rm, &total, &budget));
    EXPECT_GT(total, budget);
    EXPECT_THROW(check_budget({0, 10}, *rm), std::invalid_argument);
}

TEST(FtCheck, AlgorithmTwoSearch) {
    auto shor = catalog("shor913");
    Rng rng(1);
    SearchResult r = algorithm2_search(*shor, {6, 7}, rng, 1000);
    EXPECT_TRUE(r.success);
    EXPECT_TRUE(flag_collisions(r.circuit, *shor).empty());
    auto rm = catalog("rm1513");
    Rng rng2(2);
    SearchResult a = algorithm2_search(*rm, {0, 5, 9}, rng2, 1000);
    EXPECT_TRUE(a.success);
    SearchResult bad = algorithm2_search(*rm, {0, 1, 2, 3}, rng2, 10);
    EXPECT_FALSE(bad.budget_ok);
    EXPECT_FALSE(bad.success);
}

TEST(FtCheck, CertificationSuite) {
    struct Case {
        const char *code;
        SchemeKind kind;
        Procedure proc;
    };
    std::vector<Case> cases{
        {"422", SchemeKind::Flag, Procedure::Detect},
        {"422", SchemeKind::Parallel, Procedure::Detect},
        {"steane713", SchemeKind::Flag, Procedure::Detect},
        {"steane713", SchemeKind::Flag, Procedure::Alg1},
        {"steane713", SchemeKind::Flag, Procedure::Alg3},
        {"steane713", SchemeKind::Parallel, Procedure::Detect},
        {"steane713", SchemeKind::Parallel, Procedure::Alg1},
        {"steane713", SchemeKind::Parallel, Procedure::Alg3},
        {"shor913", SchemeKind::Flag, Procedure::Alg1},
        {"shor913", SchemeKind::Flag, Procedure::Alg3},
        {"shor913", SchemeKind::Flag, Procedure::Alg4},
        {"shor913", SchemeKind::Parallel, Procedure::Alg1},
        {"shor913", SchemeKind::Parallel, Procedure::Alg3},
        {"shor913", SchemeKind::Parallel, Procedure::Alg4},
        {"shor913", SchemeKind::Parallel, Procedure::Alg4Complete},
        {"rm1513", SchemeKind::Parallel, Procedure::Alg3},
    };
    auto start = std::chrono::steady_clock::now();
    for (const auto &c : cases) {
        Scheme s = build_scheme(catalog(c.code), c.kind);
        Certificate cert = certify(s, c.proc);
        EXPECT_TRUE(cert.pass) << s.id() << " " << procedure_name(c.proc) << "\n" << cert.to_json();
        EXPECT_GT(cert.faults_checked, 0u);
    }
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::minutes(1));
}

TEST(FtCheck, UnflaggedSchemeHasBadLocations) {
    auto code = catalog("steane713");
    Scheme s;
    s.code = code;
    s.kind = SchemeKind::Flag;
    for (size_t g = 0; g < code->num_generators(); g++) {
        Gadget gadget;
        gadget.circuit = build_unflagged(code->generator(g), g);
        gadget.compiled = CompiledCircuit(gadget.circuit);
        gadget.generators = gadget.compiled.measured_generators();
        gadget.side = code->generator_type(g) == PauliType::X ? GadgetSide::X : GadgetSide::Z;
        s.gadgets.push_back(gadget);
        (gadget.side == GadgetSide::X ? s.x_extraction : s.z_extraction).add(gadget.circuit);
        s.complete.add(gadget.circuit);
    }
    Certificate cert = certify(s, Procedure::Alg1);
    EXPECT_FALSE(cert.pass);
    EXPECT_FALSE(cert.bad_locations.empty());
}

TEST(FtCheck, DetectionOnlySchemesRefuseCorrection) {
    Scheme s = build_scheme(catalog("422"), SchemeKind::Parallel);
    EXPECT_THROW(certify(s, Procedure::Alg1), std::invalid_argument);
}

TEST(FtCheck, SharedFlagDetectionCircuits) {
    for (const auto &name : catalog_names()) {
        auto code = catalog(name);
        for (auto t : {PauliType::X, PauliType::Z}) {
            Circuit c = ed_parallel_all(*code, t);
            std::vector<FaultEvent> bad;
            bool ok = certify_detection_circuit(c, *code, &bad);
            EXPECT_EQ(ok, bad.empty());
        }
    }
    auto f422 = catalog("422");
    EXPECT_TRUE(certify_detection_circuit(build_flagged(f422->generator(0), 0), *f422));
}

TEST(FtCheck, LearnedTablesHaveNoCollisions) {
    Scheme s = build_scheme(catalog("shor913"), SchemeKind::Parallel);
    std::vector<Collision> collisions;
    DecoderTables t = learn_tables(s, Procedure::Alg3, &collisions);
    EXPECT_TRUE(collisions.empty());
    EXPECT_FALSE(t.flag_entries().empty());
}

TEST(FtCheck, SupportOrderShorFlagSchemeCollides) {
    auto code = catalog("shor913");
    Circuit c = build_flagged(code->generator(6), 6);
    EXPECT_FALSE(flag_collisions(c, *code).empty());
}
