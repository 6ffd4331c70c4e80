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

#include <functional>
#include <random>

#include "flagshare/codes.h"

using namespace flagshare;

namespace {

bool in_span_by_rank(const CssCode &code, const PauliOperator &e) {
    std::vector<BitVector> rows;
    for (const auto &g : code.generators()) {
        rows.push_back(symplectic_vector(g));
    }
    size_t base = gf2_rank(rows);
    rows.push_back(symplectic_vector(e));
    return gf2_rank(rows) == base;
}

bool in_normalizer(const CssCode &code, const PauliOperator &e) {
    for (const auto &g : code.generators()) {
        if (!commutes(e, g)) {
            return false;
        }
    }
    return true;
}

/// Smallest weight of a normalizer element outside the stabilizer group, over
/// all Paulis (not only pure types) up to `max_w`.
size_t brute_force_distance(const CssCode &code, size_t max_w) {
    size_t n = code.n();
    size_t best = max_w + 1;
    std::vector<size_t> qubits;
    std::function<void(size_t, PauliOperator &)> rec = [&](size_t start, PauliOperator &p) {
        if (!p.is_identity() && in_normalizer(code, p) && !in_span_by_rank(code, p)) {
            best = std::min(best, p.weight());
        }
        if (p.weight() == max_w) {
            return;
        }
        for (size_t q = start; q < n; q++) {
            for (char c : {'X', 'Y', 'Z'}) {
                p.set(q, c);
                rec(q + 1, p);
                p.set(q, 'I');
            }
        }
    };
    PauliOperator p(n);
    rec(0, p);
    return best;
}

}  // namespace

TEST(Codes, CatalogShape) {
    auto shor = catalog("shor913");
    EXPECT_EQ(shor->x_indices().size(), 2u);
    EXPECT_EQ(shor->z_indices().size(), 6u);
    EXPECT_EQ(shor->generator(0), PauliOperator::parse("Z1Z2", 9));
    auto rm = catalog("rm1513");
    EXPECT_EQ(rm->x_indices().size(), 4u);
    EXPECT_EQ(rm->z_indices().size(), 10u);
    auto c422 = catalog("422");
    EXPECT_EQ(c422->k(), 2u);
    EXPECT_EQ(c422->num_generators(), 2u);
    EXPECT_EQ(c422->generator(1), PauliOperator::parse("X1X2X3X4", 4));
    EXPECT_EQ(c422->generator(0), PauliOperator::parse("Z1Z2Z3Z4", 4));
    EXPECT_THROW(catalog("513"), std::invalid_argument);
}

TEST(Codes, InvariantsHold) {
    for (const auto &name : catalog_names()) {
        auto code = catalog(name);
        EXPECT_EQ(code->x_indices().size() + code->z_indices().size(), code->n() - code->k());
        for (const auto &a : code->generators()) {
            for (const auto &b : code->generators()) {
                EXPECT_TRUE(commutes(a, b));
            }
        }
        ASSERT_EQ(code->logical_x().size(), code->k());
        for (size_t i = 0; i < code->k(); i++) {
            for (size_t j = 0; j < code->k(); j++) {
                EXPECT_EQ(!commutes(code->logical_x()[i], code->logical_z()[j]), i == j);
            }
            EXPECT_TRUE(in_normalizer(*code, code->logical_x()[i]));
            EXPECT_TRUE(in_normalizer(*code, code->logical_z()[i]));
        }
    }
}

TEST(Codes, DistanceAgainstBruteForce) {
    EXPECT_EQ(brute_force_distance(*catalog("422"), 2), 2u);
    EXPECT_EQ(brute_force_distance(*catalog("shor913"), 3), 3u);
    EXPECT_EQ(brute_force_distance(*catalog("steane713"), 3), 3u);
    EXPECT_EQ(brute_force_distance(*catalog("rm1513"), 3), 3u);
}

TEST(Codes, SteaneHasWeightThreeLogicalX) {
    auto code = catalog("steane713");
    EXPECT_EQ(code->logical_x()[0].weight(), 3u);
}

TEST(Codes, FindLogicalsRejectsWrongDistance) {
    std::vector<PauliOperator> gens = {PauliOperator::parse("Z1Z2Z3Z4", 4), PauliOperator::parse("X1X2X3X4", 4)};
    EXPECT_THROW(find_logicals(CssCode("bad", 4, 2, 3, gens)), CodeError);
    EXPECT_NO_THROW(find_logicals(CssCode("ok", 4, 2, 2, gens)));
}

TEST(Codes, ConstructorRejectsInconsistentGenerators) {
    EXPECT_THROW(CssCode("x", 2, 1, 1, {PauliOperator::parse("X1Z2", 2)}), CodeError);
    EXPECT_THROW(CssCode("x", 2, 0, 1, {PauliOperator::parse("X1", 2), PauliOperator::parse("Z1", 2)}), CodeError);
    EXPECT_THROW(CssCode("x", 3, 1, 1, {PauliOperator::parse("X1X2", 3), PauliOperator::parse("X1X2", 3)}), CodeError);
}

TEST(Codes, ClassifyExamples) {
    auto c = catalog("422");
    EXPECT_EQ(classify_residual(PauliOperator::parse("X1X2X3X4", 4), *c), ResidualClass::StabilizerEquivalent);
    EXPECT_EQ(classify_residual(PauliOperator::parse("Z_{1,2,3,4}", 4), *c), ResidualClass::StabilizerEquivalent);
    EXPECT_EQ(classify_residual(PauliOperator(4), *c), ResidualClass::Trivial);
    EXPECT_EQ(classify_residual(PauliOperator::parse("X1X2", 4), *c), ResidualClass::Logical);
    EXPECT_EQ(classify_residual(PauliOperator::parse("X1", 4), *c), ResidualClass::Detectable);
}

TEST(Codes, MembershipAgreesWithElimination) {
    std::mt19937_64 rng(2024);
    for (const auto &name : catalog_names()) {
        auto code = catalog(name);
        for (int t = 0; t < 1000; t++) {
            // Half the probes are stabilizer products times a sparse error, so
            // both answers occur often.
            PauliOperator e(code->n());
            for (const auto &g : code->generators()) {
                if (rng() & 1) {
                    e *= g;
                }
            }
            if (t % 2) {
                e.set(rng() % code->n(), "XYZ"[rng() % 3]);
            }
            EXPECT_EQ(code->in_stabilizer_group(e), in_span_by_rank(*code, e)) << name << " " << e.str();
            bool logical = in_normalizer(*code, e) && !in_span_by_rank(*code, e);
            EXPECT_EQ(code->classify(e) == ResidualClass::Logical, logical) << name << " " << e.str();
        }
    }
}

TEST(Codes, CosetInvariance) {
    std::mt19937_64 rng(99);
    for (const auto &name : catalog_names()) {
        auto code = catalog(name);
        for (int t = 0; t < 300; t++) {
            PauliOperator e(code->n());
            for (size_t q = 0; q < code->n(); q++) {
                if (rng() % 4 == 0) {
                    e.set(q, "XYZ"[rng() % 3]);
                }
            }
            PauliOperator s(code->n());
            for (const auto &g : code->generators()) {
                if (rng() & 1) {
                    s *= g;
                }
            }
            auto a = code->classify(e);
            auto b = code->classify(e * s);
            if (a == ResidualClass::Trivial) {
                a = ResidualClass::StabilizerEquivalent;
            }
            if (b == ResidualClass::Trivial) {
                b = ResidualClass::StabilizerEquivalent;
            }
            EXPECT_EQ(a, b);
            EXPECT_EQ(code->reduce_mod_stabilizers(e), code->reduce_mod_stabilizers(e * s));
        }
    }
}

TEST(Codes, TextDefinitionRoundTrip) {
    const char *text =
        "# the Steane code\n"
        "name steane_copy\n"
        "n 7\nk 1\nd 3\n"
        "gen X1 X3 X5 X7\ngen X2X3X6X7\ngen X_{4,5,6,7}\n"
        "gen Z1 Z3 Z5 Z7\ngen Z2 Z3 Z6 Z7\ngen Z4 Z5 Z6 Z7\n";
    CssCode c = parse_code_definition(text);
    EXPECT_EQ(c.n(), 7u);
    EXPECT_EQ(c.x_indices().size(), 3u);
    CssCode again = parse_code_definition(format_code_definition(c));
    EXPECT_EQ(again.generators(), c.generators());
    EXPECT_THROW(parse_code_definition("name x\nn 4\nk 2\nd 2\ngen X1 Z2\n"), std::invalid_argument);
    EXPECT_THROW(parse_code_definition("name x\nn 4\nfoo 2\n"), std::invalid_argument);
}
