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

#include <cmath>
#include <map>

#include "flagshare/faults.h"
#include "flagshare/scheme.h"

using namespace flagshare;

namespace {

Circuit single_cnot() {
    Circuit c(2);
    c.append_step({Gate{GateKind::CNOT, 0, 1}});
    return c;
}

/// Upper 0.001 quantile of chi-square with k degrees of freedom
/// (Wilson-Hilferty approximation).
double chi2_critical(size_t k) {
    double z = 3.090232;
    double a = 2.0 / (9.0 * static_cast<double>(k));
    return static_cast<double>(k) * std::pow(1.0 - a + z * std::sqrt(a), 3);
}

}  // namespace

TEST(Faults, FaultSetCardinalitiesAndWeights) {
    Circuit c = build_flagged(PauliOperator::parse("Z1 Z2 Z3 Z4", 4), 0);
    auto gates = flat_gates(c);
    for (uint32_t i = 0; i < gates.size(); i++) {
        auto set = fault_set(c, i, 0.5);
        double sum = 0;
        for (const auto &w : set) {
            sum += w.weight;
        }
        LocationKind k = location_kind(gates[i].kind);
        switch (k) {
            case LocationKind::Cnot:
            case LocationKind::Swap:
                EXPECT_EQ(set.size(), 15u);
                EXPECT_NEAR(set[0].weight, 1.0 / 15, 1e-12);
                EXPECT_NEAR(sum, 1.0, 1e-12);
                break;
            case LocationKind::MeasX:
            case LocationKind::MeasZ:
                EXPECT_EQ(set.size(), 1u);
                EXPECT_NEAR(sum, 2.0 / 3, 1e-12);
                break;
            case LocationKind::Idle:
                EXPECT_EQ(set.size(), 3u);
                EXPECT_NEAR(sum, 0.5, 1e-12);
                break;
            default:
                EXPECT_EQ(set.size(), 3u);
                EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
    for (const auto &w : fault_set(c, 2, 0.0)) {
        if (location_kind(gates[2].kind) == LocationKind::Idle) {
            EXPECT_EQ(w.weight, 0.0);
        }
    }
}

TEST(Faults, EnumerationCardinality) {
    EXPECT_TRUE(enumerate_single_faults(Circuit(3)).empty());
    for (const auto &name : catalog_names()) {
        Scheme s = build_scheme(catalog(name), SchemeKind::Parallel);
        for (const auto &g : s.gadgets) {
            LocationCensus k = census(g.circuit);
            size_t want = 3 * (k.prep + k.idle) + 15 * (k.cnot + k.swap) + k.meas_x + k.meas_z;
            auto all = enumerate_single_faults(g.circuit);
            EXPECT_EQ(all.size(), want);
            EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
        }
    }
    Circuit zz = build_unflagged(PauliOperator::parse("Z1 Z2", 2), 0);
    LocationCensus k = census(zz);
    EXPECT_EQ(enumerate_single_faults(zz).size(), 3 + 30 + 1 + 3 * k.idle);
}

TEST(Faults, EffectNames) {
    EXPECT_EQ(effect_name(LocationKind::Cnot, 1), "XI");
    EXPECT_EQ(effect_name(LocationKind::Cnot, 8), "IZ");
    EXPECT_EQ(effect_name(LocationKind::Idle, 3), "Y");
    EXPECT_EQ(effect_name(LocationKind::MeasZ, 1), "flip");
}

TEST(Faults, ValidateParams) {
    EXPECT_THROW((NoiseParams{-0.1, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((NoiseParams{0.1, 2}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((NoiseParams{0.1, 0}.validate()));
}

TEST(Faults, ZeroRateNeverFaults) {
    Rng rng(1);
    Circuit ex = build_exrec_cnot(build_scheme(catalog("422"), SchemeKind::Flag));
    for (int i = 0; i < 1000; i++) {
        EXPECT_TRUE(sample_faults(ex, NoiseParams{0.0, 1.0}, rng).empty());
    }
}

TEST(Faults, RateOneCnotUniform) {
    Circuit c = single_cnot();
    Rng rng(5);
    std::map<uint8_t, size_t> counts;
    const size_t n = 150000;
    for (size_t i = 0; i < n; i++) {
        auto f = sample_faults(c, NoiseParams{1.0, 1.0}, rng);
        ASSERT_EQ(f.size(), 1u);
        counts[f[0].effect]++;
    }
    ASSERT_EQ(counts.size(), 15u);
    double chi2 = 0;
    double expect = static_cast<double>(n) / 15;
    for (auto [e, k] : counts) {
        chi2 += (k - expect) * (k - expect) / expect;
    }
    EXPECT_LT(chi2, chi2_critical(14));
}

TEST(Faults, SamplerMatchesAnalyticRates) {
    // Per-(kind, effect) frequencies over 10^6 samples of the (422, flag)
    // ex-Rec at p = 0.01, gamma = 0.5, compared with fault_set weights.
    Circuit ex = build_exrec_cnot(build_scheme(catalog("422"), SchemeKind::Flag));
    NoiseParams params{0.01, 0.5};
    auto gates = flat_gates(ex);
    std::map<std::pair<int, int>, double> expected;
    double mean_faults = 0;
    for (uint32_t i = 0; i < gates.size(); i++) {
        for (const auto &w : fault_set(ex, i, params.gamma)) {
            expected[{static_cast<int>(location_kind(gates[i].kind)), w.event.effect}] += w.weight * params.p;
            mean_faults += w.weight * params.p;
        }
    }
    const size_t samples = 1000000;
    std::map<std::pair<int, int>, double> observed;
    Rng rng(2026);
    double total = 0;
    double total_sq = 0;
    for (size_t s = 0; s < samples; s++) {
        auto f = sample_faults(ex, params, rng);
        total += static_cast<double>(f.size());
        total_sq += static_cast<double>(f.size() * f.size());
        for (const auto &e : f) {
            observed[{static_cast<int>(location_kind(gates[e.location].kind)), e.effect}]++;
        }
    }
    double chi2 = 0;
    for (auto [key, rate] : expected) {
        double exp_count = rate * samples;
        double o = observed[key];
        chi2 += (o - exp_count) * (o - exp_count) / exp_count;
    }
    EXPECT_LT(chi2, chi2_critical(expected.size() - 1));
    double mean = total / samples;
    double sd = std::sqrt((total_sq / samples - mean * mean) / samples);
    EXPECT_NEAR(mean, mean_faults, 3 * sd);
}
