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

#include <string>

#include "flagshare/flagshare_c.h"
#include "json.hpp"

namespace {

std::string take(char *s) {
    std::string out = s ? s : "";
    fs_string_free(s);
    return out;
}

size_t lines(const std::string &s) {
    return static_cast<size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(CApi, CodeList) {
    char *out = nullptr;
    ASSERT_EQ(fs_code_list(&out), FS_OK);
    EXPECT_EQ(take(out), "422\nsteane713\nshor913\nrm1513\n");
    ASSERT_EQ(fs_code_describe("shor913", &out), FS_OK);
    auto j = nlohmann::json::parse(take(out));
    EXPECT_EQ(j["n"], 9);
    EXPECT_EQ(j["generators"][0]["pauli"], "Z1 Z2");
}

TEST(CApi, ErrorsSetLastError) {
    fs_scheme *s = nullptr;
    EXPECT_EQ(fs_scheme_create("nope", "flag", &s), FS_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(s, nullptr);
    EXPECT_NE(std::string(fs_last_error()).find("nope"), std::string::npos);
    EXPECT_EQ(fs_scheme_create(nullptr, "flag", &s), FS_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(fs_scheme_create("422", "hexagonal", &s), FS_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(fs_scheme_create("422", "flag", &s), FS_OK);
    EXPECT_STREQ(fs_last_error(), "");
    char *out = nullptr;
    EXPECT_EQ(fs_fault_table(s, "xml", &out), FS_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(fs_golden_table(s, &out), FS_ERR_NOT_FOUND);
    int pass = 0;
    EXPECT_EQ(fs_certify(s, "alg2", &pass, &out), FS_ERR_INVALID_ARGUMENT);
    fs_scheme_free(s);
    EXPECT_STREQ(fs_status_name(FS_ERR_NOT_CERTIFIED), "not certified");
}

TEST(CApi, VerifyAndGoldenTables) {
    fs_scheme *s = nullptr;
    ASSERT_EQ(fs_scheme_create("422", "parallel", &s), FS_OK);
    int pass = 0;
    char *cert = nullptr;
    ASSERT_EQ(fs_certify(s, "detect", &pass, &cert), FS_OK);
    EXPECT_EQ(pass, 1);
    EXPECT_EQ(nlohmann::json::parse(take(cert))["verdict"], "pass");
    char *golden = nullptr;
    ASSERT_EQ(fs_golden_table(s, &golden), FS_OK);
    EXPECT_EQ(lines(take(golden)), 33u);
    char *table = nullptr;
    ASSERT_EQ(fs_fault_table(s, "csv", &table), FS_OK);
    std::string csv = take(table);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "fault_id,location,effect,residual,m,f,m_prime");
    fs_scheme_free(s);

    ASSERT_EQ(fs_scheme_create("shor913", "parallel", &s), FS_OK);
    ASSERT_EQ(fs_golden_table(s, &golden), FS_OK);
    std::string rows = take(golden);
    EXPECT_EQ(lines(rows), 11u);
    EXPECT_NE(rows.find("X2 X4 X6,001,111100"), std::string::npos);
    char *census = nullptr;
    ASSERT_EQ(fs_scheme_census(s, 1, &census), FS_OK);
    EXPECT_EQ(nlohmann::json::parse(take(census))["cnot"], 313);
    fs_scheme_free(s);
}

TEST(CApi, Search) {
    char *circuit = nullptr;
    char *report = nullptr;
    ASSERT_EQ(fs_search("shor913", "g7,g8", 1, 1000, &circuit, &report), FS_OK);
    EXPECT_NE(take(circuit).find("flag"), std::string::npos);
    auto j = nlohmann::json::parse(take(report));
    EXPECT_TRUE(j["success"].get<bool>());
    EXPECT_EQ(j["seed"], 1);
    EXPECT_EQ(fs_search("rm1513", "g1,g2,g3,g4", 1, 10, &circuit, &report), FS_ERR_FAILED);
    fs_string_free(circuit);
    EXPECT_FALSE(nlohmann::json::parse(take(report))["budget"]["ok"].get<bool>());
    EXPECT_EQ(fs_search("rm1513", "g1,g99", 1, 10, &circuit, &report), FS_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(fs_search("shor913", "g1,g7", 1, 10, &circuit, &report), FS_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ThresholdDeterministic) {
    fs_scheme *s = nullptr;
    ASSERT_EQ(fs_scheme_create("shor913", "parallel", &s), FS_OK);
    fs_experiment *e = nullptr;
    EXPECT_EQ(fs_experiment_create(s, "alg3", "sideways", &e), FS_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(fs_experiment_create(s, "alg3", "memory", &e), FS_OK);
    char *name = nullptr;
    ASSERT_EQ(fs_experiment_name(e, 1.0, &name), FS_OK);
    EXPECT_EQ(take(name), "shor913_parallel_alg3_g1");
    fs_threshold_options o;
    fs_threshold_options_default(&o);
    o.max_trials_per_point = 100000;
    o.rel_width = 0.3;
    o.threads = 1;
    char *csv1 = nullptr;
    char *json1 = nullptr;
    ASSERT_EQ(fs_threshold(e, 1.0, &o, &csv1, &json1), FS_OK);
    o.threads = 3;
    char *csv3 = nullptr;
    char *json3 = nullptr;
    ASSERT_EQ(fs_threshold(e, 1.0, &o, &csv3, &json3), FS_OK);
    EXPECT_EQ(take(csv1), take(csv3));
    EXPECT_EQ(take(json1), take(json3));
    o.initial_trials = 0;
    EXPECT_EQ(fs_threshold(e, 1.0, &o, &csv1, &json1), FS_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(fs_estimate(e, 1e-3, 1.0, 0, 1, 1, &csv1, &json1), FS_ERR_INVALID_ARGUMENT);
    fs_experiment_free(e);
    fs_scheme_free(s);
}
