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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flagshare/flagshare_c.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Config {
    std::string code;
    std::string scheme = "parallel";
    std::string procedure = "alg3";
    std::string mode = "correct";
    double gamma = 0;
    std::optional<double> p;
    uint64_t trials = 10000000;
    uint64_t seed = 1;
    std::string out = "results";
    std::string group;
    uint64_t max_iters = 1000;
    std::string target = "memory";
    unsigned threads = 0;
    double rel_width = 0.05;
    std::optional<double> p_max;
    bool compute = false;
};

/// Owns a string returned by the C API.
struct CString {
    char *s = nullptr;
    ~CString() {
        fs_string_free(s);
    }
    std::string str() const {
        return s ? s : "";
    }
};

struct SchemeHandle {
    fs_scheme *h = nullptr;
    ~SchemeHandle() {
        fs_scheme_free(h);
    }
};

struct ExperimentHandle {
    fs_experiment *h = nullptr;
    ~ExperimentHandle() {
        fs_experiment_free(h);
    }
};

struct CliError {
    int code;
    std::string message;
};

void check(fs_status s, const std::string &context) {
    if (s == FS_OK) {
        return;
    }
    int code = s == FS_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFail;
    throw CliError{code, context + ": " + fs_status_name(s) + ": " + fs_last_error()};
}

void write_file(const fs::path &path, const std::string &text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw CliError{kExitFail, "cannot write " + path.string()};
    }
    std::printf("wrote %s\n", path.string().c_str());
}

std::string procedure_of(const Config &c) {
    if (c.mode == "detect") {
        return "detect";
    }
    if (c.mode != "correct") {
        throw CliError{kExitUsage, "--mode must be correct or detect"};
    }
    return c.procedure;
}

void require_code(const Config &c) {
    if (c.code.empty()) {
        throw CliError{kExitUsage, "--code is required"};
    }
}

std::vector<std::string> targets_of(const Config &c) {
    if (c.target == "both") {
        return {"memory", "computation"};
    }
    if (c.target == "exrec") {
        return {"computation"};
    }
    return {c.target};
}

SchemeHandle make_scheme(const std::string &code, const std::string &kind) {
    SchemeHandle s;
    check(fs_scheme_create(code.c_str(), kind.c_str(), &s.h), "scheme " + code + "/" + kind);
    return s;
}

size_t count_lines(const std::string &s) {
    size_t n = 0;
    for (char ch : s) {
        n += ch == '\n';
    }
    return n;
}

int cmd_codes() {
    CString list;
    check(fs_code_list(&list.s), "codes");
    std::istringstream in(list.str());
    std::string name;
    while (std::getline(in, name)) {
        CString desc;
        check(fs_code_describe(name.c_str(), &desc.s), name);
        auto j = nlohmann::json::parse(desc.str());
        std::printf("%s [[%d,%d,%d]]\n", name.c_str(), j["n"].get<int>(), j["k"].get<int>(), j["d"].get<int>());
        for (const auto &g : j["generators"]) {
            std::printf("  %s %s\n", g["id"].get<std::string>().c_str(), g["pauli"].get<std::string>().c_str());
        }
        for (const auto &l : j["logical_x"]) {
            std::printf("  logical X %s\n", l.get<std::string>().c_str());
        }
        for (const auto &l : j["logical_z"]) {
            std::printf("  logical Z %s\n", l.get<std::string>().c_str());
        }
    }
    return 0;
}

int cmd_verify(const Config &c) {
    require_code(c);
    std::string proc = procedure_of(c);
    SchemeHandle s = make_scheme(c.code, c.scheme);
    CString id;
    check(fs_scheme_id(s.h, &id.s), "scheme id");
    int pass = 0;
    CString cert;
    check(fs_certify(s.h, proc.c_str(), &pass, &cert.s), "verify");
    CString table;
    check(fs_fault_table(s.h, "csv", &table.s), "fault table");
    fs::path dir = fs::path(c.out) / "verify";
    std::string stem = id.str() + "_" + proc;
    write_file(dir / (stem + "_certificate.json"), cert.str());
    write_file(dir / (stem + "_faults.csv"), table.str());
    CString golden;
    fs_status gs = fs_golden_table(s.h, &golden.s);
    if (gs == FS_OK) {
        write_file(dir / (id.str() + "_golden.csv"), golden.str());
        std::printf("golden table rows: %zu\n", count_lines(golden.str()) - 1);
    } else if (gs != FS_ERR_NOT_FOUND) {
        check(gs, "golden table");
    }
    auto j = nlohmann::json::parse(cert.str());
    std::printf("%s %s: %s (%zu faults checked, %zu fault-table rows, %zu bad locations, unique %s)\n",
                id.str().c_str(), proc.c_str(), pass ? "PASS" : "FAIL", j["faults_checked"].get<size_t>(),
                count_lines(table.str()) - 1, j["bad_locations"].size(), j["unique"].get<bool>() ? "yes" : "no");
    if (!pass) {
        for (const auto &b : j["bad_locations"]) {
            std::printf("  bad: %s\n", b.dump().c_str());
        }
        for (const auto &col : j["collisions"]) {
            std::printf("  collision: %s\n", col.dump().c_str());
        }
        return kExitFail;
    }
    return 0;
}

int cmd_search(const Config &c) {
    require_code(c);
    if (c.group.empty()) {
        throw CliError{kExitUsage, "--group is required (e.g. g7,g8)"};
    }
    std::printf("seed %llu\n", static_cast<unsigned long long>(c.seed));
    CString circuit;
    CString report;
    fs_status st = fs_search(c.code.c_str(), c.group.c_str(), c.seed, c.max_iters, &circuit.s, &report.s);
    if (st == FS_ERR_INVALID_ARGUMENT || st == FS_ERR_INTERNAL) {
        check(st, "search");
    }
    std::string stem = c.code + "_";
    for (char ch : c.group) {
        stem += ch == ',' ? '_' : ch;
    }
    fs::path dir = fs::path(c.out) / "search";
    if (report.s) {
        write_file(dir / (stem + ".json"), report.str());
    }
    if (st == FS_OK) {
        write_file(dir / (stem + ".circuit"), circuit.str());
        auto j = nlohmann::json::parse(report.str());
        std::printf("search succeeded after %zu iterations\n", j["iterations"].get<size_t>());
        return 0;
    }
    std::fprintf(stderr, "search failed: %s\n", fs_last_error());
    return kExitFail;
}

void print_report(const std::string &json) {
    auto j = nlohmann::json::parse(json);
    std::printf("%s %s %s gamma %g: %s", j["scheme"].get<std::string>().c_str(),
                j["procedure"].get<std::string>().c_str(), j["target"].get<std::string>().c_str(),
                j["gamma"].get<double>(), j["verdict"].get<std::string>().c_str());
    if (!j["pseudo_threshold"].is_null()) {
        std::printf(" %.4g [%.4g, %.4g]", j["pseudo_threshold"].get<double>(), j["interval"][0].get<double>(),
                    j["interval"][1].get<double>());
    } else if (j["verdict"] == "point") {
        const auto &g = j["grid"][0];
        std::printf(" p %.4g rate %.4g [%.4g, %.4g] accepted %zu of %zu", g["p"].get<double>(),
                    g["logical_rate"].get<double>(), g["ci"][0].get<double>(), g["ci"][1].get<double>(),
                    g["accepted"].get<size_t>(), g["trials"].get<size_t>());
    }
    std::printf(" (%zu trials)\n", j["total_trials"].get<size_t>());
}

/// Runs one threshold search and writes out/<target>/<run>.{csv,json}.
std::string run_threshold(const Config &c, const std::string &code, const std::string &kind, const std::string &proc,
                          const std::string &target, double gamma) {
    SchemeHandle s = make_scheme(code, kind);
    ExperimentHandle e;
    check(fs_experiment_create(s.h, proc.c_str(), target.c_str(), &e.h), "threshold " + code + "/" + kind);
    CString name;
    check(fs_experiment_name(e.h, gamma, &name.s), "run name");
    CString csv;
    CString json;
    if (c.p) {
        check(fs_estimate(e.h, *c.p, gamma, c.trials, c.seed, c.threads, &csv.s, &json.s), "estimate");
    } else {
        fs_threshold_options o;
        fs_threshold_options_default(&o);
        o.max_trials_per_point = c.trials;
        o.initial_trials = std::min<uint64_t>(o.initial_trials, c.trials);
        o.budget = std::max<uint64_t>(o.budget, 40 * c.trials);
        o.rel_width = c.rel_width;
        if (c.p_max) {
            o.p_max = *c.p_max;
        } else if (proc == "detect") {
            o.p_max = 0.5;
        }
        o.seed = c.seed;
        o.threads = c.threads;
        check(fs_threshold(e.h, gamma, &o, &csv.s, &json.s), "threshold");
    }
    fs::path dir = fs::path(c.out) / target;
    std::string stem = name.str() + (c.p ? "_p" + std::to_string(*c.p) : "");
    write_file(dir / (stem + ".csv"), csv.str());
    write_file(dir / (stem + ".json"), json.str());
    print_report(json.str());
    return json.str();
}

void validate_trials(const Config &c) {
    if (c.trials == 0) {
        throw CliError{kExitUsage, "--trials must be positive"};
    }
}

int cmd_threshold(const Config &c) {
    require_code(c);
    validate_trials(c);
    std::string proc = procedure_of(c);
    std::printf("seed %llu\n", static_cast<unsigned long long>(c.seed));
    for (const auto &t : targets_of(c)) {
        run_threshold(c, c.code, c.scheme, proc, t, c.gamma);
    }
    return 0;
}

struct PublishedCensus {
    const char *code;
    const char *kind;
    bool followups;
    long prep, mx, mz, cnot, idle, swap, total;
    const char *note;
};

const PublishedCensus kCensus[] = {
    {"422", "flag", false, 16, 8, 8, 52, 192, 0, 276, "exact"},
    {"422", "parallel", false, 8, 4, 4, 36, 64, 8, 124, "CNOT and SWAP exact; idles from the reconstructed schedule"},
    {"steane713", "flag", true, 264, 132, 132, 1015, 6360, 0, 7903,
     "unflagged follow-ups counted; idles follow the greedy schedule"},
    {"steane713", "parallel", true, 72, 36, 36, 343, 824, 0, 1311,
     "unflagged follow-ups counted; idles follow the greedy schedule"},
    {"shor913", "flag", true, 176, 24, 152, 457, 1688, 0, 2497,
     "unflagged follow-ups counted; gadgets run in cascade so idles exceed the published count"},
    {"shor913", "parallel", true, 100, 24, 76, 313, 1284, 0, 1797,
     "unflagged follow-ups counted; idles follow the greedy schedule"},
};

std::string census_table() {
    std::ostringstream out;
    out << "code,scheme,quantity,ours,published,note\n";
    for (const auto &row : kCensus) {
        SchemeHandle s = make_scheme(row.code, row.kind);
        CString j;
        check(fs_scheme_census(s.h, row.followups ? 1 : 0, &j.s), "census");
        auto c = nlohmann::json::parse(j.str());
        std::pair<const char *, long> items[] = {{"prep", row.prep}, {"meas_x", row.mx}, {"meas_z", row.mz},
                                                 {"cnot", row.cnot}, {"idle", row.idle}, {"swap", row.swap},
                                                 {"total", row.total}};
        for (auto [key, published] : items) {
            out << row.code << "," << row.kind << "," << key << "," << c[key].get<long>() << "," << published << ",\""
                << row.note << "\"\n";
        }
    }
    return out.str();
}

struct PublishedThreshold {
    const char *code;
    const char *kind;
    const char *procedure;
    const char *target;
    double gamma;
    double published;
};

const PublishedThreshold kDecoderComparison[] = {
    {"shor913", "parallel", "alg4-complete", "memory", 0, 8.01e-3},
    {"shor913", "parallel", "alg4", "memory", 0, 8.06e-3},
    {"shor913", "parallel", "alg3", "memory", 0, 9.82e-3},
    {"shor913", "parallel", "alg4-complete", "memory", 1, 8.3e-4},
    {"shor913", "parallel", "alg4", "memory", 1, 8.52e-4},
    {"shor913", "parallel", "alg3", "memory", 1, 8.84e-4},
    {"shor913", "parallel", "alg4-complete", "computation", 0, 3.94e-4},
    {"shor913", "parallel", "alg4", "computation", 0, 4.19e-4},
    {"shor913", "parallel", "alg3", "computation", 0, 7.81e-4},
    {"shor913", "parallel", "alg4-complete", "computation", 1, 3.35e-5},
    {"shor913", "parallel", "alg4", "computation", 1, 4.97e-5},
    {"shor913", "parallel", "alg3", "computation", 1, 8.11e-5},
};

const PublishedThreshold kThresholds[] = {
    {"steane713", "flag", "alg3", "memory", 0, 8.31e-4},
    {"steane713", "flag", "alg3", "memory", 1, 2.53e-5},
    {"steane713", "parallel", "alg3", "memory", 0, 1.29e-3},
    {"steane713", "parallel", "alg3", "memory", 1, 1.75e-4},
    {"shor913", "flag", "alg3", "memory", 0, 7.41e-3},
    {"shor913", "flag", "alg3", "memory", 1, 3.18e-4},
    {"shor913", "parallel", "alg3", "memory", 0, 9.82e-3},
    {"shor913", "parallel", "alg3", "memory", 1, 8.84e-4},
    {"steane713", "flag", "alg3", "computation", 0, 2.07e-4},
    {"steane713", "flag", "alg3", "computation", 1, 7.38e-6},
    {"steane713", "parallel", "alg3", "computation", 0, 1.73e-4},
    {"steane713", "parallel", "alg3", "computation", 1, 3.02e-5},
    {"shor913", "flag", "alg3", "computation", 0, 4.31e-4},
    {"shor913", "flag", "alg3", "computation", 1, 2.09e-5},
    {"shor913", "parallel", "alg3", "computation", 0, 7.81e-4},
    {"shor913", "parallel", "alg3", "computation", 1, 8.11e-5},
};

/// Reads a stored threshold report, or runs it with --compute.
std::optional<nlohmann::json> load_threshold(const Config &c, const PublishedThreshold &row) {
    SchemeHandle s = make_scheme(row.code, row.kind);
    ExperimentHandle e;
    check(fs_experiment_create(s.h, row.procedure, row.target, &e.h), "tables");
    CString name;
    check(fs_experiment_name(e.h, row.gamma, &name.s), "run name");
    fs::path path = fs::path(c.out) / row.target / (name.str() + ".json");
    if (fs::exists(path)) {
        std::ifstream in(path);
        return nlohmann::json::parse(in);
    }
    if (!c.compute) {
        return std::nullopt;
    }
    Config run = c;
    run.p.reset();
    return nlohmann::json::parse(run_threshold(run, row.code, row.kind, row.procedure, row.target, row.gamma));
}

std::string threshold_table(const Config &c, const PublishedThreshold *rows, size_t count) {
    std::ostringstream out;
    out << "code,scheme,procedure,target,gamma,ours,ci_low,ci_high,published\n";
    for (size_t i = 0; i < count; i++) {
        const auto &row = rows[i];
        out << row.code << "," << row.kind << "," << row.procedure << "," << row.target << "," << row.gamma << ",";
        auto j = load_threshold(c, row);
        if (j && !(*j)["pseudo_threshold"].is_null()) {
            out << (*j)["pseudo_threshold"].get<double>() << "," << (*j)["interval"][0].get<double>() << ","
                << (*j)["interval"][1].get<double>();
        } else {
            out << ",,";
        }
        out << "," << row.published << "\n";
    }
    return out.str();
}

int cmd_tables(const Config &c) {
    validate_trials(c);
    fs::path dir = fs::path(c.out) / "tables";
    std::string census = census_table();
    write_file(dir / "census.csv", census);
    std::string decoders = threshold_table(c, kDecoderComparison, std::size(kDecoderComparison));
    write_file(dir / "decoder_comparison.csv", decoders);
    std::string thresholds = threshold_table(c, kThresholds, std::size(kThresholds));
    write_file(dir / "thresholds.csv", thresholds);
    std::cout << census << "\n" << decoders << "\n" << thresholds;
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Flag-qubit syndrome extraction toolkit"};
    app.set_config("--config", "", "key=value configuration file (command-line flags take precedence)");
    app.require_subcommand(1);
    Config c;
    app.add_option("--code", c.code, "Catalog code: 422, steane713, shor913, rm1513");
    app.add_option("--scheme", c.scheme, "flag or parallel")->capture_default_str();
    app.add_option("--procedure", c.procedure, "alg1, alg3, alg4, alg4-complete or detect")->capture_default_str();
    app.add_option("--mode", c.mode, "correct or detect (detect selects the detect procedure)")
        ->capture_default_str();
    app.add_option("--gamma", c.gamma, "Idle error ratio in [0, 1]")->capture_default_str();
    app.add_option("--p", c.p, "Estimate a single physical error rate instead of searching");
    app.add_option("--trials", c.trials, "Trial cap per grid point")->capture_default_str();
    app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app.add_option("--out", c.out, "Output directory")->capture_default_str();
    app.add_option("--group", c.group, "Shared-flag group for search, e.g. g7,g8");
    app.add_option("--max-iters", c.max_iters, "Search iteration budget")->capture_default_str();
    app.add_option("--target", c.target, "memory, computation or both")
        ->check(CLI::IsMember({"memory", "computation", "exrec", "both"}))
        ->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads (0: FLAGSHARE_THREADS or hardware)")
        ->capture_default_str();
    app.add_option("--p-max", c.p_max, "Start of the downward scan (default 0.05, or 0.5 for detection)");
    app.add_option("--rel-width", c.rel_width, "Relative width at which bisection stops")->capture_default_str();
    app.add_flag("--compute", c.compute, "tables: run threshold searches missing from the output directory");

    auto *codes = app.add_subcommand("codes", "List the code catalog");
    auto *verify = app.add_subcommand("verify", "Certify a scheme and dump its fault table");
    auto *search = app.add_subcommand("search", "Search shared-flag CNOT orders for a generator group");
    auto *threshold = app.add_subcommand("threshold", "Pseudo-threshold search");
    auto *tables = app.add_subcommand("tables", "Census, decoder comparison and threshold tables");
    for (auto *sub : {codes, verify, search, threshold, tables}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*codes) {
            return cmd_codes();
        }
        if (*verify) {
            return cmd_verify(c);
        }
        if (*search) {
            return cmd_search(c);
        }
        if (*threshold) {
            return cmd_threshold(c);
        }
        if (*tables) {
            return cmd_tables(c);
        }
    } catch (const CliError &e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }
    return kExitUsage;
}
