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

#include "flagshare/flagshare_c.h"

#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "flagshare/ftcheck.h"
#include "flagshare/montecarlo.h"
#include "json.hpp"

struct fs_scheme {
    flagshare::Scheme scheme;
};

struct fs_experiment {
    std::unique_ptr<flagshare::Experiment> experiment;
};

namespace {

using namespace flagshare;

thread_local std::string g_last_error;

fs_status fail(fs_status s, const std::string &msg) {
    g_last_error = msg;
    return s;
}

char *dup(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void put(char **out, const std::string &s) {
    if (out) {
        *out = dup(s);
    }
}

template <class F>
fs_status guard(F &&f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const CertificationError &e) {
        return fail(FS_ERR_NOT_CERTIFIED, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(FS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range &e) {
        return fail(FS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception &e) {
        return fail(FS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FS_ERR_INTERNAL, "unknown error");
    }
}

fs_status require(const void *p, const char *what) {
    if (!p) {
        return fail(FS_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
    }
    return FS_OK;
}

nlohmann::json census_json(const LocationCensus &c) {
    return {{"prep", c.prep}, {"meas_x", c.meas_x}, {"meas_z", c.meas_z}, {"cnot", c.cnot},
            {"idle", c.idle}, {"swap", c.swap},     {"total", c.total()}};
}

std::vector<size_t> parse_group(const std::string &text, const CssCode &code) {
    std::vector<size_t> group;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t start = item.find_first_not_of(" \t");
        size_t end = item.find_last_not_of(" \t");
        if (start == std::string::npos) {
            continue;
        }
        item = item.substr(start, end - start + 1);
        if (item.size() < 2 || (item[0] != 'g' && item[0] != 'G')) {
            throw std::invalid_argument("group members look like g7: '" + item + "'");
        }
        size_t pos = 0;
        unsigned long v = std::stoul(item.substr(1), &pos);
        if (pos != item.size() - 1 || v == 0 || v > code.num_generators()) {
            throw std::invalid_argument("generator '" + item + "' is not in " + code.name());
        }
        group.push_back(v - 1);
    }
    if (group.empty()) {
        throw std::invalid_argument("empty generator group");
    }
    return group;
}

std::string golden_csv(const std::vector<GoldenRow> &rows, bool with_m_prime) {
    std::ostringstream out;
    out << (with_m_prime ? "residual,m_f,m_prime\n" : "data_error,m\n");
    for (const auto &r : rows) {
        out << r.residual << "," << r.bits;
        if (with_m_prime) {
            out << "," << r.m_prime;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace

extern "C" {

const char *fs_last_error(void) {
    return g_last_error.c_str();
}

const char *fs_status_name(fs_status s) {
    switch (s) {
        case FS_OK:
            return "ok";
        case FS_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case FS_ERR_NOT_CERTIFIED:
            return "not certified";
        case FS_ERR_NOT_FOUND:
            return "not found";
        case FS_ERR_FAILED:
            return "failed";
        case FS_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

const char *fs_version(void) {
    return "0.1.0";
}

void fs_string_free(char *s) {
    delete[] s;
}

fs_status fs_code_list(char **out) {
    return guard([&] {
        std::string s;
        for (const auto &n : catalog_names()) {
            s += n + "\n";
        }
        put(out, s);
        return FS_OK;
    });
}

fs_status fs_code_describe(const char *code, char **out_json) {
    if (auto s = require(code, "code")) {
        return s;
    }
    return guard([&] {
        CodePtr c = catalog(code);
        nlohmann::json j;
        j["name"] = c->name();
        j["n"] = c->n();
        j["k"] = c->k();
        j["d"] = c->d();
        nlohmann::json gens = nlohmann::json::array();
        for (size_t g = 0; g < c->num_generators(); g++) {
            gens.push_back({{"id", "g" + std::to_string(g + 1)},
                            {"type", c->generator_type(g) == PauliType::X ? "X" : "Z"},
                            {"pauli", c->generator(g).str()}});
        }
        j["generators"] = gens;
        nlohmann::json lx = nlohmann::json::array();
        nlohmann::json lz = nlohmann::json::array();
        for (const auto &l : c->logical_x()) {
            lx.push_back(l.str());
        }
        for (const auto &l : c->logical_z()) {
            lz.push_back(l.str());
        }
        j["logical_x"] = lx;
        j["logical_z"] = lz;
        put(out_json, j.dump(2));
        return FS_OK;
    });
}

fs_status fs_scheme_create(const char *code, const char *kind, fs_scheme **out) {
    if (auto s = require(code, "code")) {
        return s;
    }
    if (auto s = require(kind, "kind")) {
        return s;
    }
    if (auto s = require(out, "out")) {
        return s;
    }
    return guard([&] {
        *out = new fs_scheme{build_scheme(catalog(code), parse_scheme_kind(kind))};
        return FS_OK;
    });
}

void fs_scheme_free(fs_scheme *s) {
    delete s;
}

fs_status fs_scheme_id(const fs_scheme *s, char **out) {
    if (auto st = require(s, "scheme")) {
        return st;
    }
    return guard([&] {
        put(out, s->scheme.id());
        return FS_OK;
    });
}

fs_status fs_scheme_circuits(const fs_scheme *s, char **out) {
    if (auto st = require(s, "scheme")) {
        return st;
    }
    return guard([&] {
        std::string text;
        for (const auto &g : s->scheme.gadgets) {
            text += format_circuit(g.circuit) + "\n";
        }
        put(out, text);
        return FS_OK;
    });
}

fs_status fs_scheme_census(const fs_scheme *s, int include_followups, char **out_json) {
    if (auto st = require(s, "scheme")) {
        return st;
    }
    return guard([&] {
        nlohmann::json j = census_json(exrec_census(s->scheme, include_followups != 0));
        j["scheme"] = s->scheme.id();
        j["include_followups"] = include_followups != 0;
        put(out_json, j.dump(2));
        return FS_OK;
    });
}

fs_status fs_certify(const fs_scheme *s, const char *procedure, int *pass, char **out_json) {
    if (auto st = require(s, "scheme")) {
        return st;
    }
    if (auto st = require(procedure, "procedure")) {
        return st;
    }
    return guard([&] {
        Certificate cert = certify(s->scheme, parse_procedure(procedure));
        if (pass) {
            *pass = cert.pass ? 1 : 0;
        }
        put(out_json, cert.to_json());
        return FS_OK;
    });
}

fs_status fs_fault_table(const fs_scheme *s, const char *format, char **out) {
    if (auto st = require(s, "scheme")) {
        return st;
    }
    std::string fmt = format ? format : "csv";
    if (fmt != "csv" && fmt != "json") {
        return fail(FS_ERR_INVALID_ARGUMENT, "fault table format must be csv or json");
    }
    return guard([&] {
        std::vector<FaultTableRow> rows;
        for (size_t g = 0; g < s->scheme.gadgets.size(); g++) {
            auto part = fault_table(s->scheme, g);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        for (size_t i = 0; i < rows.size(); i++) {
            rows[i].fault_id = i;
        }
        put(out, fmt == "csv" ? fault_table_csv(rows) : fault_table_json(rows));
        return FS_OK;
    });
}

fs_status fs_golden_table(const fs_scheme *s, char **out_csv) {
    if (auto st = require(s, "scheme")) {
        return st;
    }
    return guard([&] {
        const Scheme &sc = s->scheme;
        if (sc.kind != SchemeKind::Parallel) {
            return fail(FS_ERR_NOT_FOUND, "no golden table for " + sc.id());
        }
        if (sc.code->name() == "422") {
            put(out_csv, golden_csv(pre_cnot_rows(sc.gadgets.at(0), sc.code->n()), false));
            return FS_OK;
        }
        if (sc.code->name() == "shor913") {
            put(out_csv, golden_csv(shor_flag_raised_rows(sc), true));
            return FS_OK;
        }
        return fail(FS_ERR_NOT_FOUND, "no golden table for " + sc.id());
    });
}

fs_status fs_search(const char *code, const char *group, uint64_t seed, size_t max_iters, char **out_circuit,
                    char **out_json) {
    if (auto st = require(code, "code")) {
        return st;
    }
    if (auto st = require(group, "group")) {
        return st;
    }
    return guard([&] {
        CodePtr c = catalog(code);
        std::vector<size_t> members = parse_group(group, *c);
        nlohmann::json j;
        j["code"] = c->name();
        j["group"] = group;
        j["seed"] = seed;
        j["max_iters"] = max_iters;
        size_t total = 0;
        size_t budget = 0;
        bool budget_ok = check_budget(members, *c, &total, &budget);
        j["budget"] = {{"ok", budget_ok}, {"flag_raising_classes", total}, {"available_syndromes", budget}};
        if (!budget_ok) {
            j["success"] = false;
            j["iterations"] = 0;
            put(out_json, j.dump(2));
            put(out_circuit, "");
            return fail(FS_ERR_FAILED, "budget check failed: " + std::to_string(total) + " flag-raising classes > " +
                                           std::to_string(budget) + " syndromes");
        }
        Rng rng(seed);
        SearchResult r = algorithm2_search(*c, members, rng, max_iters);
        j["success"] = r.success;
        j["iterations"] = r.iterations;
        nlohmann::json orders = nlohmann::json::array();
        for (size_t i = 0; i < r.spec.generators.size(); i++) {
            nlohmann::json order = nlohmann::json::array();
            for (size_t q : r.spec.orders.at(i)) {
                order.push_back(q + 1);
            }
            orders.push_back({{"generator", "g" + std::to_string(r.spec.generators[i] + 1)}, {"order", order}});
        }
        j["orders"] = orders;
        nlohmann::json cols = nlohmann::json::array();
        for (const auto &col : r.collisions) {
            cols.push_back({{"syndrome", col.key.syndrome}, {"first", col.first.str()}, {"second", col.second.str()}});
        }
        j["collisions"] = cols;
        put(out_json, j.dump(2));
        put(out_circuit, format_circuit(r.circuit));
        if (!r.success) {
            return fail(FS_ERR_FAILED, "no collision-free order found in " + std::to_string(r.iterations) +
                                           " iterations; best attempt has " + std::to_string(r.collisions.size()) +
                                           " collisions");
        }
        return FS_OK;
    });
}

fs_status fs_experiment_create(const fs_scheme *s, const char *procedure, const char *target, fs_experiment **out) {
    if (auto st = require(s, "scheme")) {
        return st;
    }
    if (auto st = require(procedure, "procedure")) {
        return st;
    }
    if (auto st = require(target, "target")) {
        return st;
    }
    if (auto st = require(out, "out")) {
        return st;
    }
    return guard([&] {
        auto e = std::make_unique<Experiment>(s->scheme, parse_procedure(procedure), parse_target(target));
        *out = new fs_experiment{std::move(e)};
        return FS_OK;
    });
}

void fs_experiment_free(fs_experiment *e) {
    delete e;
}

fs_status fs_experiment_name(const fs_experiment *e, double gamma, char **out) {
    if (auto st = require(e, "experiment")) {
        return st;
    }
    return guard([&] {
        put(out, e->experiment->run_name(gamma));
        return FS_OK;
    });
}

void fs_threshold_options_default(fs_threshold_options *o) {
    if (!o) {
        return;
    }
    ThresholdOptions d;
    o->p_min = d.p_min;
    o->p_max = d.p_max;
    o->initial_trials = d.initial_trials;
    o->max_trials_per_point = d.max_trials_per_point;
    o->budget = d.budget;
    o->rel_width = d.rel_width;
    o->decision_z = d.decision_z;
    o->seed = d.seed;
    o->threads = 0;
}

fs_status fs_threshold(const fs_experiment *e, double gamma, const fs_threshold_options *o, char **out_csv,
                       char **out_json) {
    if (auto st = require(e, "experiment")) {
        return st;
    }
    return guard([&] {
        fs_threshold_options c;
        fs_threshold_options_default(&c);
        if (o) {
            c = *o;
        }
        ThresholdOptions opt;
        opt.p_min = c.p_min;
        opt.p_max = c.p_max;
        opt.initial_trials = c.initial_trials;
        opt.max_trials_per_point = c.max_trials_per_point;
        opt.budget = c.budget;
        opt.rel_width = c.rel_width;
        opt.decision_z = c.decision_z;
        opt.seed = c.seed;
        opt.threads = c.threads ? c.threads : default_threads();
        ThresholdReport r = find_pseudothreshold(*e->experiment, gamma, opt);
        put(out_csv, r.to_csv());
        put(out_json, r.to_json());
        return FS_OK;
    });
}

fs_status fs_estimate(const fs_experiment *e, double p, double gamma, uint64_t trials, uint64_t seed,
                      unsigned threads, char **out_csv, char **out_json) {
    if (auto st = require(e, "experiment")) {
        return st;
    }
    return guard([&] {
        ThresholdReport r =
            estimate_point(*e->experiment, p, gamma, trials, seed, threads ? threads : default_threads());
        put(out_csv, r.to_csv());
        put(out_json, r.to_json());
        return FS_OK;
    });
}

unsigned fs_default_threads(void) {
    return default_threads();
}

}  // extern "C"
