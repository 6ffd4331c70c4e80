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

#include "flagshare/codes.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace flagshare {

const char *residual_class_name(ResidualClass c) {
    switch (c) {
        case ResidualClass::Trivial:
            return "trivial";
        case ResidualClass::StabilizerEquivalent:
            return "stabilizer-equivalent";
        case ResidualClass::Logical:
            return "logical";
        case ResidualClass::Detectable:
            return "detectable";
    }
    return "?";
}

BitVector symplectic_vector(const PauliOperator &p) {
    size_t n = p.num_qubits();
    BitVector v(2 * n);
    for (size_t q = 0; q < n; q++) {
        v.set(q, p.x_bits()[q]);
        v.set(n + q, p.z_bits()[q]);
    }
    return v;
}

PauliOperator from_symplectic(const BitVector &v) {
    size_t n = v.size() / 2;
    PauliOperator p(n);
    for (size_t q = 0; q < n; q++) {
        p.x_bits().set(q, v[q]);
        p.z_bits().set(q, v[n + q]);
    }
    return p;
}

CssCode::CssCode(std::string name, size_t n, size_t k, size_t d, std::vector<PauliOperator> generators)
    : name_(std::move(name)), n_(n), k_(k), d_(d), generators_(std::move(generators)), stabilizer_span_(2 * n) {
    if (n == 0) {
        throw CodeError("code must have at least one qubit");
    }
    if (generators_.size() + k_ != n_) {
        throw CodeError(
            "code " + name_ + ": expected n-k = " + std::to_string(n_ - k_) + " generators, got " +
            std::to_string(generators_.size()));
    }
    for (size_t g = 0; g < generators_.size(); g++) {
        const auto &gen = generators_[g];
        if (gen.num_qubits() != n_) {
            throw CodeError("code " + name_ + ": generator " + std::to_string(g + 1) + " has wrong qubit count");
        }
        if (gen.is_identity()) {
            throw CodeError("code " + name_ + ": generator " + std::to_string(g + 1) + " is the identity");
        }
        if (gen.is_x_type()) {
            types_.push_back(PauliType::X);
            x_indices_.push_back(g);
        } else if (gen.is_z_type()) {
            types_.push_back(PauliType::Z);
            z_indices_.push_back(g);
        } else {
            throw CodeError("code " + name_ + ": generator " + gen.str() + " is not CSS");
        }
        if (!stabilizer_span_.insert(symplectic_vector(gen))) {
            throw CodeError("code " + name_ + ": generator " + gen.str() + " is dependent");
        }
        for (size_t h = 0; h < g; h++) {
            if (!commutes(gen, generators_[h])) {
                throw CodeError("code " + name_ + ": generators " + gen.str() + " and " + generators_[h].str() +
                                " anticommute");
            }
        }
    }
    if (x_indices_.size() > 64 || z_indices_.size() > 64) {
        throw CodeError("code " + name_ + ": more than 64 generators of one type");
    }
}

std::vector<PauliOperator> CssCode::gens_of_type(PauliType t) const {
    std::vector<PauliOperator> out;
    for (size_t g : indices(t)) {
        out.push_back(generators_[g]);
    }
    return out;
}

void CssCode::set_logicals(std::vector<PauliOperator> lx, std::vector<PauliOperator> lz) {
    if (lx.size() != k_ || lz.size() != k_) {
        throw CodeError("code " + name_ + ": need k logical pairs");
    }
    for (size_t i = 0; i < k_; i++) {
        for (size_t j = 0; j < k_; j++) {
            bool anti = !commutes(lx[i], lz[j]);
            if (anti != (i == j)) {
                throw CodeError("code " + name_ + ": logical operators are not symplectically paired");
            }
            if (!commutes(lx[i], lx[j]) || !commutes(lz[i], lz[j])) {
                throw CodeError("code " + name_ + ": logical operators do not commute");
            }
        }
        for (const auto &g : generators_) {
            if (!commutes(g, lx[i]) || !commutes(g, lz[i])) {
                throw CodeError("code " + name_ + ": logical operator does not commute with stabilizers");
            }
        }
    }
    logical_x_ = std::move(lx);
    logical_z_ = std::move(lz);
}

uint64_t CssCode::type_syndrome(const PauliOperator &e, PauliType t) const {
    uint64_t s = 0;
    const auto &idx = indices(t);
    for (size_t i = 0; i < idx.size(); i++) {
        if (!commutes(e, generators_[idx[i]])) {
            s |= uint64_t{1} << i;
        }
    }
    return s;
}

bool CssCode::in_stabilizer_group(const PauliOperator &e) const {
    return stabilizer_span_.contains(symplectic_vector(e));
}

PauliOperator CssCode::reduce_mod_stabilizers(const PauliOperator &e) const {
    return from_symplectic(stabilizer_span_.reduce(symplectic_vector(e)));
}

bool CssCode::flips_logical(const PauliOperator &e) const {
    for (size_t i = 0; i < logical_x_.size(); i++) {
        if (!commutes(e, logical_x_[i]) || !commutes(e, logical_z_[i])) {
            return true;
        }
    }
    return false;
}

ResidualClass CssCode::classify(const PauliOperator &e) const {
    if (e.is_identity()) {
        return ResidualClass::Trivial;
    }
    for (const auto &g : generators_) {
        if (!commutes(e, g)) {
            return ResidualClass::Detectable;
        }
    }
    bool logical = has_logicals() ? flips_logical(e) : !in_stabilizer_group(e);
    return logical ? ResidualClass::Logical : ResidualClass::StabilizerEquivalent;
}

ResidualClass classify_residual(const PauliOperator &e, const CssCode &code) {
    return code.classify(e);
}

namespace {

/// Pure operators of type t that commute with every generator and lie outside
/// the stabilizer group, sorted by weight then lexicographically.
std::vector<PauliOperator> pure_logicals(const CssCode &code, PauliType t, size_t max_count) {
    size_t n = code.n();
    if (n > 24) {
        throw CodeError("logical search limited to n <= 24");
    }
    std::vector<std::pair<size_t, uint64_t>> masks;
    for (uint64_t m = 1; m < (uint64_t{1} << n); m++) {
        masks.emplace_back(std::popcount(m), m);
    }
    std::sort(masks.begin(), masks.end());
    std::vector<PauliOperator> out;
    for (auto [w, m] : masks) {
        std::vector<size_t> qs;
        for (size_t q = 0; q < n; q++) {
            if ((m >> q) & 1) {
                qs.push_back(q);
            }
        }
        PauliOperator p = PauliOperator::of_type(t, n, qs);
        bool ok = true;
        for (const auto &g : code.generators()) {
            if (!commutes(p, g)) {
                ok = false;
                break;
            }
        }
        if (ok && !code.in_stabilizer_group(p)) {
            out.push_back(std::move(p));
            if (out.size() >= max_count) {
                break;
            }
        }
    }
    return out;
}

/// Picks operators independent modulo the stabilizer group, in list order.
std::vector<PauliOperator> independent_subset(const CssCode &code, const std::vector<PauliOperator> &cands,
                                              size_t k) {
    Gf2Basis span(2 * code.n());
    for (const auto &g : code.generators()) {
        span.insert(symplectic_vector(g));
    }
    std::vector<PauliOperator> out;
    for (const auto &c : cands) {
        if (out.size() == k) {
            break;
        }
        if (span.insert(symplectic_vector(c))) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

size_t minimum_logical_weight(const CssCode &code) {
    size_t best = code.n() + 1;
    for (PauliType t : {PauliType::X, PauliType::Z}) {
        auto l = pure_logicals(code, t, 1);
        if (!l.empty()) {
            best = std::min(best, l[0].weight());
        }
    }
    return best;
}

CssCode find_logicals(const CssCode &code) {
    CssCode out = code;
    if (code.k() == 0) {
        return out;
    }
    auto lx = independent_subset(code, pure_logicals(code, PauliType::X, SIZE_MAX), code.k());
    auto lz = independent_subset(code, pure_logicals(code, PauliType::Z, SIZE_MAX), code.k());
    if (lx.size() != code.k() || lz.size() != code.k()) {
        throw CodeError("code " + code.name() + ": could not find k independent logical pairs");
    }
    size_t k = code.k();
    for (size_t i = 0; i < k; i++) {
        size_t j = i;
        while (j < k && commutes(lx[i], lz[j])) {
            j++;
        }
        if (j == k) {
            throw CodeError("code " + code.name() + ": logical operators cannot be paired");
        }
        std::swap(lz[i], lz[j]);
        for (size_t a = 0; a < k; a++) {
            if (a == i) {
                continue;
            }
            if (!commutes(lx[a], lz[i])) {
                lx[a] *= lx[i];
            }
            if (!commutes(lz[a], lx[i])) {
                lz[a] *= lz[i];
            }
        }
    }
    out.set_logicals(lx, lz);
    size_t d = minimum_logical_weight(code);
    if (d != code.d()) {
        throw CodeError(
            "code " + code.name() + ": declared distance " + std::to_string(code.d()) + " but minimum logical weight is " +
            std::to_string(d));
    }
    return out;
}

namespace {

struct CatalogEntry {
    const char *name;
    size_t n;
    size_t k;
    size_t d;
    std::vector<const char *> gens;
};

const std::vector<CatalogEntry> &catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"422", 4, 2, 2, {"Z1 Z2 Z3 Z4", "X1 X2 X3 X4"}},
        {"steane713",
         7,
         1,
         3,
         {"X1 X3 X5 X7", "Z2 Z3 Z6 Z7", "Z4 Z5 Z6 Z7", "Z1 Z3 Z5 Z7", "X2 X3 X6 X7", "X4 X5 X6 X7"}},
        {"shor913",
         9,
         1,
         3,
         {"Z1 Z2", "Z2 Z3", "Z4 Z5", "Z5 Z6", "Z7 Z8", "Z8 Z9", "X1 X2 X3 X4 X5 X6", "X4 X5 X6 X7 X8 X9"}},
        {"rm1513",
         15,
         1,
         3,
         {"Z_{1,3,5,7,9,11,13,15}", "Z_{2,3,6,7,10,11,14,15}", "Z_{4,5,6,7,12,13,14,15}", "Z_{8,9,10,11,12,13,14,15}",
          "Z_{3,7,11,15}", "Z_{5,7,13,15}", "Z_{6,7,14,15}", "Z_{10,11,14,15}", "Z_{12,13,14,15}", "Z_{9,11,13,15}",
          "X_{1,3,5,7,9,11,13,15}", "X_{2,3,6,7,10,11,14,15}", "X_{4,5,6,7,12,13,14,15}",
          "X_{8,9,10,11,12,13,14,15}"}},
    };
    return entries;
}

}  // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto &e : catalog_entries()) {
        names.emplace_back(e.name);
    }
    return names;
}

CodePtr catalog(std::string_view name) {
    static std::map<std::string, CodePtr, std::less<>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) {
        return it->second;
    }
    for (const auto &e : catalog_entries()) {
        if (name == e.name) {
            std::vector<PauliOperator> gens;
            for (const char *g : e.gens) {
                gens.push_back(PauliOperator::parse(g, e.n));
            }
            auto code = std::make_shared<const CssCode>(find_logicals(CssCode(e.name, e.n, e.k, e.d, gens)));
            cache.emplace(std::string(name), code);
            return code;
        }
    }
    throw std::invalid_argument("unknown code '" + std::string(name) + "'; known codes: 422, steane713, shor913, rm1513");
}

CssCode parse_code_definition(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::string name;
    long n = -1;
    long k = -1;
    long d = -1;
    std::vector<std::string> gen_text;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) {
            continue;
        }
        std::string rest;
        std::getline(ls, rest);
        auto first = rest.find_first_not_of(" \t");
        rest = first == std::string::npos ? "" : rest.substr(first);
        auto as_int = [&](const std::string &s) {
            try {
                size_t used = 0;
                long v = std::stol(s, &used);
                if (used != s.size() || v < 0) {
                    throw std::invalid_argument("");
                }
                return v;
            } catch (const std::exception &) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": expected integer for " + key);
            }
        };
        if (key == "name") {
            name = rest;
        } else if (key == "n") {
            n = as_int(rest);
        } else if (key == "k") {
            k = as_int(rest);
        } else if (key == "d") {
            d = as_int(rest);
        } else if (key == "gen") {
            gen_text.push_back(rest);
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (name.empty() || n < 1 || k < 0 || d < 1) {
        throw std::invalid_argument("code definition needs name, n, k and d");
    }
    std::vector<PauliOperator> gens;
    for (const auto &g : gen_text) {
        gens.push_back(PauliOperator::parse(g, static_cast<size_t>(n)));
    }
    return find_logicals(CssCode(name, static_cast<size_t>(n), static_cast<size_t>(k), static_cast<size_t>(d), gens));
}

std::string format_code_definition(const CssCode &code) {
    std::ostringstream out;
    out << "name " << code.name() << "\n";
    out << "n " << code.n() << "\n";
    out << "k " << code.k() << "\n";
    out << "d " << code.d() << "\n";
    for (const auto &g : code.generators()) {
        out << "gen " << g.str() << "\n";
    }
    return out.str();
}

}  // namespace flagshare
