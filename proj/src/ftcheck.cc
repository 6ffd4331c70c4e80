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

#include "flagshare/ftcheck.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace flagshare {

FaultDriver::FaultDriver(const Scheme &scheme, PauliMask input) : scheme_(scheme), frame_(input) {
}

void FaultDriver::inject(size_t gadget, Injection fault) {
    target_ = gadget;
    fault_ = fault;
}

uint64_t FaultDriver::run_gadget(size_t i) {
    const auto &cc = scheme_.gadgets.at(i).compiled;
    GadgetResult r;
    if (target_ && *target_ == i) {
        r = cc.run(frame_.x, frame_.z, std::span<const Injection>(&fault_, 1));
        target_.reset();
    } else {
        r = cc.run(frame_.x, frame_.z, {});
    }
    frame_ = PauliMask{r.x, r.z};
    return r.outcomes;
}

uint64_t FaultDriver::run_followup(const Followup &f) {
    uint64_t bits = 0;
    for (const auto &cc : f.compiled) {
        GadgetResult r = cc.run(frame_.x, frame_.z, {});
        frame_ = PauliMask{r.x, r.z};
        bits ^= cc.generator_bits(r.outcomes);
    }
    return bits;
}

void FaultDriver::apply_correction(const PauliMask &c) {
    frame_ ^= c;
}

void FaultDriver::note_flag_lookup(const FlagKey &key, LookupPart part) {
    lookups_.push_back(Lookup{key, part, frame_});
}

namespace {

PauliType circuit_type(const Circuit &c) {
    for (const auto &m : c.measurements()) {
        if (m.role == QubitRole::Ancilla) {
            return m.x_basis ? PauliType::X : PauliType::Z;
        }
    }
    throw std::invalid_argument("circuit has no syndrome measurement");
}

std::vector<Injection> all_injections(const CompiledCircuit &cc) {
    std::vector<Injection> out;
    for (uint32_t g = 0; g < cc.num_gates(); g++) {
        int count = num_effects(cc.kind(g));
        for (int e = 1; e <= count; e++) {
            out.push_back(Injection{g, static_cast<uint8_t>(e)});
        }
    }
    return out;
}

PauliMask part_of(const PauliMask &m, PauliType t) {
    return t == PauliType::X ? PauliMask{m.x, 0} : PauliMask{0, m.z};
}

std::string bits_string(uint64_t bits, size_t count) {
    std::string s(count, '0');
    for (size_t i = 0; i < count; i++) {
        if ((bits >> i) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

PauliMask coset_key(const CssCode &code, const PauliMask &m) {
    return to_mask(code.reduce_mod_stabilizers(to_pauli(m, code.n())));
}

struct MaskLess {
    bool operator()(const PauliMask &a, const PauliMask &b) const {
        return a.x != b.x ? a.x < b.x : a.z < b.z;
    }
};

std::vector<int> parities_for(Procedure p) {
    if (p == Procedure::Alg3 || p == Procedure::Alg4 || p == Procedure::Alg4Complete) {
        return {0, 1};
    }
    return {0};
}

PauliMask restrict(const PauliMask &m, LookupPart part) {
    switch (part) {
        case LookupPart::X:
            return PauliMask{m.x, 0};
        case LookupPart::Z:
            return PauliMask{0, m.z};
        case LookupPart::Both:
            return m;
    }
    return m;
}

}  // namespace

size_t b_count(const Circuit &flagged, const CssCode &code) {
    size_t flags = 0;
    for (auto role : flagged.roles()) {
        flags += role == QubitRole::Flag;
    }
    if (flags != 1) {
        throw std::invalid_argument("b_count needs a circuit with exactly one flag qubit");
    }
    PauliType t = circuit_type(flagged);
    CompiledCircuit cc(flagged);
    std::set<PauliMask, MaskLess> classes;
    for (const auto &inj : all_injections(cc)) {
        GadgetResult r = cc.run(0, 0, std::span<const Injection>(&inj, 1));
        if (!cc.flag_bits(r.outcomes)) {
            continue;
        }
        PauliMask key = coset_key(code, part_of(PauliMask{r.x, r.z}, t));
        if (!key.is_identity()) {
            classes.insert(key);
        }
    }
    return classes.size();
}

bool check_budget(const std::vector<size_t> &group, const CssCode &code, size_t *total, size_t *budget) {
    if (group.empty()) {
        throw std::invalid_argument("empty group");
    }
    PauliType t = code.generator_type(group[0]);
    size_t sum = 0;
    for (size_t g : group) {
        if (code.generator_type(g) != t) {
            throw std::invalid_argument("budget check on a group mixing X-type and Z-type generators");
        }
        const auto &gen = code.generator(g);
        if (gen.weight() >= 3) {
            sum += b_count(build_flagged(gen, static_cast<int32_t>(g)), code);
        }
    }
    size_t limit = size_t{1} << code.indices(opposite(t)).size();
    if (total) {
        *total = sum;
    }
    if (budget) {
        *budget = limit;
    }
    return sum <= limit;
}

std::vector<FaultTableRow> fault_table(const Scheme &scheme, size_t gadget) {
    const CssCode &code = *scheme.code;
    const auto &g = scheme.gadgets.at(gadget);
    const auto &cc = g.compiled;
    auto meas = g.circuit.measurements();
    std::vector<FaultTableRow> rows;
    size_t id = 0;
    for (const auto &inj : all_injections(cc)) {
        GadgetResult r = cc.run(0, 0, std::span<const Injection>(&inj, 1));
        FaultTableRow row;
        row.fault_id = id++;
        row.gadget = gadget;
        row.fault = FaultEvent{inj.gate, inj.effect};
        row.location = location_label(g.circuit, inj.gate);
        row.effect = effect_name(cc.kind(inj.gate), inj.effect);
        row.residual = from_masks(r.x, r.z, code.n());
        for (size_t m = 0; m < meas.size(); m++) {
            char b = ((r.outcomes >> m) & 1) ? '1' : '0';
            (meas[m].role == QubitRole::Flag ? row.f : row.m) += b;
        }
        row.m_prime = code.syndrome(row.residual).str();
        row.flag_raised = g.self_flagging ? r.outcomes != 0 : cc.flag_bits(r.outcomes) != 0;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string fault_table_csv(const std::vector<FaultTableRow> &rows) {
    std::ostringstream out;
    out << "fault_id,location,effect,residual,m,f,m_prime\n";
    for (const auto &r : rows) {
        out << r.fault_id << ",gadget" << r.gadget << " " << r.location << "," << r.effect << "," << r.residual.str()
            << "," << r.m << "," << r.f << "," << r.m_prime << "\n";
    }
    return out.str();
}

std::string fault_table_json(const std::vector<FaultTableRow> &rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &r : rows) {
        j.push_back({{"fault_id", r.fault_id},
                     {"gadget", r.gadget},
                     {"location", r.location},
                     {"effect", r.effect},
                     {"residual", r.residual.str()},
                     {"m", r.m},
                     {"f", r.f},
                     {"m_prime", r.m_prime},
                     {"flag_raised", r.flag_raised}});
    }
    return j.dump(2);
}

DecoderTables learn_tables(const Scheme &scheme, Procedure procedure, std::vector<Collision> *collisions) {
    const CssCode &code = *scheme.code;
    DecoderTables empty(scheme.code);
    if (procedure == Procedure::Detect) {
        return empty;
    }
    struct Seen {
        std::map<PauliMask, size_t, MaskLess> counts;
        std::map<PauliMask, PauliMask, MaskLess> lightest;
    };
    std::unordered_map<FlagKey, Seen, FlagKeyHash> seen;
    std::vector<FlagKey> order;

    auto record = [&](FaultDriver &d) {
        for (const auto &l : d.lookups()) {
            PauliMask part = restrict(l.frame, l.part);
            PauliMask cls = coset_key(code, part);
            auto [it, fresh] = seen.try_emplace(l.key);
            if (fresh) {
                order.push_back(l.key);
            }
            it->second.counts[cls]++;
            auto lt = it->second.lightest.find(cls);
            auto wt = [](const PauliMask &m) { return std::popcount(m.x | m.z); };
            if (lt == it->second.lightest.end() || wt(part) < wt(lt->second)) {
                it->second.lightest[cls] = part;
            }
        }
    };

    for (int parity : parities_for(procedure)) {
        DecoderConfig cfg{procedure, parity};
        for (size_t i = 0; i < scheme.gadgets.size(); i++) {
            for (const auto &inj : all_injections(scheme.gadgets[i].compiled)) {
                FaultDriver d(scheme);
                d.inject(i, inj);
                decode_round(scheme, empty, cfg, d);
                record(d);
            }
        }
        for (size_t q = 0; q < code.n(); q++) {
            for (int e = 1; e <= 3; e++) {
                PauliMask in{(e & 1) ? uint64_t{1} << q : 0, (e & 2) ? uint64_t{1} << q : 0};
                FaultDriver d(scheme, in);
                decode_round(scheme, empty, cfg, d);
                record(d);
            }
        }
    }

    DecoderTables tables(scheme.code);
    for (const auto &key : order) {
        const Seen &s = seen.at(key);
        const PauliMask *best = nullptr;
        size_t best_count = 0;
        for (const auto &[cls, count] : s.counts) {
            if (count > best_count) {
                best = &cls;
                best_count = count;
            }
        }
        tables.set_flag(key, s.lightest.at(*best));
        if (collisions && s.counts.size() > 1) {
            for (const auto &[cls, count] : s.counts) {
                if (!(cls == *best)) {
                    collisions->push_back(Collision{key, to_pauli(s.lightest.at(*best), code.n()),
                                                    to_pauli(s.lightest.at(cls), code.n())});
                }
            }
        }
    }
    return tables;
}

bool ideal_round_fails(const DecoderTables &tables, PauliMask frame) {
    const CssCode &code = tables.code();
    PauliOperator e = to_pauli(frame, code.n());
    uint64_t s = to_mask(code.syndrome(e));
    frame ^= tables.lookup0(s);
    ResidualClass c = code.classify(to_pauli(frame, code.n()));
    return c == ResidualClass::Logical || c == ResidualClass::Detectable;
}

Certificate certify(const Scheme &scheme, Procedure procedure) {
    std::vector<Collision> collisions;
    DecoderTables tables = learn_tables(scheme, procedure, &collisions);
    return certify(scheme, procedure, tables, collisions);
}

Certificate certify(const Scheme &scheme, Procedure procedure, const DecoderTables &tables,
                    const std::vector<Collision> &collisions) {
    const CssCode &code = *scheme.code;
    Certificate cert;
    cert.scheme = scheme.id();
    cert.procedure = procedure;
    cert.collisions = collisions;
    cert.unique = collisions.empty();
    for (const auto &g : scheme.gadgets) {
        size_t flags = 0;
        for (auto role : g.circuit.roles()) {
            flags += role == QubitRole::Flag;
        }
        if (flags == 1) {
            cert.b_counts.push_back(b_count(g.circuit, code));
        }
    }
    if (!procedure_supported(scheme, procedure)) {
        throw std::invalid_argument(std::string("procedure ") + procedure_name(procedure) +
                                    " is not available for scheme " + scheme.id());
    }
    for (int parity : parities_for(procedure)) {
        DecoderConfig cfg{procedure, parity};
        for (size_t i = 0; i < scheme.gadgets.size(); i++) {
            const auto &gadget = scheme.gadgets[i];
            for (const auto &inj : all_injections(gadget.compiled)) {
                FaultDriver d(scheme);
                d.inject(i, inj);
                DecodeOutcome out = decode_round(scheme, tables, cfg, d);
                cert.faults_checked++;
                bool bad;
                if (procedure == Procedure::Detect) {
                    bad = out.action != DecodeAction::Discard &&
                          code.classify(to_pauli(d.frame(), code.n())) == ResidualClass::Logical;
                } else {
                    bad = ideal_round_fails(tables, d.frame());
                }
                if (bad) {
                    std::string trace;
                    for (const auto &t : out.trace) {
                        trace += (trace.empty() ? "" : " ") + t;
                    }
                    if (parity) {
                        trace += " (parity 1)";
                    }
                    cert.bad_locations.push_back(BadLocation{i, FaultEvent{inj.gate, inj.effect},
                                                             location_label(gadget.circuit, inj.gate),
                                                             effect_name(gadget.compiled.kind(inj.gate), inj.effect),
                                                             to_pauli(d.frame(), code.n()), trace});
                }
            }
        }
    }
    cert.pass = cert.bad_locations.empty() && cert.unique;
    return cert;
}

std::string Certificate::to_json() const {
    nlohmann::json j;
    j["scheme"] = scheme;
    j["procedure"] = procedure_name(procedure);
    j["verdict"] = pass ? "pass" : "fail";
    j["faults_checked"] = faults_checked;
    j["b_counts"] = b_counts;
    j["unique"] = unique;
    nlohmann::json bad = nlohmann::json::array();
    for (const auto &b : bad_locations) {
        bad.push_back({{"gadget", b.gadget},
                       {"location", b.location},
                       {"effect", b.effect},
                       {"final_residual", b.final_residual.str()},
                       {"trace", b.trace}});
    }
    j["bad_locations"] = bad;
    nlohmann::json col = nlohmann::json::array();
    for (const auto &c : collisions) {
        col.push_back({{"context", c.key.context},
                       {"pattern", c.key.pattern},
                       {"syndrome", c.key.syndrome},
                       {"kept", c.first.str()},
                       {"conflicting", c.second.str()}});
    }
    j["collisions"] = col;
    return j.dump(2);
}

std::vector<Collision> flag_collisions(const Circuit &c, const CssCode &code) {
    PauliType t = circuit_type(c);
    CompiledCircuit cc(c);
    std::map<uint64_t, PauliMask> by_syndrome;
    std::map<uint64_t, PauliMask> example;
    by_syndrome[0] = PauliMask{};
    example[0] = PauliMask{};
    std::vector<Collision> out;
    std::set<std::pair<uint64_t, std::pair<uint64_t, uint64_t>>> reported;
    for (const auto &inj : all_injections(cc)) {
        GadgetResult r = cc.run(0, 0, std::span<const Injection>(&inj, 1));
        if (!cc.flag_bits(r.outcomes)) {
            continue;
        }
        PauliMask part = part_of(PauliMask{r.x, r.z}, t);
        PauliMask cls = coset_key(code, part);
        uint64_t s = code.type_syndrome(to_pauli(part, code.n()), opposite(t));
        auto it = by_syndrome.find(s);
        if (it == by_syndrome.end()) {
            by_syndrome[s] = cls;
            example[s] = part;
        } else if (!(it->second == cls)) {
            auto tag = std::make_pair(s, std::make_pair(cls.x, cls.z));
            if (reported.insert(tag).second) {
                out.push_back(Collision{FlagKey{0, 1, s}, to_pauli(example[s], code.n()), to_pauli(part, code.n())});
            }
        }
    }
    return out;
}

SearchResult algorithm2_search(const CssCode &code, const std::vector<size_t> &group, Rng &rng, size_t max_iters) {
    SearchResult res;
    res.spec.generators = group;
    size_t total = 0;
    size_t budget = 0;
    res.budget_ok = check_budget(group, code, &total, &budget);
    if (!res.budget_ok) {
        return res;
    }
    for (size_t g : group) {
        res.spec.orders.push_back(code.generator(g).support());
    }
    auto build = [&](const GroupSpec &spec) {
        std::vector<GroupMember> members;
        for (size_t i = 0; i < spec.generators.size(); i++) {
            size_t g = spec.generators[i];
            members.push_back(GroupMember{code.generator(g), static_cast<int32_t>(g), spec.orders[i]});
        }
        return build_shared_flag(members, true);
    };
    GroupSpec current = res.spec;
    size_t best = SIZE_MAX;
    for (size_t it = 0; it <= max_iters; it++) {
        Circuit c = build(current);
        auto col = flag_collisions(c, code);
        if (col.size() < best) {
            best = col.size();
            res.spec = current;
            res.circuit = c;
            res.collisions = col;
        }
        res.iterations = it;
        if (col.empty()) {
            res.success = true;
            return res;
        }
        GroupSpec next = current;
        size_t picks = group.size() > 1 ? 1 + rng.below(2) : 1;
        for (size_t k = 0; k < picks; k++) {
            auto &ord = next.orders[rng.below(group.size())];
            size_t a = rng.below(ord.size());
            size_t b = rng.below(ord.size() - 1);
            if (b >= a) {
                b++;
            }
            std::swap(ord[a], ord[b]);
        }
        current = next;
    }
    return res;
}

Circuit ed_parallel_all(const CssCode &code, PauliType type) {
    std::vector<GroupMember> members;
    for (size_t g : code.indices(type)) {
        members.push_back(GroupMember{code.generator(g), static_cast<int32_t>(g), {}});
    }
    return build_shared_flag(members, true);
}

bool certify_detection_circuit(const Circuit &c, const CssCode &code, std::vector<FaultEvent> *bad) {
    CompiledCircuit cc(c);
    bool ok = true;
    for (const auto &inj : all_injections(cc)) {
        GadgetResult r = cc.run(0, 0, std::span<const Injection>(&inj, 1));
        if (r.outcomes) {
            continue;
        }
        if (code.classify(from_masks(r.x, r.z, code.n())) == ResidualClass::Logical) {
            ok = false;
            if (bad) {
                bad->push_back(FaultEvent{inj.gate, inj.effect});
            }
        }
    }
    return ok;
}

std::vector<GoldenRow> shor_flag_raised_rows(const Scheme &scheme) {
    const CssCode &code = *scheme.code;
    std::set<GoldenRow> rows;
    for (size_t i : scheme.gadgets_on_side(GadgetSide::X)) {
        const auto &g = scheme.gadgets[i];
        const auto &cc = g.compiled;
        for (const auto &inj : all_injections(cc)) {
            const auto &op = cc.ops()[inj.gate];
            bool two = is_two_qubit(op.kind);
            uint8_t on_a = inj.effect & 3;
            uint8_t on_b = two ? (inj.effect >> 2) & 3 : 0;
            uint32_t qubit;
            if (is_measurement(op.kind)) {
                continue;
            }
            if (on_a == 1 && on_b == 0) {
                qubit = op.a;
            } else if (two && on_a == 0 && on_b == 1) {
                qubit = op.b;
            } else {
                continue;
            }
            if (g.circuit.role(qubit) != QubitRole::Ancilla) {
                continue;
            }
            GadgetResult r = cc.run(0, 0, std::span<const Injection>(&inj, 1));
            if (!cc.flag_bits(r.outcomes) || r.x == 0) {
                continue;
            }
            PauliOperator residual = from_masks(r.x, r.z, code.n());
            std::string bits;
            std::string flags;
            auto meas = g.circuit.measurements();
            for (size_t m = 0; m < meas.size(); m++) {
                char b = ((r.outcomes >> m) & 1) ? '1' : '0';
                (meas[m].role == QubitRole::Flag ? flags : bits) += b;
            }
            uint64_t mp = code.type_syndrome(residual, PauliType::Z);
            rows.insert(GoldenRow{residual.str(), bits + flags, bits_string(mp, code.z_indices().size())});
        }
    }
    return {rows.begin(), rows.end()};
}

std::vector<GoldenRow> pre_cnot_rows(const Gadget &gadget, size_t n) {
    auto gates = flat_gates(gadget.circuit);
    size_t num_meas = gadget.circuit.measurements().size();
    std::vector<GoldenRow> rows;
    for (uint8_t bits : {uint8_t{1}, uint8_t{2}}) {
        for (uint32_t i = 0; i < gates.size(); i++) {
            if (gates[i].kind != GateKind::CNOT) {
                continue;
            }
            for (uint32_t q : {gates[i].a, gates[i].b}) {
                std::optional<Injection> inj;
                for (int64_t j = static_cast<int64_t>(i) - 1; j >= 0 && !inj; j--) {
                    const Gate &g = gates[j];
                    if (g.a == q) {
                        inj = Injection{static_cast<uint32_t>(j), bits};
                    } else if (is_two_qubit(g.kind) && g.b == q) {
                        inj = Injection{static_cast<uint32_t>(j), static_cast<uint8_t>(bits << 2)};
                    }
                }
                if (!inj) {
                    throw std::invalid_argument("qubit " + std::to_string(q) + " has no gate before CNOT " +
                                                std::to_string(i));
                }
                GadgetResult r = gadget.compiled.run(0, 0, std::span<const Injection>(&*inj, 1));
                PauliOperator residual = from_masks(r.x, r.z, n);
                rows.push_back(GoldenRow{residual.is_identity() ? "None" : residual.str(),
                                         bits_string(r.outcomes, num_meas), ""});
            }
        }
    }
    return rows;
}

}  // namespace flagshare
