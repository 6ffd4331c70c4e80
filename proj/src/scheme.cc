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

#include "flagshare/scheme.h"

#include <stdexcept>

namespace flagshare {

namespace {

const char *const kParallel422 =
    "circuit C422par\n"
    "data 4\n"
    "ancilla 4 5\n"
    "PZ 4; PX 5\n"
    "SWAP 4 5; I 0; I 1; I 2; I 3\n"
    "CX 2 5; CX 4 0; I 1; I 3\n"
    "CX 0 5; CX 4 2; I 1; I 3\n"
    "CX 1 5; CX 4 3; I 0; I 2\n"
    "CX 3 5; CX 4 1; I 0; I 2\n"
    "SWAP 4 5; I 0; I 1; I 2; I 3\n"
    "MZ 4 g0; MX 5 g1\n";

// Part A measures X1357 (ancilla 7), Z2367 (ancilla 8), Z4567 (ancilla 9);
// part B measures Z1357 (ancilla 7), X2367 (ancilla 8), X4567 (ancilla 9).
const char *const kSteaneParallelA =
    "circuit C713parA\n"
    "data 7\n"
    "ancilla 7 8 9\n"
    "PX 7; PZ 8; PZ 9\n"
    "CX 5 9; CX 6 8; CX 7 2; I 0; I 1; I 3; I 4\n"
    "CX 7 9; CX 2 8; I 0; I 1; I 3; I 4; I 5; I 6\n"
    "CX 3 9; CX 1 8; CX 7 0; I 2; I 4; I 5; I 6\n"
    "CX 4 9; CX 5 8; CX 7 6; I 0; I 1; I 2; I 3\n"
    "CX 6 9; CX 7 4; I 0; I 1; I 2; I 3; I 5; I 8\n"
    "CX 7 8; I 0; I 1; I 2; I 3; I 4; I 5; I 6; I 9\n"
    "MX 7 g0; MZ 8 g1; MZ 9 g2\n";
const char *const kSteaneParallelB =
    "circuit C713parB\n"
    "data 7\n"
    "ancilla 7 8 9\n"
    "PZ 7; PX 8; PX 9\n"
    "CX 9 5; CX 8 6; CX 2 7; I 0; I 1; I 3; I 4\n"
    "CX 9 7; CX 8 2; I 0; I 1; I 3; I 4; I 5; I 6\n"
    "CX 9 3; CX 8 1; CX 0 7; I 2; I 4; I 5; I 6\n"
    "CX 9 4; CX 8 5; CX 6 7; I 0; I 1; I 2; I 3\n"
    "CX 9 6; CX 4 7; I 0; I 1; I 2; I 3; I 5; I 8\n"
    "CX 8 7; I 0; I 1; I 2; I 3; I 4; I 5; I 6; I 9\n"
    "MZ 7 g3; MX 8 g4; MX 9 g5\n";

Gadget make_gadget(Circuit c, const CssCode &code, bool self_flagging) {
    Gadget g;
    g.compiled = CompiledCircuit(c);
    g.generators = g.compiled.measured_generators();
    bool has_x = false;
    bool has_z = false;
    for (size_t i = 0; i < code.num_generators(); i++) {
        if ((g.generators >> i) & 1) {
            (code.generator_type(i) == PauliType::X ? has_x : has_z) = true;
        }
    }
    g.side = has_x && has_z ? GadgetSide::Mixed : (has_x ? GadgetSide::X : GadgetSide::Z);
    g.self_flagging = self_flagging;
    g.circuit = std::move(c);
    return g;
}

Circuit group_circuit(const CssCode &code, const GroupSpec &spec, bool with_flag) {
    std::vector<GroupMember> members;
    for (size_t i = 0; i < spec.generators.size(); i++) {
        size_t g = spec.generators[i];
        std::vector<size_t> order;
        if (i < spec.orders.size()) {
            order = spec.orders[i];
        }
        members.push_back(GroupMember{code.generator(g), static_cast<int32_t>(g), order});
    }
    return build_shared_flag(members, with_flag);
}

bool needs_flag(const CssCode &code, const GroupSpec &spec) {
    for (size_t g : spec.generators) {
        if (code.generator(g).weight() >= 3) {
            return true;
        }
    }
    return false;
}

std::vector<size_t> zero_based(std::initializer_list<size_t> one_based) {
    std::vector<size_t> out;
    for (size_t q : one_based) {
        out.push_back(q - 1);
    }
    return out;
}

std::vector<size_t> flag_order(const CssCode &code, size_t g) {
    if (code.name() == "shor913") {
        for (const auto &spec : default_parallel_groups(code)) {
            for (size_t i = 0; i < spec.orders.size(); i++) {
                if (spec.generators[i] == g) {
                    return spec.orders[i];
                }
            }
        }
    }
    return {};
}

}  // namespace

SchemeKind parse_scheme_kind(std::string_view s) {
    if (s == "flag") {
        return SchemeKind::Flag;
    }
    if (s == "parallel") {
        return SchemeKind::Parallel;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(s) + "'; expected flag or parallel");
}

const char *scheme_kind_name(SchemeKind k) {
    return k == SchemeKind::Flag ? "flag" : "parallel";
}

void Followup::add(Circuit c) {
    compiled.emplace_back(c);
    generators |= compiled.back().measured_generators();
    circuits.push_back(std::move(c));
}

std::string Scheme::id() const {
    return code->name() + "_" + scheme_kind_name(kind);
}

std::vector<size_t> Scheme::gadgets_on_side(GadgetSide side) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < gadgets.size(); i++) {
        if (gadgets[i].side == side) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<GroupSpec> default_parallel_groups(const CssCode &code) {
    if (code.name() == "shor913") {
        return {
            GroupSpec{{0, 1, 2, 3, 4, 5}, {}},
            GroupSpec{{6, 7}, {zero_based({1, 3, 5, 4, 2, 6}), zero_based({7, 9, 5, 8, 6, 4})}},
        };
    }
    if (code.name() == "rm1513") {
        return {
            GroupSpec{{0, 5, 9}, {}},
            GroupSpec{{1, 4, 7}, {}},
            GroupSpec{{2, 6}, {}},
            GroupSpec{{3, 8}, {}},
            GroupSpec{{10, 11, 12, 13}, {}},
        };
    }
    throw std::invalid_argument("no shared-flag grouping defined for code " + code.name());
}

Circuit parallel_422_circuit() {
    return parse_circuit(kParallel422);
}

std::vector<Circuit> parallel_steane_circuits() {
    return {parse_circuit(kSteaneParallelA), parse_circuit(kSteaneParallelB)};
}

Scheme build_parallel_scheme(CodePtr code, const std::vector<GroupSpec> &groups) {
    Scheme s;
    s.code = code;
    s.kind = SchemeKind::Parallel;
    for (const auto &spec : groups) {
        s.gadgets.push_back(make_gadget(group_circuit(*code, spec, needs_flag(*code, spec)), *code, false));
        Circuit bare = group_circuit(*code, spec, false);
        PauliType t = code->generator_type(spec.generators.at(0));
        (t == PauliType::X ? s.x_extraction : s.z_extraction).add(bare);
        s.complete.add(bare);
    }
    if (code->name() == "shor913") {
        s.census_followups = FollowupMultiplicity{0, 2, 2};
    }
    return s;
}

Scheme build_scheme(CodePtr code, SchemeKind kind) {
    const CssCode &c = *code;
    if (kind == SchemeKind::Flag) {
        Scheme s;
        s.code = code;
        s.kind = kind;
        s.detection_only = c.d() < 3;
        for (size_t g = 0; g < c.num_generators(); g++) {
            int32_t tag = static_cast<int32_t>(g);
            Circuit circ = c.generator(g).weight() >= 3 ? build_flagged(c.generator(g), tag, flag_order(c, g))
                                                         : build_unflagged(c.generator(g), tag);
            s.gadgets.push_back(make_gadget(std::move(circ), c, false));
            Circuit bare = build_unflagged(c.generator(g), tag);
            (c.generator_type(g) == PauliType::X ? s.x_extraction : s.z_extraction).add(bare);
            s.complete.add(bare);
        }
        if (c.name() == "steane713") {
            s.census_followups = FollowupMultiplicity{9, 0, 0};
        } else if (c.name() == "shor913") {
            s.census_followups = FollowupMultiplicity{0, 5, 2};
        }
        return s;
    }
    if (c.name() == "422") {
        Scheme s;
        s.code = code;
        s.kind = kind;
        s.detection_only = true;
        s.gadgets.push_back(make_gadget(parallel_422_circuit(), c, true));
        return s;
    }
    if (c.name() == "steane713") {
        Scheme s;
        s.code = code;
        s.kind = kind;
        for (auto &part : parallel_steane_circuits()) {
            s.gadgets.push_back(make_gadget(part, c, true));
            s.complete.add(part);
        }
        s.census_followups = FollowupMultiplicity{2, 0, 0};
        return s;
    }
    return build_parallel_scheme(code, default_parallel_groups(c));
}

Circuit build_exrec_cnot(const Scheme &scheme) {
    size_t n = scheme.code->n();
    Circuit ex(2 * n);
    std::vector<uint32_t> maps[2];
    for (uint32_t b = 0; b < 2; b++) {
        for (uint32_t q = 0; q < n; q++) {
            maps[b].push_back(static_cast<uint32_t>(b * n + q));
        }
    }
    auto ec = [&](uint32_t b) {
        for (const auto &g : scheme.gadgets) {
            ex.append(g.circuit, maps[b]);
        }
    };
    ec(0);
    ec(1);
    std::vector<Gate> layer;
    for (uint32_t q = 0; q < n; q++) {
        layer.push_back(Gate{GateKind::CNOT, q, static_cast<uint32_t>(n + q)});
    }
    ex.append_step(layer);
    ec(0);
    ec(1);
    ex.set_name(scheme.id() + "_exrec_cnot");
    return ex;
}

LocationCensus exrec_census(const Scheme &scheme, bool include_conditional_unflagged) {
    LocationCensus total = census(build_exrec_cnot(scheme));
    if (include_conditional_unflagged) {
        auto sum = [](const Followup &f) {
            LocationCensus c;
            for (const auto &circ : f.circuits) {
                c += census(circ);
            }
            return c;
        };
        const auto &m = scheme.census_followups;
        LocationCensus per_ec = sum(scheme.complete).scaled(m.complete);
        per_ec += sum(scheme.z_extraction).scaled(m.z_only);
        per_ec += sum(scheme.x_extraction).scaled(m.x_only);
        total += per_ec.scaled(4);
    }
    return total;
}

}  // namespace flagshare
