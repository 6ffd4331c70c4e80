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

#include "flagshare/decode.h"

#include <stdexcept>

#include "json.hpp"

namespace flagshare {

Procedure parse_procedure(std::string_view s) {
    if (s == "alg1") {
        return Procedure::Alg1;
    }
    if (s == "alg3") {
        return Procedure::Alg3;
    }
    if (s == "alg4") {
        return Procedure::Alg4;
    }
    if (s == "alg4-complete" || s == "alg4c") {
        return Procedure::Alg4Complete;
    }
    if (s == "detect") {
        return Procedure::Detect;
    }
    throw std::invalid_argument("unknown procedure '" + std::string(s) +
                                "'; expected alg1, alg3, alg4, alg4-complete or detect");
}

const char *procedure_name(Procedure p) {
    switch (p) {
        case Procedure::Alg1:
            return "alg1";
        case Procedure::Alg3:
            return "alg3";
        case Procedure::Alg4:
            return "alg4";
        case Procedure::Alg4Complete:
            return "alg4-complete";
        case Procedure::Detect:
            return "detect";
    }
    return "?";
}

PauliMask to_mask(const PauliOperator &p) {
    return PauliMask{to_mask(p.x_bits()), to_mask(p.z_bits())};
}

PauliOperator to_pauli(const PauliMask &m, size_t n) {
    return from_masks(m.x, m.z, n);
}

DecoderTables::DecoderTables(CodePtr code) : code_(std::move(code)) {
    const CssCode &c = *code_;
    if (c.n() > 64) {
        throw DimensionError("decoder tables support at most 64 data qubits");
    }
    for (PauliType measured : {PauliType::Z, PauliType::X}) {
        size_t count = c.indices(measured).size();
        if (count > 20) {
            throw DimensionError("LOOKUP(0) supports at most 20 generators of one type");
        }
        auto &fix = measured == PauliType::Z ? x_fix_ : z_fix_;
        auto &defined = measured == PauliType::Z ? x_defined_ : z_defined_;
        fix.assign(size_t{1} << count, 0);
        defined.assign(size_t{1} << count, 0);
        defined[0] = 1;
        PauliType err = opposite(measured);
        auto consider = [&](uint64_t support) {
            PauliMask m;
            (err == PauliType::X ? m.x : m.z) = support;
            uint64_t s = c.type_syndrome(to_pauli(m, c.n()), measured);
            if (!defined[s]) {
                defined[s] = 1;
                fix[s] = support;
            }
        };
        for (size_t a = 0; a < c.n(); a++) {
            consider(uint64_t{1} << a);
        }
        for (size_t a = 0; a < c.n(); a++) {
            for (size_t b = a + 1; b < c.n(); b++) {
                consider((uint64_t{1} << a) | (uint64_t{1} << b));
            }
        }
    }
}

uint64_t DecoderTables::compact(uint64_t gen_bits, PauliType t) const {
    uint64_t out = 0;
    const auto &idx = code_->indices(t);
    for (size_t i = 0; i < idx.size(); i++) {
        out |= ((gen_bits >> idx[i]) & 1) << i;
    }
    return out;
}

PauliMask DecoderTables::lookup0(uint64_t gen_bits, PauliType measured) const {
    uint64_t s = compact(gen_bits, measured);
    PauliMask m;
    if (measured == PauliType::Z) {
        m.x = x_fix_[s];
    } else {
        m.z = z_fix_[s];
    }
    return m;
}

PauliMask DecoderTables::lookup0(uint64_t gen_bits) const {
    PauliMask m = lookup0(gen_bits, PauliType::Z);
    m ^= lookup0(gen_bits, PauliType::X);
    return m;
}

bool DecoderTables::lookup0_defined(uint64_t gen_bits, PauliType measured) const {
    uint64_t s = compact(gen_bits, measured);
    return (measured == PauliType::Z ? x_defined_ : z_defined_)[s] != 0;
}

std::optional<PauliMask> DecoderTables::lookup_flag(const FlagKey &k) const {
    auto it = flag_.find(k);
    if (it == flag_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void DecoderTables::set_flag(const FlagKey &k, PauliMask correction) {
    flag_[k] = correction;
}

std::string DecodeOutcome::to_json() const {
    nlohmann::json j;
    j["action"] = action == DecodeAction::NoOp ? "no-op" : (action == DecodeAction::Discard ? "discard" : "correction");
    j["correction_x"] = correction.x;
    j["correction_z"] = correction.z;
    std::string f;
    if (followups & kFollowX) {
        f += "X";
    }
    if (followups & kFollowZ) {
        f += "Z";
    }
    if (followups & kFollowComplete) {
        f += "complete";
    }
    j["followups"] = f.empty() ? "none" : f;
    j["lookup_miss"] = lookup_miss;
    j["trace"] = trace;
    j["outcomes"] = outcomes;
    return j.dump();
}

namespace {

PauliMask restrict_part(const PauliMask &m, LookupPart part) {
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

uint8_t followup_bit(PauliType measured) {
    return measured == PauliType::X ? kFollowX : kFollowZ;
}

void correct(DecodeOutcome &out, RoundDriver &driver, const PauliMask &c) {
    if (!c.is_identity()) {
        driver.apply_correction(c);
        out.correction ^= c;
        out.action = DecodeAction::Correction;
    }
}

/// Flag-table correction with LOOKUP(0) fallback on a miss.
PauliMask flag_correction(DecodeOutcome &out, const DecoderTables &tables, RoundDriver &driver, const FlagKey &key,
                          LookupPart part, uint64_t syndrome, std::optional<PauliType> measured) {
    driver.note_flag_lookup(key, part);
    if (auto hit = tables.lookup_flag(key)) {
        return restrict_part(*hit, part);
    }
    out.lookup_miss = true;
    return measured ? tables.lookup0(syndrome, *measured) : tables.lookup0(syndrome);
}

std::string gadget_label(size_t i) {
    return "gadget" + std::to_string(i);
}

struct SideResult {
    uint64_t flags = 0;
    uint64_t syndrome = 0;
};

SideResult run_side(const Scheme &scheme, GadgetSide side, RoundDriver &driver, DecodeOutcome &out) {
    SideResult r;
    size_t offset = 0;
    for (size_t i : scheme.gadgets_on_side(side)) {
        const auto &g = scheme.gadgets[i];
        uint64_t o = driver.run_gadget(i);
        out.outcomes.push_back(o);
        r.flags |= g.compiled.flag_bits(o) << offset;
        offset += std::popcount(g.compiled.flag_mask());
        r.syndrome |= g.compiled.generator_bits(o);
    }
    return r;
}

GadgetSide side_of(PauliType t) {
    return t == PauliType::X ? GadgetSide::X : GadgetSide::Z;
}

}  // namespace

bool procedure_supported(const Scheme &scheme, Procedure p) {
    if (scheme.detection_only) {
        return p == Procedure::Detect;
    }
    return true;
}

Procedure effective_procedure(const Scheme &scheme, Procedure p) {
    if (p == Procedure::Detect || p == Procedure::Alg1) {
        return p;
    }
    if (!scheme.gadgets_on_side(GadgetSide::Mixed).empty()) {
        return Procedure::Alg1;
    }
    return p;
}

DecodeOutcome decode_detect(const Scheme &scheme, RoundDriver &driver) {
    DecodeOutcome out;
    for (size_t i = 0; i < scheme.gadgets.size(); i++) {
        uint64_t o = driver.run_gadget(i);
        out.outcomes.push_back(o);
        if (o) {
            out.action = DecodeAction::Discard;
            out.trace.push_back(gadget_label(i) + ":nonzero");
        }
    }
    return out;
}

DecodeOutcome decode_alg1(const Scheme &scheme, const DecoderTables &tables, RoundDriver &driver) {
    DecodeOutcome out;
    for (size_t i = 0; i < scheme.gadgets.size(); i++) {
        const auto &g = scheme.gadgets[i];
        uint64_t o = driver.run_gadget(i);
        out.outcomes.push_back(o);
        uint64_t flags = g.self_flagging ? o : g.compiled.flag_bits(o);
        if (flags) {
            uint64_t s = driver.run_followup(scheme.complete);
            out.followups |= kFollowComplete;
            out.trace.push_back(gadget_label(i) + ":flag");
            FlagKey key{static_cast<uint32_t>(i), flags, s};
            correct(out, driver, flag_correction(out, tables, driver, key, LookupPart::Both, s, std::nullopt));
            return out;
        }
        if (g.compiled.generator_bits(o)) {
            uint64_t s = driver.run_followup(scheme.complete);
            out.followups |= kFollowComplete;
            out.trace.push_back(gadget_label(i) + ":syndrome");
            correct(out, driver, tables.lookup0(s));
            return out;
        }
    }
    out.trace.push_back("clean");
    return out;
}

DecodeOutcome decode_alg3(const Scheme &scheme, const DecoderTables &tables, RoundDriver &driver, int cycle_parity) {
    DecodeOutcome out;
    PauliType first = cycle_parity ? PauliType::Z : PauliType::X;
    PauliType second = opposite(first);

    SideResult a = run_side(scheme, side_of(first), driver, out);
    if (a.flags) {
        PauliType measured = opposite(first);
        uint64_t s = driver.run_followup(scheme.followup_measuring(measured));
        out.followups |= followup_bit(measured);
        out.trace.push_back(std::string(1, type_char(first)) + ":flag");
        FlagKey key{first == PauliType::X ? kContextXSide : kContextZSide, a.flags, s};
        LookupPart part = first == PauliType::X ? LookupPart::X : LookupPart::Z;
        correct(out, driver, flag_correction(out, tables, driver, key, part, s, measured));
        return out;
    }
    if (a.syndrome) {
        uint64_t s = driver.run_followup(scheme.complete);
        out.followups |= kFollowComplete;
        out.trace.push_back(std::string(1, type_char(first)) + ":syndrome");
        correct(out, driver, tables.lookup0(s));
        return out;
    }
    SideResult b = run_side(scheme, side_of(second), driver, out);
    if (b.flags) {
        PauliType measured = opposite(second);
        uint64_t s = driver.run_followup(scheme.followup_measuring(measured));
        out.followups |= followup_bit(measured);
        out.trace.push_back(std::string(1, type_char(second)) + ":flag");
        FlagKey key{second == PauliType::X ? kContextXSide : kContextZSide, b.flags, s};
        LookupPart part = second == PauliType::X ? LookupPart::X : LookupPart::Z;
        correct(out, driver, flag_correction(out, tables, driver, key, part, s, measured));
        return out;
    }
    if (b.syndrome) {
        uint64_t s = driver.run_followup(scheme.followup_measuring(second));
        out.followups |= followup_bit(second);
        out.trace.push_back(std::string(1, type_char(second)) + ":syndrome");
        correct(out, driver, tables.lookup0(s, second));
        return out;
    }
    out.trace.push_back("clean");
    return out;
}

DecodeOutcome decode_alg4(const Scheme &scheme, const DecoderTables &tables, RoundDriver &driver,
                          bool complete_variant, int cycle_parity) {
    DecodeOutcome out;
    PauliType first = cycle_parity ? PauliType::Z : PauliType::X;
    for (PauliType t : {first, opposite(first)}) {
        SideResult r = run_side(scheme, side_of(t), driver, out);
        std::string label(1, type_char(t));
        if (r.flags) {
            PauliType measured = opposite(t);
            uint64_t s = driver.run_followup(scheme.followup_measuring(measured));
            out.followups |= followup_bit(measured);
            out.trace.push_back(label + ":flag");
            FlagKey key{t == PauliType::X ? kContextXSide : kContextZSide, r.flags, s};
            LookupPart part = t == PauliType::X ? LookupPart::X : LookupPart::Z;
            correct(out, driver, flag_correction(out, tables, driver, key, part, s, measured));
        } else if (r.syndrome) {
            out.trace.push_back(label + ":syndrome");
            if (complete_variant) {
                uint64_t s = driver.run_followup(scheme.complete);
                out.followups |= kFollowComplete;
                correct(out, driver, tables.lookup0(s));
            } else {
                uint64_t s = driver.run_followup(scheme.followup_measuring(t));
                out.followups |= followup_bit(t);
                correct(out, driver, tables.lookup0(s, t));
            }
        }
    }
    if (out.trace.empty()) {
        out.trace.push_back("clean");
    }
    return out;
}

DecodeOutcome decode_round(const Scheme &scheme, const DecoderTables &tables, const DecoderConfig &config,
                           RoundDriver &driver) {
    if (!procedure_supported(scheme, config.procedure)) {
        throw std::invalid_argument(std::string("procedure ") + procedure_name(config.procedure) +
                                    " is not available for scheme " + scheme.id());
    }
    switch (effective_procedure(scheme, config.procedure)) {
        case Procedure::Alg1:
            return decode_alg1(scheme, tables, driver);
        case Procedure::Alg3:
            return decode_alg3(scheme, tables, driver, config.cycle_parity);
        case Procedure::Alg4:
            return decode_alg4(scheme, tables, driver, false, config.cycle_parity);
        case Procedure::Alg4Complete:
            return decode_alg4(scheme, tables, driver, true, config.cycle_parity);
        case Procedure::Detect:
            return decode_detect(scheme, driver);
    }
    return {};
}

}  // namespace flagshare
