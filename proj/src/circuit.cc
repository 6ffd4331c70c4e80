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

#include "flagshare/circuit.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flagshare {

const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::PrepZ:
            return "PZ";
        case GateKind::PrepX:
            return "PX";
        case GateKind::CNOT:
            return "CX";
        case GateKind::SWAP:
            return "SWAP";
        case GateKind::MeasZ:
            return "MZ";
        case GateKind::MeasX:
            return "MX";
        case GateKind::Idle:
            return "I";
    }
    return "?";
}

const char *location_kind_name(LocationKind k) {
    switch (k) {
        case LocationKind::Prep:
            return "prep";
        case LocationKind::MeasX:
            return "meas_x";
        case LocationKind::MeasZ:
            return "meas_z";
        case LocationKind::Cnot:
            return "cnot";
        case LocationKind::Swap:
            return "swap";
        case LocationKind::Idle:
            return "idle";
        case LocationKind::Single:
            return "single";
    }
    return "?";
}

LocationKind location_kind(GateKind k) {
    switch (k) {
        case GateKind::PrepZ:
        case GateKind::PrepX:
            return LocationKind::Prep;
        case GateKind::CNOT:
            return LocationKind::Cnot;
        case GateKind::SWAP:
            return LocationKind::Swap;
        case GateKind::MeasZ:
            return LocationKind::MeasZ;
        case GateKind::MeasX:
            return LocationKind::MeasX;
        case GateKind::Idle:
            return LocationKind::Idle;
    }
    return LocationKind::Single;
}

LocationCensus &LocationCensus::operator+=(const LocationCensus &o) {
    prep += o.prep;
    meas_x += o.meas_x;
    meas_z += o.meas_z;
    cnot += o.cnot;
    idle += o.idle;
    swap += o.swap;
    return *this;
}

LocationCensus LocationCensus::scaled(size_t factor) const {
    LocationCensus r;
    r.prep = prep * factor;
    r.meas_x = meas_x * factor;
    r.meas_z = meas_z * factor;
    r.cnot = cnot * factor;
    r.idle = idle * factor;
    r.swap = swap * factor;
    return r;
}

Circuit::Circuit(size_t num_data) : num_data_(num_data), roles_(num_data, QubitRole::Data) {
}

uint32_t Circuit::add_qubit(QubitRole role) {
    if (role == QubitRole::Data) {
        throw std::invalid_argument("data qubits are fixed at construction");
    }
    roles_.push_back(role);
    return static_cast<uint32_t>(roles_.size() - 1);
}

size_t Circuit::num_gates() const {
    size_t total = 0;
    for (const auto &s : steps_) {
        total += s.size();
    }
    return total;
}

void Circuit::append_step(std::vector<Gate> gates) {
    if (gates.empty()) {
        throw std::invalid_argument("empty timestep");
    }
    std::vector<bool> used(num_qubits(), false);
    auto touch = [&](uint32_t q) {
        if (q >= num_qubits()) {
            throw std::invalid_argument("gate on qubit " + std::to_string(q) + " outside register");
        }
        if (used[q]) {
            throw std::invalid_argument(
                "qubit " + std::to_string(q) + " used twice in step " + std::to_string(steps_.size()));
        }
        used[q] = true;
    };
    for (const auto &g : gates) {
        touch(g.a);
        if (is_two_qubit(g.kind)) {
            touch(g.b);
        }
    }
    steps_.push_back(std::move(gates));
}

void Circuit::fill_idles() {
    for (auto &step : steps_) {
        bool unitary = std::any_of(step.begin(), step.end(), [](const Gate &g) { return is_two_qubit(g.kind); });
        if (!unitary) {
            continue;
        }
        std::vector<bool> used(num_qubits(), false);
        for (const auto &g : step) {
            used[g.a] = true;
            if (is_two_qubit(g.kind)) {
                used[g.b] = true;
            }
        }
        for (uint32_t q = 0; q < num_qubits(); q++) {
            if (!used[q]) {
                step.push_back(Gate{GateKind::Idle, q});
            }
        }
    }
}

void Circuit::append(const Circuit &sub, std::span<const uint32_t> data_map) {
    if (data_map.size() != sub.num_data()) {
        throw DimensionError("data map size does not match sub-circuit");
    }
    std::vector<uint32_t> map(sub.num_qubits());
    for (uint32_t q = 0; q < sub.num_qubits(); q++) {
        if (q < sub.num_data()) {
            if (data_map[q] >= num_data_) {
                throw DimensionError("data map points outside data register");
            }
            map[q] = data_map[q];
        } else {
            map[q] = add_qubit(sub.role(q));
        }
    }
    for (const auto &step : sub.steps()) {
        std::vector<Gate> gates;
        for (Gate g : step) {
            g.a = map[g.a];
            if (is_two_qubit(g.kind)) {
                g.b = map[g.b];
            }
            gates.push_back(g);
        }
        append_step(std::move(gates));
    }
}

std::vector<Location> Circuit::locations() const {
    std::vector<Location> out;
    for (size_t s = 0; s < steps_.size(); s++) {
        for (size_t g = 0; g < steps_[s].size(); g++) {
            out.push_back(Location{s, g, location_kind(steps_[s][g].kind)});
        }
    }
    return out;
}

std::vector<MeasurementInfo> Circuit::measurements() const {
    std::vector<MeasurementInfo> out;
    for (size_t s = 0; s < steps_.size(); s++) {
        for (size_t g = 0; g < steps_[s].size(); g++) {
            const Gate &gate = steps_[s][g];
            if (is_measurement(gate.kind)) {
                out.push_back(
                    MeasurementInfo{s, g, gate.a, gate.kind == GateKind::MeasX, roles_[gate.a], gate.tag});
            }
        }
    }
    return out;
}

Circuit Circuit::without_flags() const {
    Circuit out(num_data_);
    out.name_ = name_;
    std::vector<int64_t> map(num_qubits(), -1);
    for (uint32_t q = 0; q < num_qubits(); q++) {
        if (q < num_data_) {
            map[q] = q;
        } else if (roles_[q] != QubitRole::Flag) {
            map[q] = out.add_qubit(roles_[q]);
        }
    }
    for (const auto &step : steps_) {
        std::vector<Gate> gates;
        bool real = false;
        for (Gate g : step) {
            if (map[g.a] < 0 || (is_two_qubit(g.kind) && map[g.b] < 0)) {
                continue;
            }
            g.a = static_cast<uint32_t>(map[g.a]);
            if (is_two_qubit(g.kind)) {
                g.b = static_cast<uint32_t>(map[g.b]);
            }
            real = real || g.kind != GateKind::Idle;
            gates.push_back(g);
        }
        if (real) {
            out.append_step(std::move(gates));
        }
    }
    return out;
}

LocationCensus census(const Circuit &c) {
    LocationCensus r;
    for (const auto &step : c.steps()) {
        for (const auto &g : step) {
            switch (location_kind(g.kind)) {
                case LocationKind::Prep:
                    r.prep++;
                    break;
                case LocationKind::MeasX:
                    r.meas_x++;
                    break;
                case LocationKind::MeasZ:
                    r.meas_z++;
                    break;
                case LocationKind::Cnot:
                    r.cnot++;
                    break;
                case LocationKind::Swap:
                    r.swap++;
                    break;
                case LocationKind::Idle:
                    r.idle++;
                    break;
                case LocationKind::Single:
                    break;
            }
        }
    }
    return r;
}

namespace {

PauliType checked_type(const PauliOperator &g) {
    if (g.is_identity()) {
        throw std::invalid_argument("cannot measure the identity");
    }
    if (g.is_x_type()) {
        return PauliType::X;
    }
    if (g.is_z_type()) {
        return PauliType::Z;
    }
    throw std::invalid_argument("generator " + g.str() + " is not of pure X or Z type");
}

std::vector<size_t> checked_order(const PauliOperator &g, std::vector<size_t> order) {
    auto support = g.support();
    if (order.empty()) {
        return support;
    }
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != support) {
        throw std::invalid_argument("CNOT order is not a permutation of the support of " + g.str());
    }
    return order;
}

std::string member_name(const std::vector<GroupMember> &group) {
    std::string s = "C(";
    for (size_t i = 0; i < group.size(); i++) {
        if (i) {
            s += ",";
        }
        s += "g" + std::to_string(group[i].gen_index + 1);
    }
    return s + ")";
}

}  // namespace

Circuit build_shared_flag(const std::vector<GroupMember> &group, bool with_flag) {
    if (group.empty()) {
        throw std::invalid_argument("empty stabilizer group");
    }
    size_t n = group[0].g.num_qubits();
    PauliType type = checked_type(group[0].g);
    std::vector<std::vector<size_t>> orders;
    for (const auto &m : group) {
        if (m.g.num_qubits() != n) {
            throw DimensionError("group members act on different registers");
        }
        if (checked_type(m.g) != type) {
            throw std::invalid_argument("shared-flag group mixes X-type and Z-type generators");
        }
        orders.push_back(checked_order(m.g, m.order));
        if (orders.back().size() < 2) {
            throw std::invalid_argument("generator " + m.g.str() + " has weight below 2");
        }
    }

    Circuit c(n);
    std::vector<uint32_t> anc;
    for (size_t i = 0; i < group.size(); i++) {
        anc.push_back(c.add_qubit(QubitRole::Ancilla));
    }
    uint32_t flag = with_flag ? c.add_qubit(QubitRole::Flag) : 0;
    bool z_type = type == PauliType::Z;

    std::vector<Gate> preps;
    for (uint32_t a : anc) {
        preps.push_back(Gate{z_type ? GateKind::PrepZ : GateKind::PrepX, a});
    }
    if (with_flag) {
        preps.push_back(Gate{z_type ? GateKind::PrepX : GateKind::PrepZ, flag});
    }
    c.append_step(preps);

    std::vector<std::vector<Gate>> seqs(group.size());
    for (size_t i = 0; i < group.size(); i++) {
        auto data_gate = [&](size_t d) {
            uint32_t q = static_cast<uint32_t>(d);
            return z_type ? Gate{GateKind::CNOT, q, anc[i]} : Gate{GateKind::CNOT, anc[i], q};
        };
        auto flag_gate = [&] {
            return z_type ? Gate{GateKind::CNOT, flag, anc[i]} : Gate{GateKind::CNOT, anc[i], flag};
        };
        const auto &ord = orders[i];
        for (size_t k = 0; k < ord.size(); k++) {
            if (with_flag && k == ord.size() - 1) {
                seqs[i].push_back(flag_gate());
            }
            seqs[i].push_back(data_gate(ord[k]));
            if (with_flag && k == 0) {
                seqs[i].push_back(flag_gate());
            }
        }
    }

    std::vector<Gate> flat;
    size_t longest = 0;
    for (const auto &s : seqs) {
        longest = std::max(longest, s.size());
    }
    for (size_t k = 0; k < longest; k++) {
        for (const auto &s : seqs) {
            if (k < s.size()) {
                flat.push_back(s[k]);
            }
        }
    }

    std::vector<size_t> ready(c.num_qubits(), 0);
    std::vector<std::vector<Gate>> layers;
    for (const auto &g : flat) {
        size_t t = std::max(ready[g.a], ready[g.b]);
        if (layers.size() <= t) {
            layers.resize(t + 1);
        }
        layers[t].push_back(g);
        ready[g.a] = ready[g.b] = t + 1;
    }
    for (auto &layer : layers) {
        c.append_step(std::move(layer));
    }

    std::vector<Gate> meas;
    for (size_t i = 0; i < group.size(); i++) {
        meas.push_back(Gate{z_type ? GateKind::MeasZ : GateKind::MeasX, anc[i], 0, group[i].gen_index});
    }
    if (with_flag) {
        meas.push_back(Gate{z_type ? GateKind::MeasX : GateKind::MeasZ, flag, 0, 0});
    }
    c.append_step(meas);
    c.fill_idles();
    c.set_name(member_name(group));
    return c;
}

Circuit build_unflagged(const PauliOperator &g, int32_t gen_index, std::vector<size_t> order) {
    return build_shared_flag({GroupMember{g, gen_index, std::move(order)}}, false);
}

Circuit build_flagged(const PauliOperator &g, int32_t gen_index, std::vector<size_t> order) {
    checked_type(g);
    if (g.weight() < 3) {
        throw std::invalid_argument(
            "flagged extraction needs weight >= 3; use build_unflagged for " + g.str());
    }
    return build_shared_flag({GroupMember{g, gen_index, std::move(order)}}, true);
}

std::string format_circuit(const Circuit &c) {
    std::ostringstream out;
    out << "circuit " << (c.name().empty() ? "unnamed" : c.name()) << "\n";
    out << "data " << c.num_data() << "\n";
    for (QubitRole role : {QubitRole::Ancilla, QubitRole::Flag}) {
        std::vector<uint32_t> qs;
        for (uint32_t q = 0; q < c.num_qubits(); q++) {
            if (c.role(q) == role) {
                qs.push_back(q);
            }
        }
        if (!qs.empty()) {
            out << (role == QubitRole::Ancilla ? "ancilla" : "flag");
            for (uint32_t q : qs) {
                out << " " << q;
            }
            out << "\n";
        }
    }
    for (const auto &step : c.steps()) {
        for (size_t i = 0; i < step.size(); i++) {
            const Gate &g = step[i];
            if (i) {
                out << "; ";
            }
            out << gate_name(g.kind) << " " << g.a;
            if (is_two_qubit(g.kind)) {
                out << " " << g.b;
            }
            if (is_measurement(g.kind) && g.tag >= 0) {
                out << " " << (c.role(g.a) == QubitRole::Flag ? 'f' : 'g') << g.tag;
            }
        }
        out << "\n";
    }
    return out.str();
}

Circuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::string name;
    size_t line_no = 0;
    bool have_data = false;
    std::vector<std::pair<uint32_t, QubitRole>> extra;
    std::vector<std::vector<Gate>> steps;
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + msg);
    };
    size_t num_data = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) {
            continue;
        }
        if (head == "circuit") {
            ls >> name;
            continue;
        }
        if (head == "data") {
            if (!(ls >> num_data)) {
                fail("expected data qubit count");
            }
            have_data = true;
            continue;
        }
        if (head == "ancilla" || head == "flag") {
            uint32_t q;
            while (ls >> q) {
                extra.emplace_back(q, head == "flag" ? QubitRole::Flag : QubitRole::Ancilla);
            }
            continue;
        }
        std::vector<Gate> gates;
        std::stringstream gs(line);
        std::string item;
        while (std::getline(gs, item, ';')) {
            std::istringstream is(item);
            std::string op;
            if (!(is >> op)) {
                continue;
            }
            Gate g{GateKind::Idle, 0};
            if (op == "PZ") {
                g.kind = GateKind::PrepZ;
            } else if (op == "PX") {
                g.kind = GateKind::PrepX;
            } else if (op == "CX") {
                g.kind = GateKind::CNOT;
            } else if (op == "SWAP") {
                g.kind = GateKind::SWAP;
            } else if (op == "MZ") {
                g.kind = GateKind::MeasZ;
            } else if (op == "MX") {
                g.kind = GateKind::MeasX;
            } else if (op == "I") {
                g.kind = GateKind::Idle;
            } else {
                fail("unknown gate '" + op + "'");
            }
            if (!(is >> g.a)) {
                fail("missing qubit for " + op);
            }
            if (is_two_qubit(g.kind) && !(is >> g.b)) {
                fail("missing second qubit for " + op);
            }
            std::string tag;
            if (is_measurement(g.kind) && (is >> tag)) {
                if (tag.size() < 2 || (tag[0] != 'g' && tag[0] != 'f')) {
                    fail("bad measurement tag '" + tag + "'");
                }
                g.tag = std::stoi(tag.substr(1));
            }
            gates.push_back(g);
        }
        steps.push_back(std::move(gates));
    }
    if (!have_data) {
        throw std::invalid_argument("circuit text lacks a 'data' line");
    }
    std::sort(extra.begin(), extra.end());
    Circuit c(num_data);
    for (size_t i = 0; i < extra.size(); i++) {
        if (extra[i].first != num_data + i) {
            throw std::invalid_argument("ancilla/flag qubits must be numbered contiguously after the data qubits");
        }
        c.add_qubit(extra[i].second);
    }
    for (auto &s : steps) {
        c.append_step(std::move(s));
    }
    c.set_name(name == "unnamed" ? "" : name);
    return c;
}

}  // namespace flagshare
