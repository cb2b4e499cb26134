#pragma once

#include <string>

#include "json.hpp"
#include "qarith/circuit.hpp"

namespace qarith {

using Json = nlohmann::ordered_json;

// Circuit file format, version 1. Field order is deterministic and all
// numbers are integers, so serialize(deserialize(x)) is byte-stable.

namespace detail {

inline Json gate_to_json(const Gate& g) {
    Json j;
    j["kind"] = gate_kind_name(g.kind);
    if (g.kind == GateKind::TagOpen) {
        j["tag_open"] = g.tag;
        return j;
    }
    if (g.kind == GateKind::TagClose) {
        j["tag_close"] = g.tag;
        return j;
    }
    j["qubits"] = g.qubits;
    if (g.kind == GateKind::Measure || g.kind == GateKind::Cond) j["cbit"] = g.cbit;
    if (g.kind == GateKind::Rot || g.kind == GateKind::CRot) {
        j["m"] = g.rot_num;
        j["k"] = g.rot_k;
        j["s"] = g.rot_sign;
    }
    if (g.kind == GateKind::Cond) {
        Json body = Json::array();
        for (const Gate& inner : g.body) body.push_back(gate_to_json(inner));
        j["body"] = std::move(body);
    }
    return j;
}

inline Gate gate_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "tag") {
        if (j.contains("tag_open")) return Gate::tag_open(j.at("tag_open").get<std::string>());
        if (j.contains("tag_close")) return Gate::tag_close(j.at("tag_close").get<std::string>());
        throw std::invalid_argument("tag record without tag_open/tag_close");
    }
    Gate g;
    if (kind == "x") g.kind = GateKind::X;
    else if (kind == "h") g.kind = GateKind::H;
    else if (kind == "cnot") g.kind = GateKind::Cnot;
    else if (kind == "cz") g.kind = GateKind::Cz;
    else if (kind == "toffoli") g.kind = GateKind::Toffoli;
    else if (kind == "rot") g.kind = GateKind::Rot;
    else if (kind == "crot") g.kind = GateKind::CRot;
    else if (kind == "measure") g.kind = GateKind::Measure;
    else if (kind == "cond") g.kind = GateKind::Cond;
    else throw std::invalid_argument("unknown gate kind: " + kind);
    g.qubits = j.at("qubits").get<std::vector<uint32_t>>();
    if (j.contains("cbit")) g.cbit = j.at("cbit").get<int32_t>();
    if (g.kind == GateKind::Rot || g.kind == GateKind::CRot) {
        g.rot_num = j.at("m").get<int64_t>();
        g.rot_k = j.at("k").get<uint32_t>();
        g.rot_sign = j.at("s").get<int32_t>();
    }
    if (g.kind == GateKind::Cond)
        for (const Json& inner : j.at("body")) g.body.push_back(gate_from_json(inner));
    return g;
}

inline RegRole role_from_string(const std::string& s) {
    if (s == "input") return RegRole::Input;
    if (s == "output") return RegRole::Output;
    if (s == "ancilla") return RegRole::Ancilla;
    if (s == "control") return RegRole::Control;
    if (s == "target-bit") return RegRole::TargetBit;
    throw std::invalid_argument("unknown register role: " + s);
}

}  // namespace detail

inline Json circuit_to_json(const Circuit& c) {
    Json j;
    j["version"] = 1;
    j["num_qubits"] = c.num_qubits();
    j["num_cbits"] = c.num_cbits();
    Json regs = Json::array();
    for (const Register& r : c.registers()) {
        Json jr;
        jr["name"] = r.name;
        jr["role"] = reg_role_name(r.role);
        jr["qubits"] = r.qubits;
        regs.push_back(std::move(jr));
    }
    j["registers"] = std::move(regs);
    Json sem;
    sem["op"] = c.semantic().op;
    sem["n"] = c.semantic().n;
    if (c.semantic().p) sem["p"] = *c.semantic().p;
    if (c.semantic().a) sem["a"] = *c.semantic().a;
    if (c.semantic().controlled) sem["controlled"] = true;
    if (c.semantic().mbu) sem["mbu"] = true;
    j["semantic"] = std::move(sem);
    Json gates = Json::array();
    for (const Gate& g : c.gates()) gates.push_back(detail::gate_to_json(g));
    j["gates"] = std::move(gates);
    return j;
}

inline std::string serialize(const Circuit& c) { return circuit_to_json(c).dump(2) + "\n"; }

// Throws nlohmann::json::parse_error (carries the byte offset) on malformed
// input and std::invalid_argument on schema violations.
inline Circuit deserialize(const std::string& bytes) {
    Json j = Json::parse(bytes);
    if (!j.contains("version") || j.at("version").get<int>() != 1)
        throw std::invalid_argument("unsupported circuit file version");
    const auto nq = j.at("num_qubits").get<uint32_t>();
    const auto nc = j.at("num_cbits").get<uint32_t>();
    std::vector<Register> regs;
    for (const Json& jr : j.at("registers")) {
        regs.push_back(Register{jr.at("name").get<std::string>(),
                                detail::role_from_string(jr.at("role").get<std::string>()),
                                jr.at("qubits").get<std::vector<uint32_t>>()});
    }
    Semantic sem;
    const Json& js = j.at("semantic");
    sem.op = js.at("op").get<std::string>();
    sem.n = js.at("n").get<uint32_t>();
    if (js.contains("p")) sem.p = js.at("p").get<uint64_t>();
    if (js.contains("a")) sem.a = js.at("a").get<uint64_t>();
    if (js.contains("controlled")) sem.controlled = js.at("controlled").get<bool>();
    if (js.contains("mbu")) sem.mbu = js.at("mbu").get<bool>();
    std::vector<Gate> gates;
    for (const Json& jg : j.at("gates")) gates.push_back(detail::gate_from_json(jg));

    // Replay through a builder so a hand-edited file gets the same checks as
    // a programmatic one.
    CircuitBuilder b(nq, nc);
    for (auto& r : regs) b.add_register(r.name, r.role, r.qubits);
    for (auto& g : gates) {
        if (g.kind == GateKind::TagOpen) b.open_tag(g.tag);
        else if (g.kind == GateKind::TagClose) b.close_tag(g.tag);
        else b.append(std::move(g));
    }
    b.set_semantic(sem);
    return b.seal();
}

}  // namespace qarith
