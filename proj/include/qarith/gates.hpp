#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qarith {

// Gate vocabulary. Rotations are restricted to dyadic angles
// theta = s * 2*pi * m / 2^k, which covers every circuit here (QFT ladders
// and the merged constant-addition rotations) exactly. Cond is a block of
// gates executed when a classical bit, written by an earlier Measure, is 1.
// TagOpen/TagClose are zero-width markers delimiting named blocks (QFT, MAJ,
// UNCOMPUTE, ...) so the resource estimator can count at block granularity.
enum class GateKind {
    X,
    H,
    Cnot,
    Cz,
    Toffoli,
    Rot,
    CRot,
    Measure,
    Cond,
    TagOpen,
    TagClose,
};

inline const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "x";
        case GateKind::H: return "h";
        case GateKind::Cnot: return "cnot";
        case GateKind::Cz: return "cz";
        case GateKind::Toffoli: return "toffoli";
        case GateKind::Rot: return "rot";
        case GateKind::CRot: return "crot";
        case GateKind::Measure: return "measure";
        case GateKind::Cond: return "cond";
        case GateKind::TagOpen:
        case GateKind::TagClose: return "tag";
    }
    return "?";
}

struct Gate {
    GateKind kind;
    std::vector<uint32_t> qubits;  // control(s) first, target last
    int32_t cbit = -1;             // Measure destination / Cond condition
    int64_t rot_num = 1;           // m
    uint32_t rot_k = 1;            // k, angle denominator 2^k
    int32_t rot_sign = 1;          // s in {+1,-1}
    std::string tag;               // TagOpen/TagClose label
    std::vector<Gate> body;        // Cond contents

    static Gate x(uint32_t q) { return {GateKind::X, {q}}; }
    static Gate h(uint32_t q) { return {GateKind::H, {q}}; }
    static Gate cnot(uint32_t c, uint32_t t) { return {GateKind::Cnot, {c, t}}; }
    static Gate cz(uint32_t a, uint32_t b) { return {GateKind::Cz, {a, b}}; }
    static Gate toffoli(uint32_t c1, uint32_t c2, uint32_t t) {
        return {GateKind::Toffoli, {c1, c2, t}};
    }
    static Gate rot(uint32_t q, int64_t m, uint32_t k, int32_t s) {
        Gate g{GateKind::Rot, {q}};
        g.rot_num = m;
        g.rot_k = k;
        g.rot_sign = s;
        return g;
    }
    static Gate crot(uint32_t c, uint32_t q, int64_t m, uint32_t k, int32_t s) {
        Gate g{GateKind::CRot, {c, q}};
        g.rot_num = m;
        g.rot_k = k;
        g.rot_sign = s;
        return g;
    }
    static Gate measure(uint32_t q, int32_t cbit) {
        Gate g{GateKind::Measure, {q}};
        g.cbit = cbit;
        return g;
    }
    static Gate cond(int32_t cbit, std::vector<Gate> gates) {
        Gate g{GateKind::Cond, {}};
        g.cbit = cbit;
        g.body = std::move(gates);
        return g;
    }
    static Gate tag_open(std::string name) {
        Gate g{GateKind::TagOpen, {}};
        g.tag = std::move(name);
        return g;
    }
    static Gate tag_close(std::string name) {
        Gate g{GateKind::TagClose, {}};
        g.tag = std::move(name);
        return g;
    }
};

// Exact dyadic rational num/2^k, the value domain of expected gate counts
// (each measurement branch weighs 1/2 per nesting level).
struct Dyadic {
    int64_t num = 0;
    uint32_t k = 0;

    Dyadic() = default;
    Dyadic(int64_t n) : num(n), k(0) {}
    Dyadic(int64_t n, uint32_t den_log2) : num(n), k(den_log2) { normalize(); }

    void normalize() {
        while (k > 0 && (num & 1) == 0) {
            num >>= 1;
            --k;
        }
    }

    Dyadic operator+(const Dyadic& o) const {
        uint32_t kk = std::max(k, o.k);
        return Dyadic((num << (kk - k)) + (o.num << (kk - o.k)), kk);
    }
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic operator-(const Dyadic& o) const {
        uint32_t kk = std::max(k, o.k);
        return Dyadic((num << (kk - k)) - (o.num << (kk - o.k)), kk);
    }
    Dyadic halved(uint32_t levels = 1) const { return Dyadic(num, k + levels); }

    bool operator==(const Dyadic& o) const { return num == o.num && k == o.k; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const {
        uint32_t kk = std::max(k, o.k);
        return (num << (kk - k)) < (o.num << (kk - o.k));
    }

    double as_double() const { return static_cast<double>(num) / static_cast<double>(1ULL << k); }

    int64_t denominator() const { return int64_t(1) << k; }

    std::string str() const {
        if (k == 0) return std::to_string(num);
        double v = as_double();
        std::string s = std::to_string(v);
        while (s.size() > 1 && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }
};

}  // namespace qarith
