#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "qarith/gates.hpp"

namespace qarith {

enum class RegRole { Input, Output, Ancilla, Control, TargetBit };

inline const char* reg_role_name(RegRole r) {
    switch (r) {
        case RegRole::Input: return "input";
        case RegRole::Output: return "output";
        case RegRole::Ancilla: return "ancilla";
        case RegRole::Control: return "control";
        case RegRole::TargetBit: return "target-bit";
    }
    return "?";
}

struct Register {
    std::string name;
    RegRole role;
    std::vector<uint32_t> qubits;  // index 0 = least significant
};

// What the circuit claims to compute; the verifier picks its oracle from op.
struct Semantic {
    std::string op;  // e.g. "plain-add", "comp-gt", "modadd", ...
    uint32_t n = 0;
    std::optional<uint64_t> p;
    std::optional<uint64_t> a;
    bool controlled = false;
    bool mbu = false;
};

class Circuit;

// Single-owner builder; validation happens on append and seal.
class CircuitBuilder {
  public:
    explicit CircuitBuilder(uint32_t num_qubits, uint32_t num_cbits = 0)
        : num_qubits_(num_qubits), num_cbits_(num_cbits) {}

    uint32_t num_qubits() const { return num_qubits_; }

    const std::vector<uint32_t>& add_register(const std::string& name, RegRole role,
                                              std::vector<uint32_t> qubits) {
        for (uint32_t q : qubits) {
            if (q >= num_qubits_) throw std::out_of_range("register qubit out of range");
            if (!claimed_.insert(q).second)
                throw std::invalid_argument("qubit " + std::to_string(q) + " has two roles");
        }
        registers_.push_back(Register{name, role, std::move(qubits)});
        return registers_.back().qubits;
    }

    // Classical bits grow on demand; sealed num_cbits covers both declared
    // and allocated bits.
    int32_t alloc_cbit() { return next_cbit_++; }

    uint32_t effective_cbits() const {
        return std::max(num_cbits_, static_cast<uint32_t>(next_cbit_));
    }

    void append(Gate g) {
        validate(g, /*inside_cond=*/false);
        gates_.push_back(std::move(g));
    }

    void open_tag(const std::string& name) {
        tag_stack_.push_back(name);
        gates_.push_back(Gate::tag_open(name));
    }

    void close_tag(const std::string& name) {
        if (tag_stack_.empty() || tag_stack_.back() != name)
            throw std::invalid_argument("unbalanced block tag: " + name);
        tag_stack_.pop_back();
        gates_.push_back(Gate::tag_close(name));
    }

    void set_semantic(Semantic s) { semantic_ = std::move(s); }

    Circuit seal();

  private:
    void validate(const Gate& g, bool inside_cond) {
        std::set<uint32_t> seen;
        for (uint32_t q : g.qubits) {
            if (q >= num_qubits_) throw std::out_of_range("qubit index out of range");
            if (!seen.insert(q).second) throw std::invalid_argument("duplicate qubit in gate");
        }
        switch (g.kind) {
            case GateKind::X:
            case GateKind::H:
            case GateKind::Rot:
                if (g.qubits.size() != 1) throw std::invalid_argument("bad operand count");
                break;
            case GateKind::Cnot:
            case GateKind::Cz:
            case GateKind::CRot:
                if (g.qubits.size() != 2) throw std::invalid_argument("bad operand count");
                break;
            case GateKind::Toffoli:
                if (g.qubits.size() != 3) throw std::invalid_argument("bad operand count");
                break;
            case GateKind::Measure:
                if (g.qubits.size() != 1) throw std::invalid_argument("bad operand count");
                if (g.cbit < 0 || g.cbit >= static_cast<int32_t>(effective_cbits()))
                    throw std::out_of_range("cbit out of range");
                written_cbits_.insert(g.cbit);
                break;
            case GateKind::Cond:
                if (g.cbit < 0 || g.cbit >= static_cast<int32_t>(effective_cbits()))
                    throw std::out_of_range("cbit out of range");
                if (!written_cbits_.count(g.cbit))
                    throw std::invalid_argument("cond references cbit with no earlier measure");
                for (const Gate& inner : g.body) validate(inner, true);
                break;
            case GateKind::TagOpen:
            case GateKind::TagClose:
                break;
        }
        if ((g.kind == GateKind::Rot || g.kind == GateKind::CRot) && g.rot_k < 1)
            throw std::invalid_argument("rotation k must be >= 1");
        (void)inside_cond;
    }

    uint32_t num_qubits_;
    uint32_t num_cbits_;
    int32_t next_cbit_ = 0;
    std::vector<Register> registers_;
    std::vector<Gate> gates_;
    std::vector<std::string> tag_stack_;
    std::set<uint32_t> claimed_;
    std::set<int32_t> written_cbits_;
    Semantic semantic_;

    friend class Circuit;
};

// Immutable gate list with register metadata. Share freely across threads.
class Circuit {
  public:
    Circuit() = default;

    uint32_t num_qubits() const { return num_qubits_; }
    uint32_t num_cbits() const { return num_cbits_; }
    const std::vector<Register>& registers() const { return registers_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const Semantic& semantic() const { return semantic_; }

    const Register* find_register(const std::string& name) const {
        for (const auto& r : registers_)
            if (r.name == name) return &r;
        return nullptr;
    }

    const Register& reg(const std::string& name) const {
        const Register* r = find_register(name);
        if (!r) throw std::invalid_argument("no register named " + name);
        return *r;
    }

    // Gate-order-reversed adjoint. Rotations flip sign, everything else in the
    // vocabulary is self-inverse; circuits with measurements have no adjoint
    // (Gidney-style circuits use a dedicated reversed builder instead).
    Circuit dagger() const {
        Circuit out = *this;
        out.gates_ = dagger_gates(gates_);
        out.semantic_.op = invert_op(semantic_.op);
        return out;
    }

    bool has_measurement() const {
        std::function<bool(const std::vector<Gate>&)> scan = [&](const std::vector<Gate>& gs) {
            for (const auto& g : gs) {
                if (g.kind == GateKind::Measure || g.kind == GateKind::Cond) return true;
            }
            return false;
        };
        return scan(gates_);
    }

    static std::vector<Gate> dagger_gates(const std::vector<Gate>& gates) {
        std::vector<Gate> out;
        out.reserve(gates.size());
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
            Gate g = *it;
            switch (g.kind) {
                case GateKind::Measure:
                case GateKind::Cond:
                    throw std::domain_error("dagger of a non-unitary circuit is unsupported");
                case GateKind::Rot:
                case GateKind::CRot:
                    g.rot_sign = -g.rot_sign;
                    break;
                case GateKind::TagOpen:
                    g.kind = GateKind::TagClose;
                    break;
                case GateKind::TagClose:
                    g.kind = GateKind::TagOpen;
                    break;
                default:
                    break;
            }
            out.push_back(std::move(g));
        }
        return out;
    }

    static std::string invert_op(const std::string& op) {
        const std::string suffix = "-dagger";
        if (op.size() > suffix.size() && op.compare(op.size() - suffix.size(), suffix.size(), suffix) == 0)
            return op.substr(0, op.size() - suffix.size());
        return op + suffix;
    }

    // Rebuilds with a different gate list; register/semantic metadata kept.
    Circuit with_gates(std::vector<Gate> gates) const {
        Circuit out = *this;
        out.gates_ = std::move(gates);
        return out;
    }

    Circuit with_semantic(Semantic s) const {
        Circuit out = *this;
        out.semantic_ = std::move(s);
        return out;
    }

  private:
    uint32_t num_qubits_ = 0;
    uint32_t num_cbits_ = 0;
    std::vector<Register> registers_;
    std::vector<Gate> gates_;
    Semantic semantic_;

    friend class CircuitBuilder;
    friend Circuit make_circuit_unchecked(uint32_t, uint32_t, std::vector<Register>,
                                          std::vector<Gate>, Semantic);
};

inline Circuit CircuitBuilder::seal() {
    if (!tag_stack_.empty())
        throw std::invalid_argument("unbalanced block tag: " + tag_stack_.back());
    Circuit c;
    c.num_qubits_ = num_qubits_;
    c.num_cbits_ = effective_cbits();
    c.registers_ = std::move(registers_);
    c.gates_ = std::move(gates_);
    c.semantic_ = std::move(semantic_);
    return c;
}

// Used by the deserializer, which re-runs builder validation itself.
inline Circuit make_circuit_unchecked(uint32_t nq, uint32_t nc, std::vector<Register> regs,
                                      std::vector<Gate> gates, Semantic sem) {
    Circuit c;
    c.num_qubits_ = nq;
    c.num_cbits_ = nc;
    c.registers_ = std::move(regs);
    c.gates_ = std::move(gates);
    c.semantic_ = std::move(sem);
    return c;
}

}  // namespace qarith
