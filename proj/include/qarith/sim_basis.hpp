#pragma once

#include "qarith/gates.hpp"
#include "qarith/sim_common.hpp"

namespace qarith {

// Computational-basis simulator for Toffoli-class circuits.
//
// Each qubit is |0>, |1>, |+> or |->. H moves between the families, so the
// measure-based uncomputation patterns (H; MEASURE; conditional fixup) run
// natively: measuring |+> or |-> is a fair coin, exactly the Bernoulli(1/2)
// the expected-count model assumes. Gates that would entangle a |+>/|-> qubit
// (using it as a control, CZ between two of them) and true rotations are
// rejected with a pointer at the statevector backend. Phases stay global on
// a basis path; they are tracked but not part of the result proper.
class BasisSimulator {
  public:
    enum QState : uint8_t { Zero = 0, One = 1, Plus = 2, Minus = 3 };

    struct Result {
        std::map<std::string, uint64_t> registers;
        std::vector<uint8_t> qubit_values;
        std::vector<uint8_t> cbits;
        Dyadic path_probability{1};
        int global_phase = +1;
        size_t coins_used = 0;
        ExecutedTally executed;
    };

    static Result run(const Circuit& c, const std::map<std::string, uint64_t>& inputs,
                      const MeasurePolicy& policy) {
        BasisSimulator sim(c, policy);
        sim.states_.assign(c.num_qubits(), Zero);
        std::vector<uint32_t> init = resolve_inputs(c, inputs);
        for (uint32_t q = 0; q < c.num_qubits(); ++q) sim.states_[q] = init[q] ? One : Zero;
        sim.cbits_.assign(c.num_cbits(), 0);
        sim.exec(c.gates());
        return sim.finish();
    }

  private:
    BasisSimulator(const Circuit& c, const MeasurePolicy& policy)
        : circuit_(c), policy_(policy), rng_(policy.seed) {}

    static bool is_basis(QState s) { return s == Zero || s == One; }

    int basis_value(uint32_t q, const char* role) const {
        if (!is_basis(states_[q]))
            throw BackendUnsupported(std::string("basis backend: qubit in superposition used as ") +
                                     role + "; use the statevector backend");
        return states_[q] == One ? 1 : 0;
    }

    void apply_x(uint32_t q) {
        switch (states_[q]) {
            case Zero: states_[q] = One; break;
            case One: states_[q] = Zero; break;
            case Plus: break;
            case Minus: phase_ = -phase_; break;
        }
    }

    void apply_z(uint32_t q) {
        switch (states_[q]) {
            case Zero: break;
            case One: phase_ = -phase_; break;
            case Plus: states_[q] = Minus; break;
            case Minus: states_[q] = Plus; break;
        }
    }

    void exec(const std::vector<Gate>& gates) {
        for (const Gate& g : gates) exec_gate(g);
    }

    void exec_gate(const Gate& g) {
        switch (g.kind) {
            case GateKind::TagOpen:
            case GateKind::TagClose:
                return;
            case GateKind::X:
                executed_.bump(GateKind::X);
                apply_x(g.qubits[0]);
                return;
            case GateKind::H: {
                executed_.bump(GateKind::H);
                QState& s = states_[g.qubits[0]];
                switch (s) {
                    case Zero: s = Plus; break;
                    case One: s = Minus; break;
                    case Plus: s = Zero; break;
                    case Minus: s = One; break;
                }
                return;
            }
            case GateKind::Cnot:
                executed_.bump(GateKind::Cnot);
                if (basis_value(g.qubits[0], "a CNOT control")) apply_x(g.qubits[1]);
                return;
            case GateKind::Cz: {
                executed_.bump(GateKind::Cz);
                QState a = states_[g.qubits[0]], b = states_[g.qubits[1]];
                if (is_basis(a)) {
                    if (a == One) apply_z(g.qubits[1]);
                } else if (is_basis(b)) {
                    if (b == One) apply_z(g.qubits[0]);
                } else {
                    throw BackendUnsupported(
                        "basis backend: CZ between two superposed qubits; use the statevector backend");
                }
                return;
            }
            case GateKind::Toffoli:
                executed_.bump(GateKind::Toffoli);
                if (basis_value(g.qubits[0], "a Toffoli control") &&
                    basis_value(g.qubits[1], "a Toffoli control"))
                    apply_x(g.qubits[2]);
                return;
            case GateKind::Rot:
            case GateKind::CRot:
                throw BackendUnsupported(
                    "basis backend: rotation gates are unsupported; use the statevector backend");
            case GateKind::Measure: {
                executed_.bump(GateKind::Measure);
                QState& s = states_[g.qubits[0]];
                int outcome;
                if (is_basis(s)) {
                    // Deterministic: not a branch point, consumes no coin and
                    // no forced entry.
                    outcome = (s == One) ? 1 : 0;
                } else {
                    outcome = next_coin();
                    if (s == Minus && outcome == 1) phase_ = -phase_;
                    path_probability_ = path_probability_.halved();
                }
                s = outcome ? One : Zero;
                cbits_[g.cbit] = static_cast<uint8_t>(outcome);
                return;
            }
            case GateKind::Cond:
                if (cbits_[g.cbit]) exec(g.body);
                return;
        }
    }

    int next_coin() {
        ++coins_used_;
        if (policy_.kind == MeasurePolicy::Kind::Forced) {
            if (forced_pos_ >= policy_.outcomes.size())
                throw std::invalid_argument("forced outcome list too short");
            return policy_.outcomes[forced_pos_++] ? 1 : 0;
        }
        return rng_.coin() ? 1 : 0;
    }

    Result finish() {
        Result r;
        r.qubit_values.assign(circuit_.num_qubits(), 0);
        for (uint32_t q = 0; q < circuit_.num_qubits(); ++q) {
            if (!is_basis(states_[q]))
                throw BackendUnsupported("basis backend: qubit left in superposition at readout");
            r.qubit_values[q] = (states_[q] == One) ? 1 : 0;
        }
        for (const Register& reg : circuit_.registers())
            r.registers[reg.name] = read_register(reg, r.qubit_values);
        r.cbits = cbits_;
        r.path_probability = path_probability_;
        r.global_phase = phase_;
        r.coins_used = coins_used_;
        r.executed = executed_;
        return r;
    }

    const Circuit& circuit_;
    const MeasurePolicy& policy_;
    Rng rng_;
    std::vector<QState> states_;
    std::vector<uint8_t> cbits_;
    Dyadic path_probability_{1};
    int phase_ = +1;
    size_t coins_used_ = 0;
    size_t forced_pos_ = 0;
    ExecutedTally executed_;
};

inline BasisSimulator::Result run_basis(const Circuit& c,
                                        const std::map<std::string, uint64_t>& inputs,
                                        const MeasurePolicy& policy) {
    return BasisSimulator::run(c, inputs, policy);
}

}  // namespace qarith
