#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "qarith/sim_common.hpp"

namespace qarith {

// Dense statevector backend. Exact unitaries, projective measurement with
// renormalization. Meant for small registers (default cap 24 qubits); every
// circuit in this project that needs it fits comfortably.
class StatevectorSimulator {
  public:
    using Amp = std::complex<double>;

    struct Result {
        std::vector<Amp> state;
        std::vector<uint8_t> cbits;
        double outcome_probability = 1.0;  // product of realized branch probabilities
        size_t coins_used = 0;
        ExecutedTally executed;
    };

    static constexpr double kNormTolerance = 1e-12;

    explicit StatevectorSimulator(const Circuit& c, const MeasurePolicy& policy,
                                  uint32_t qubit_cap = 24)
        : circuit_(c), policy_(policy), rng_(policy.seed) {
        if (c.num_qubits() > qubit_cap)
            throw std::invalid_argument("statevector backend: qubit count exceeds cap");
        dim_ = size_t(1) << c.num_qubits();
    }

    Result run(const std::map<std::string, uint64_t>& inputs) {
        std::vector<uint32_t> bits = resolve_inputs(circuit_, inputs);
        size_t index = 0;
        for (uint32_t q = 0; q < circuit_.num_qubits(); ++q)
            if (bits[q]) index |= size_t(1) << q;
        std::vector<Amp> state(dim_, Amp(0, 0));
        state[index] = Amp(1, 0);
        return run_state(std::move(state));
    }

    Result run_state(std::vector<Amp> state) {
        if (state.size() != dim_) throw std::invalid_argument("statevector size mismatch");
        state_ = std::move(state);
        cbits_.assign(circuit_.num_cbits(), 0);
        exec(circuit_.gates());
        check_norm();
        Result r;
        r.state = std::move(state_);
        r.cbits = cbits_;
        r.outcome_probability = outcome_probability_;
        r.coins_used = coins_used_;
        r.executed = executed_;
        return r;
    }

    // Modulus of the amplitude at the basis state described by register values
    // (registers not listed must be zero).
    static double basis_amplitude(const Circuit& c, const Result& r,
                                  const std::map<std::string, uint64_t>& values) {
        size_t index = 0;
        for (const Register& reg : c.registers()) {
            auto it = values.find(reg.name);
            uint64_t v = (it == values.end()) ? 0 : it->second;
            for (size_t i = 0; i < reg.qubits.size(); ++i)
                if ((v >> i) & 1) index |= size_t(1) << reg.qubits[i];
        }
        return std::abs(r.state[index]);
    }

    static double fidelity(const std::vector<Amp>& a, const std::vector<Amp>& b) {
        Amp inner(0, 0);
        for (size_t i = 0; i < a.size(); ++i) inner += std::conj(a[i]) * b[i];
        return std::abs(inner);
    }

  private:
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
                for_pairs(g.qubits[0], [&](Amp& a0, Amp& a1) { std::swap(a0, a1); });
                break;
            case GateKind::H: {
                executed_.bump(GateKind::H);
                const double inv = 1.0 / std::numbers::sqrt2;
                for_pairs(g.qubits[0], [&](Amp& a0, Amp& a1) {
                    Amp t0 = (a0 + a1) * inv, t1 = (a0 - a1) * inv;
                    a0 = t0;
                    a1 = t1;
                });
                break;
            }
            case GateKind::Cnot:
                executed_.bump(GateKind::Cnot);
                controlled_x({g.qubits[0]}, g.qubits[1]);
                break;
            case GateKind::Toffoli:
                executed_.bump(GateKind::Toffoli);
                controlled_x({g.qubits[0], g.qubits[1]}, g.qubits[2]);
                break;
            case GateKind::Cz: {
                executed_.bump(GateKind::Cz);
                const size_t mask = (size_t(1) << g.qubits[0]) | (size_t(1) << g.qubits[1]);
                for (size_t i = 0; i < dim_; ++i)
                    if ((i & mask) == mask) state_[i] = -state_[i];
                break;
            }
            case GateKind::Rot:
            case GateKind::CRot: {
                executed_.bump(g.kind);
                const double theta = g.rot_sign * 2.0 * std::numbers::pi *
                                     static_cast<double>(g.rot_num) /
                                     std::pow(2.0, static_cast<double>(g.rot_k));
                const Amp phase = std::polar(1.0, theta);
                size_t mask = size_t(1) << g.qubits.back();
                if (g.kind == GateKind::CRot) mask |= size_t(1) << g.qubits[0];
                for (size_t i = 0; i < dim_; ++i)
                    if ((i & mask) == mask) state_[i] *= phase;
                break;
            }
            case GateKind::Measure: {
                executed_.bump(GateKind::Measure);
                measure(g.qubits[0], g.cbit);
                break;
            }
            case GateKind::Cond:
                if (cbits_[g.cbit]) exec(g.body);
                return;
        }
        check_norm();
    }

    template <typename F>
    void for_pairs(uint32_t q, F&& f) {
        const size_t bit = size_t(1) << q;
        for (size_t i = 0; i < dim_; ++i)
            if (!(i & bit)) f(state_[i], state_[i | bit]);
    }

    void controlled_x(std::vector<uint32_t> controls, uint32_t target) {
        size_t cmask = 0;
        for (uint32_t c : controls) cmask |= size_t(1) << c;
        const size_t tbit = size_t(1) << target;
        for (size_t i = 0; i < dim_; ++i)
            if ((i & cmask) == cmask && !(i & tbit)) std::swap(state_[i], state_[i | tbit]);
    }

    void measure(uint32_t q, int32_t cbit) {
        const size_t bit = size_t(1) << q;
        double p1 = 0;
        for (size_t i = 0; i < dim_; ++i)
            if (i & bit) p1 += std::norm(state_[i]);
        int outcome;
        if (policy_.kind == MeasurePolicy::Kind::Forced) {
            constexpr double kZeroAmp = 1e-15;
            // Deterministic outcomes are not branch points (mirrors the basis
            // backend), so they consume no forced entry.
            if (p1 > 1.0 - kZeroAmp) {
                outcome = 1;
            } else if (p1 < kZeroAmp) {
                outcome = 0;
            } else {
                ++coins_used_;
                if (forced_pos_ >= policy_.outcomes.size())
                    throw std::invalid_argument("forced outcome list too short");
                outcome = policy_.outcomes[forced_pos_++] ? 1 : 0;
                const double p = outcome ? p1 : 1.0 - p1;
                if (p < kZeroAmp)
                    throw std::invalid_argument("forced measurement outcome has zero amplitude");
            }
        } else {
            ++coins_used_;
            outcome = (rng_.uniform() < p1) ? 1 : 0;
        }
        const double p = outcome ? p1 : 1.0 - p1;
        outcome_probability_ *= p;
        const double scale = 1.0 / std::sqrt(p);
        for (size_t i = 0; i < dim_; ++i) {
            const bool is_one = (i & bit) != 0;
            if (is_one == (outcome == 1))
                state_[i] *= scale;
            else
                state_[i] = Amp(0, 0);
        }
        cbits_[cbit] = static_cast<uint8_t>(outcome);
    }

    void check_norm() {
        double n2 = 0;
        for (const Amp& a : state_) n2 += std::norm(a);
        if (std::abs(n2 - 1.0) > kNormTolerance)
            throw std::runtime_error("statevector norm drifted beyond tolerance");
        // Every gate is exactly unitary, so any sub-tolerance deviation is
        // float noise; rescale so it cannot accumulate over long circuits.
        if (std::abs(n2 - 1.0) > 1e-15) {
            const double scale = 1.0 / std::sqrt(n2);
            for (Amp& a : state_) a *= scale;
        }
    }

    const Circuit& circuit_;
    const MeasurePolicy& policy_;
    Rng rng_;
    size_t dim_;
    std::vector<Amp> state_;
    std::vector<uint8_t> cbits_;
    double outcome_probability_ = 1.0;
    size_t coins_used_ = 0;
    size_t forced_pos_ = 0;
    ExecutedTally executed_;
};

inline StatevectorSimulator::Result run_statevector(const Circuit& c,
                                                    const std::map<std::string, uint64_t>& inputs,
                                                    const MeasurePolicy& policy) {
    StatevectorSimulator sim(c, policy);
    return sim.run(inputs);
}

}  // namespace qarith
