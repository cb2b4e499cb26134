#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/rng.hpp"

namespace qarith {

// Measurement outcomes are either drawn from a seeded deterministic stream or
// forced from a list (one entry per genuine coin toss, in execution order),
// which is how the verifier enumerates every execution path.
struct MeasurePolicy {
    enum class Kind { Seeded, Forced };
    Kind kind = Kind::Seeded;
    uint64_t seed = 0;
    std::vector<int> outcomes;

    static MeasurePolicy seeded(uint64_t seed) { return {Kind::Seeded, seed, {}}; }
    static MeasurePolicy forced(std::vector<int> outcomes) {
        return {Kind::Forced, 0, std::move(outcomes)};
    }
};

struct ExecutedTally {
    std::map<GateKind, int64_t> counts;

    void bump(GateKind k) { ++counts[k]; }
    int64_t of(GateKind k) const {
        auto it = counts.find(k);
        return it == counts.end() ? 0 : it->second;
    }
};

class BackendUnsupported : public std::domain_error {
  public:
    explicit BackendUnsupported(const std::string& what) : std::domain_error(what) {}
};

// Shared by both backends: register input handling.
inline std::vector<uint32_t> resolve_inputs(const Circuit& c,
                                            const std::map<std::string, uint64_t>& inputs) {
    std::vector<uint32_t> bits(c.num_qubits(), 0);
    for (const Register& r : c.registers()) {
        auto it = inputs.find(r.name);
        if (r.role == RegRole::Ancilla) {
            if (it != inputs.end() && it->second != 0)
                throw std::invalid_argument("ancilla register " + r.name + " must start at 0");
            continue;
        }
        uint64_t value = 0;
        if (it != inputs.end()) value = it->second;
        if (r.qubits.size() < 64 && (value >> r.qubits.size()) != 0)
            throw std::invalid_argument("value for register " + r.name + " does not fit");
        for (size_t i = 0; i < r.qubits.size(); ++i) bits[r.qubits[i]] = (value >> i) & 1;
    }
    return bits;
}

inline uint64_t read_register(const Register& r, const std::vector<uint8_t>& qubit_values) {
    uint64_t v = 0;
    for (size_t i = 0; i < r.qubits.size(); ++i)
        v |= static_cast<uint64_t>(qubit_values[r.qubits[i]] & 1) << i;
    return v;
}

}  // namespace qarith
