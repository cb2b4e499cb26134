#pragma once

#include "qarith/adders.hpp"

namespace qarith {

// A point in a circuit where a garbage qubit G holds g(support) and a
// self-inverse circuit u_g (mapping |x>|b> -> |x>|b ^ g(x)>) is available to
// erase it. The measurement-based alternative measures G in the X basis and
// runs a correction branch with probability 1/2.
struct MbuSite {
    uint32_t g_qubit;
    GateSeq u_g;
};

namespace detail {

inline bool seq_has_measurement(const GateSeq& s) {
    for (const Gate& g : s)
        if (g.kind == GateKind::Measure || g.kind == GateKind::Cond) return true;
    return false;
}

// G may appear in u_g only as an XOR target (X / CNOT / Toffoli target).
inline void check_xor_target_only(const GateSeq& s, uint32_t g_qubit) {
    for (const Gate& g : s) {
        switch (g.kind) {
            case GateKind::X:
            case GateKind::Cnot:
            case GateKind::Toffoli:
                for (size_t i = 0; i + 1 < g.qubits.size(); ++i)
                    if (g.qubits[i] == g_qubit)
                        throw std::invalid_argument("mbu: u_g uses G as a gate control");
                break;
            case GateKind::Cond:
                check_xor_target_only(g.body, g_qubit);
                break;
            case GateKind::TagOpen:
            case GateKind::TagClose:
                break;
            default:
                for (uint32_t q : g.qubits)
                    if (q == g_qubit)
                        throw std::invalid_argument("mbu: u_g touches G with a non-XOR gate");
        }
    }
}

}  // namespace detail

// Emits the measurement-based uncomputation of G: one H and a computational
// measurement, then (on outcome 1) the correction branch H, u_g, H, X in the
// order of the lemma's proof. Afterwards G is |0> and the support state is
// untouched.
inline GateSeq mbu_uncompute(const MbuSite& site, CircuitBuilder& b, bool phase_exact = false) {
    if (detail::seq_has_measurement(site.u_g) && !phase_exact)
        throw std::invalid_argument(
            "mbu: u_g contains measurements and is not whitelisted as phase-exact");
    detail::check_xor_target_only(site.u_g, site.g_qubit);
    GateSeq s;
    emit::add(s, Gate::h(site.g_qubit));
    int32_t cb = b.alloc_cbit();
    emit::add(s, Gate::measure(site.g_qubit, cb));
    GateSeq branch;
    emit::add(branch, Gate::h(site.g_qubit));
    emit::add_seq(branch, site.u_g);
    emit::add(branch, Gate::h(site.g_qubit));
    emit::add(branch, Gate::x(site.g_qubit));
    GateSeq tagged_cond;
    emit::add(tagged_cond, Gate::tag_open("MBU_BRANCH"));
    emit::add(tagged_cond, Gate::cond(cb, branch));
    emit::add(tagged_cond, Gate::tag_close("MBU_BRANCH"));
    emit::add_seq(s, tagged_cond);
    return s;
}

// Replaces the top-level UNCOMPUTE-tagged block of a built architecture with
// its measurement-based form. The block must target the "flag" register
// (or an explicitly supplied qubit). Wrapping an already wrapped circuit is
// an error.
inline Circuit wrap_final_uncompute(const Circuit& c,
                                    std::optional<uint32_t> g_qubit = std::nullopt,
                                    bool phase_exact = false) {
    if (c.semantic().mbu) throw std::invalid_argument("mbu: circuit is already wrapped");
    uint32_t g = 0;
    if (g_qubit) {
        g = *g_qubit;
    } else {
        const Register* flag = c.find_register("flag");
        if (!flag) throw std::invalid_argument("mbu: no flag register and no explicit target");
        g = flag->qubits[0];
    }

    // Locate exactly one top-level UNCOMPUTE block.
    const auto& gates = c.gates();
    size_t open = gates.size(), close = gates.size();
    int depth = 0;
    int found = 0;
    for (size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].kind == GateKind::TagOpen && gates[i].tag == "UNCOMPUTE" && depth == 0) {
            ++found;
            open = i;
            depth = 1;
            for (size_t j = i + 1; j < gates.size(); ++j) {
                if (gates[j].kind == GateKind::TagOpen && gates[j].tag == "UNCOMPUTE") ++depth;
                if (gates[j].kind == GateKind::TagClose && gates[j].tag == "UNCOMPUTE") {
                    if (--depth == 0) {
                        close = j;
                        break;
                    }
                }
            }
            if (close == gates.size()) throw std::invalid_argument("mbu: unterminated block");
        }
    }
    if (found == 0) throw std::invalid_argument("mbu: no UNCOMPUTE block found");
    if (found > 1) throw std::invalid_argument("mbu: ambiguous UNCOMPUTE blocks");

    MbuSite site{g, GateSeq(gates.begin() + open + 1, gates.begin() + close)};

    CircuitBuilder b(c.num_qubits(), c.num_cbits());
    for (const Register& r : c.registers()) b.add_register(r.name, r.role, r.qubits);
    // Existing cbits stay as they are; the MBU measurement gets a fresh one.
    for (uint32_t i = 0; i < c.num_cbits(); ++i) b.alloc_cbit();
    GateSeq out(gates.begin(), gates.begin() + open);
    emit::add_seq(out, mbu_uncompute(site, b, phase_exact));
    out.insert(out.end(), gates.begin() + close + 1, gates.end());

    emit::append_to(b, out);
    Semantic sem = c.semantic();
    sem.mbu = true;
    b.set_semantic(sem);
    return b.seal();
}

}  // namespace qarith
