#pragma once

#include "qarith/adders.hpp"

namespace qarith {

enum class ComparatorVariant { TWO_ADDER, CDKPM_HALF, GIDNEY_HALF, DRAPER };

inline const char* comparator_variant_name(ComparatorVariant v) {
    switch (v) {
        case ComparatorVariant::TWO_ADDER: return "two-adder";
        case ComparatorVariant::CDKPM_HALF: return "cdkpm";
        case ComparatorVariant::GIDNEY_HALF: return "gidney";
        case ComparatorVariant::DRAPER: return "draper";
    }
    return "?";
}

namespace emit {

// t ^= [first > second] (optionally c * [first > second]).
// Half-subtractor ladder: the adjoint unmajority gates accumulate the borrow
// chain of (second - first) on the first-register wires; the mirrored ladder
// restores everything.
inline GateSeq cdkpm_compare(uint32_t carry_anc, const std::vector<uint32_t>& F,
                             const std::vector<uint32_t>& S, uint32_t t,
                             std::optional<uint32_t> ctrl) {
    const size_t n = F.size();
    if (S.size() != n) throw std::invalid_argument("cdkpm_compare: width mismatch");
    GateSeq s;
    auto cw = [&](size_t i) { return i == 0 ? carry_anc : F[i - 1]; };
    for (size_t i = 0; i < n; ++i) {
        GateSeq blk;
        uma2_dagger(blk, cw(i), S[i], F[i]);
        add_seq(s, tagged("UMA", blk));
    }
    if (ctrl)
        add(s, Gate::toffoli(*ctrl, F[n - 1], t));
    else
        add(s, Gate::cnot(F[n - 1], t));
    for (size_t i = n; i-- > 0;) {
        GateSeq blk;
        uma2(blk, cw(i), S[i], F[i]);
        add_seq(s, tagged("UMA", blk));
    }
    return s;
}

// Same map via temporary logical-ANDs; n Toffoli, n ancillas, and the
// unwinding half erases every AND by measurement (n MEASURE gates).
inline GateSeq gidney_compare(const std::vector<uint32_t>& F, const std::vector<uint32_t>& S,
                              uint32_t t, const std::vector<uint32_t>& g,
                              std::optional<uint32_t> ctrl, CircuitBuilder& b) {
    const size_t n = F.size();
    if (S.size() != n || g.size() != n) throw std::invalid_argument("gidney_compare: bad widths");
    GateSeq s;
    for (size_t i = 0; i < n; ++i) {
        GateSeq blk;
        add(blk, Gate::x(S[i]));
        if (i > 0) {
            add(blk, Gate::cnot(g[i - 1], S[i]));
            add(blk, Gate::cnot(g[i - 1], F[i]));
        }
        temp_and(blk, F[i], S[i], g[i]);
        if (i > 0) add(blk, Gate::cnot(g[i - 1], g[i]));
        add_seq(s, tagged("MAJ", blk));
    }
    if (ctrl)
        add(s, Gate::toffoli(*ctrl, g[n - 1], t));
    else
        add(s, Gate::cnot(g[n - 1], t));
    for (size_t i = n; i-- > 0;) {
        GateSeq blk;
        if (i > 0) add(blk, Gate::cnot(g[i - 1], g[i]));
        temp_and_uncompute(blk, b, F[i], S[i], g[i]);
        if (i > 0) {
            add(blk, Gate::cnot(g[i - 1], F[i]));
            add(blk, Gate::cnot(g[i - 1], S[i]));
        }
        add(blk, Gate::x(S[i]));
        add_seq(s, tagged("UMA", blk));
    }
    return s;
}

// Draper/Beauregard comparator interior: assumes SW = S extended by an
// overflow qubit already holding the second operand. t ^= [first > second].
inline GateSeq draper_compare(const std::vector<uint32_t>& F, const std::vector<uint32_t>& SW,
                              uint32_t t) {
    GateSeq s;
    add_seq(s, tagged("QFT", qft_seq(SW, false)));
    add_seq(s, tagged("Phi_SUB", phi_add_seq(F, SW, -1)));
    add_seq(s, tagged("IQFT", qft_seq(SW, true)));
    add(s, Gate::cnot(SW.back(), t));
    add_seq(s, tagged("QFT", qft_seq(SW, false)));
    add_seq(s, tagged("Phi_ADD", phi_add_seq(F, SW, +1)));
    add_seq(s, tagged("IQFT", qft_seq(SW, true)));
    return s;
}

}  // namespace emit

// |x>|y>|t> -> |x>|y>|t ^ [x > y]>
inline Circuit build_comparator(ComparatorVariant variant, uint32_t n,
                                AdderVariant two_adder_base = AdderVariant::CDKPM) {
    if (n == 0) throw std::invalid_argument("comparator width must be >= 1");
    Semantic sem{"comp-gt", n};
    switch (variant) {
        case ComparatorVariant::CDKPM_HALF: {
            CircuitBuilder b(2 * n + 2);
            uint32_t q = 0;
            std::vector<uint32_t> X(n), Y(n);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            uint32_t t = q++, carry = q++;
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Input, Y);
            b.add_register("t", RegRole::TargetBit, {t});
            b.add_register("carry", RegRole::Ancilla, {carry});
            emit::append_to(b, emit::cdkpm_compare(carry, X, Y, t, std::nullopt));
            b.set_semantic(sem);
            return b.seal();
        }
        case ComparatorVariant::GIDNEY_HALF: {
            CircuitBuilder b(3 * n + 1);
            uint32_t q = 0;
            std::vector<uint32_t> X(n), Y(n), G(n);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            uint32_t t = q++;
            for (auto& w : G) w = q++;
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Input, Y);
            b.add_register("t", RegRole::TargetBit, {t});
            b.add_register("and", RegRole::Ancilla, G);
            emit::append_to(b, emit::gidney_compare(X, Y, t, G, std::nullopt, b));
            b.set_semantic(sem);
            return b.seal();
        }
        case ComparatorVariant::DRAPER: {
            CircuitBuilder b(2 * n + 2);
            uint32_t q = 0;
            std::vector<uint32_t> X(n), Y(n);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            uint32_t t = q++, ovf = q++;
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Input, Y);
            b.add_register("t", RegRole::TargetBit, {t});
            b.add_register("ovf", RegRole::Ancilla, {ovf});
            std::vector<uint32_t> SW = Y;
            SW.push_back(ovf);
            emit::append_to(b, emit::draper_compare(X, SW, t));
            b.set_semantic(sem);
            return b.seal();
        }
        case ComparatorVariant::TWO_ADDER: {
            // Subtract, copy the sign, add back.
            Circuit adder = build_plain_adder(two_adder_base, n);
            const uint32_t extra = adder.num_qubits();  // t appended after adder wires
            CircuitBuilder b(extra + 1);
            for (const Register& r : adder.registers()) {
                if (r.name == "y") {
                    std::vector<uint32_t> low(r.qubits.begin(), r.qubits.end() - 1);
                    b.add_register("y", RegRole::Input, low);
                    b.add_register("ovf", RegRole::Ancilla, {r.qubits.back()});
                } else {
                    b.add_register(r.name, r.role, r.qubits);
                }
            }
            uint32_t t = extra;
            b.add_register("t", RegRole::TargetBit, {t});
            GateSeq s;
            emit::add_seq(s, Circuit::dagger_gates(adder.gates()));
            emit::add(s, Gate::cnot(adder.reg("y").qubits.back(), t));
            emit::add_seq(s, adder.gates());
            emit::append_to(b, s);
            b.set_semantic(sem);
            return b.seal();
        }
    }
    throw std::logic_error("unreachable");
}

// |c>|x>|y>|t> -> |c>|x>|y>|t ^ c*[x > y]>
inline Circuit build_controlled_comparator(ComparatorVariant variant, uint32_t n) {
    if (n == 0) throw std::invalid_argument("comparator width must be >= 1");
    Semantic sem{"ctrl-comp-gt", n};
    sem.controlled = true;
    switch (variant) {
        case ComparatorVariant::CDKPM_HALF: {
            CircuitBuilder b(2 * n + 3);
            uint32_t q = 0;
            uint32_t c = q++;
            std::vector<uint32_t> X(n), Y(n);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            uint32_t t = q++, carry = q++;
            b.add_register("c", RegRole::Control, {c});
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Input, Y);
            b.add_register("t", RegRole::TargetBit, {t});
            b.add_register("carry", RegRole::Ancilla, {carry});
            emit::append_to(b, emit::cdkpm_compare(carry, X, Y, t, c));
            b.set_semantic(sem);
            return b.seal();
        }
        case ComparatorVariant::GIDNEY_HALF: {
            CircuitBuilder b(3 * n + 2);
            uint32_t q = 0;
            uint32_t c = q++;
            std::vector<uint32_t> X(n), Y(n), G(n);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            uint32_t t = q++;
            for (auto& w : G) w = q++;
            b.add_register("c", RegRole::Control, {c});
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Input, Y);
            b.add_register("t", RegRole::TargetBit, {t});
            b.add_register("and", RegRole::Ancilla, G);
            emit::append_to(b, emit::gidney_compare(X, Y, t, G, c, b));
            b.set_semantic(sem);
            return b.seal();
        }
        default:
            throw std::invalid_argument("controlled comparator: unsupported variant");
    }
}

// |x>|t> -> |x>|t ^ [x < a]>
inline Circuit build_const_comparator(ComparatorVariant variant, uint32_t n, const BitString& a) {
    if (a.width() != n) throw std::invalid_argument("constant width mismatch");
    Semantic sem{"const-comp-lt", n};
    sem.a = a.to_uint();
    if (variant == ComparatorVariant::DRAPER) {
        CircuitBuilder b(n + 2);
        uint32_t q = 0;
        std::vector<uint32_t> X(n);
        for (auto& w : X) w = q++;
        uint32_t t = q++, ovf = q++;
        b.add_register("x", RegRole::Input, X);
        b.add_register("t", RegRole::TargetBit, {t});
        b.add_register("ovf", RegRole::Ancilla, {ovf});
        std::vector<uint32_t> XW = X;
        XW.push_back(ovf);
        GateSeq s;
        emit::add_seq(s, emit::tagged("QFT", emit::qft_seq(XW, false)));
        emit::add_seq(s, emit::tagged("Phi_SUB_CONST", emit::phi_add_const_seq(XW, a.to_uint(), -1)));
        emit::add_seq(s, emit::tagged("IQFT", emit::qft_seq(XW, true)));
        emit::add(s, Gate::cnot(ovf, t));
        emit::add_seq(s, emit::tagged("QFT", emit::qft_seq(XW, false)));
        emit::add_seq(s, emit::tagged("Phi_ADD_CONST", emit::phi_add_const_seq(XW, a.to_uint(), +1)));
        emit::add_seq(s, emit::tagged("IQFT", emit::qft_seq(XW, true)));
        emit::append_to(b, s);
        b.set_semantic(sem);
        return b.seal();
    }
    // LOAD template: write a into a scratch register and compare [a > x].
    const bool gidney = (variant == ComparatorVariant::GIDNEY_HALF);
    const uint32_t extra = gidney ? n : 1;
    CircuitBuilder b(n + 1 + n + extra);
    uint32_t q = 0;
    std::vector<uint32_t> X(n), A(n), W(extra);
    for (auto& w : X) w = q++;
    uint32_t t = q++;
    for (auto& w : A) w = q++;
    for (auto& w : W) w = q++;
    b.add_register("x", RegRole::Input, X);
    b.add_register("t", RegRole::TargetBit, {t});
    b.add_register("load", RegRole::Ancilla, A);
    b.add_register(gidney ? "and" : "carry", RegRole::Ancilla, W);
    GateSeq s;
    emit::add_seq(s, emit::load_const(A, a.to_uint(), std::nullopt, "LOAD"));
    if (gidney)
        emit::add_seq(s, emit::gidney_compare(A, X, t, W, std::nullopt, b));
    else
        emit::add_seq(s, emit::cdkpm_compare(W[0], A, X, t, std::nullopt));
    emit::add_seq(s, emit::load_const(A, a.to_uint(), std::nullopt, "UNLOAD"));
    emit::append_to(b, s);
    b.set_semantic(sem);
    return b.seal();
}

// |c>|x>|t> -> |c>|x>|t ^ c*[x < a]>. Loads c*a; with c = 0 the comparison
// [0 > x] never fires, so the copy-out needs no extra control.
inline Circuit build_ctrl_const_comparator(ComparatorVariant variant, uint32_t n,
                                           const BitString& a) {
    if (a.width() != n) throw std::invalid_argument("constant width mismatch");
    Semantic sem{"ctrl-const-comp-lt", n};
    sem.a = a.to_uint();
    sem.controlled = true;
    if (variant == ComparatorVariant::DRAPER) {
        CircuitBuilder b(n + 3);
        uint32_t q = 0;
        uint32_t c = q++;
        std::vector<uint32_t> X(n);
        for (auto& w : X) w = q++;
        uint32_t t = q++, ovf = q++;
        b.add_register("c", RegRole::Control, {c});
        b.add_register("x", RegRole::Input, X);
        b.add_register("t", RegRole::TargetBit, {t});
        b.add_register("ovf", RegRole::Ancilla, {ovf});
        std::vector<uint32_t> XW = X;
        XW.push_back(ovf);
        GateSeq s;
        emit::add_seq(s, emit::tagged("QFT", emit::qft_seq(XW, false)));
        emit::add_seq(s, emit::tagged("C_Phi_SUB_CONST",
                                      emit::phi_add_const_seq(XW, a.to_uint(), -1, c)));
        emit::add_seq(s, emit::tagged("IQFT", emit::qft_seq(XW, true)));
        emit::add(s, Gate::cnot(ovf, t));
        emit::add_seq(s, emit::tagged("QFT", emit::qft_seq(XW, false)));
        emit::add_seq(s, emit::tagged("C_Phi_ADD_CONST",
                                      emit::phi_add_const_seq(XW, a.to_uint(), +1, c)));
        emit::add_seq(s, emit::tagged("IQFT", emit::qft_seq(XW, true)));
        emit::append_to(b, s);
        b.set_semantic(sem);
        return b.seal();
    }
    const bool gidney = (variant == ComparatorVariant::GIDNEY_HALF);
    const uint32_t extra = gidney ? n : 1;
    CircuitBuilder b(1 + n + 1 + n + extra);
    uint32_t q = 0;
    uint32_t c = q++;
    std::vector<uint32_t> X(n), A(n), W(extra);
    for (auto& w : X) w = q++;
    uint32_t t = q++;
    for (auto& w : A) w = q++;
    for (auto& w : W) w = q++;
    b.add_register("c", RegRole::Control, {c});
    b.add_register("x", RegRole::Input, X);
    b.add_register("t", RegRole::TargetBit, {t});
    b.add_register("load", RegRole::Ancilla, A);
    b.add_register(gidney ? "and" : "carry", RegRole::Ancilla, W);
    GateSeq s;
    emit::add_seq(s, emit::load_const(A, a.to_uint(), c, "LOAD"));
    if (gidney)
        emit::add_seq(s, emit::gidney_compare(A, X, t, W, std::nullopt, b));
    else
        emit::add_seq(s, emit::cdkpm_compare(W[0], A, X, t, std::nullopt));
    emit::add_seq(s, emit::load_const(A, a.to_uint(), c, "UNLOAD"));
    emit::append_to(b, s);
    b.set_semantic(sem);
    return b.seal();
}

// Postcomposes an X on the target, turning a strict comparison into its
// complementary non-strict one.
inline Circuit invert_comparison(const Circuit& c) {
    static const std::map<std::string, std::string> flips = {
        {"comp-gt", "comp-le"},           {"comp-le", "comp-gt"},
        {"const-comp-lt", "const-comp-ge"}, {"const-comp-ge", "const-comp-lt"},
    };
    auto it = flips.find(c.semantic().op);
    if (it == flips.end())
        throw std::invalid_argument("invert_comparison: circuit is not a comparator");
    std::vector<Gate> gates = c.gates();
    gates.push_back(Gate::x(c.reg("t").qubits[0]));
    Semantic sem = c.semantic();
    sem.op = it->second;
    return c.with_gates(std::move(gates)).with_semantic(sem);
}

}  // namespace qarith
