#pragma once

#include <optional>

#include "qarith/bitstring.hpp"
#include "qarith/circuit.hpp"

namespace qarith {

enum class AdderVariant { VBE, CDKPM, GIDNEY, DRAPER };

enum class ControlledStrategy {
    GENERIC_LOAD,
    GENERIC_LOAD_MBU,
    GIDNEY_CTRL,
    CDKPM_CUMA,
    DRAPER_CENTRAL,
    DRAPER_1ANC,
};

enum class SubtractMethod { Adjoint, OnesComplementWrap, TwosComplementAdd };

inline const char* adder_variant_name(AdderVariant v) {
    switch (v) {
        case AdderVariant::VBE: return "vbe";
        case AdderVariant::CDKPM: return "cdkpm";
        case AdderVariant::GIDNEY: return "gidney";
        case AdderVariant::DRAPER: return "draper";
    }
    return "?";
}

using GateSeq = std::vector<Gate>;

namespace emit {

inline void add(GateSeq& s, Gate g) { s.push_back(std::move(g)); }

inline void add_seq(GateSeq& s, const GateSeq& other) {
    s.insert(s.end(), other.begin(), other.end());
}

inline GateSeq tagged(const std::string& tag, GateSeq inner) {
    GateSeq out;
    out.reserve(inner.size() + 2);
    out.push_back(Gate::tag_open(tag));
    add_seq(out, inner);
    out.push_back(Gate::tag_close(tag));
    return out;
}

inline void append_to(CircuitBuilder& b, const GateSeq& seq) {
    for (const Gate& g : seq) {
        if (g.kind == GateKind::TagOpen) b.open_tag(g.tag);
        else if (g.kind == GateKind::TagClose) b.close_tag(g.tag);
        else b.append(g);
    }
}

// |c,y,x> -> |c^x, y^x, maj(x,y,c)>
inline void maj(GateSeq& s, uint32_t c, uint32_t y, uint32_t x) {
    add(s, Gate::cnot(x, y));
    add(s, Gate::cnot(x, c));
    add(s, Gate::toffoli(c, y, x));
}

// Inverse of maj plus the sum write, 2-CNOT version.
inline void uma2(GateSeq& s, uint32_t c, uint32_t y, uint32_t x) {
    add(s, Gate::toffoli(c, y, x));
    add(s, Gate::cnot(x, c));
    add(s, Gate::cnot(c, y));
}

// 3-CNOT version of the unmajority gate (same map, different internals).
inline void uma3(GateSeq& s, uint32_t c, uint32_t y, uint32_t x) {
    add(s, Gate::x(y));
    add(s, Gate::cnot(c, y));
    add(s, Gate::toffoli(c, y, x));
    add(s, Gate::x(y));
    add(s, Gate::cnot(x, c));
    add(s, Gate::cnot(x, y));
}

// Adjoint of uma2: computes the borrow chain of (y - x) on the x wire.
inline void uma2_dagger(GateSeq& s, uint32_t c, uint32_t y, uint32_t x) {
    add(s, Gate::cnot(c, y));
    add(s, Gate::cnot(x, c));
    add(s, Gate::toffoli(c, y, x));
}

// VBE |c,x,y,cout> -> |c, x, y^x, cout ^ maj(x,y,c)>
inline void carry(GateSeq& s, uint32_t c, uint32_t x, uint32_t y, uint32_t cout) {
    add(s, Gate::toffoli(x, y, cout));
    add(s, Gate::cnot(x, y));
    add(s, Gate::toffoli(c, y, cout));
}

inline void carry_dagger(GateSeq& s, uint32_t c, uint32_t x, uint32_t y, uint32_t cout) {
    add(s, Gate::toffoli(c, y, cout));
    add(s, Gate::cnot(x, y));
    add(s, Gate::toffoli(x, y, cout));
}

// VBE |c,x,y> -> |c, x, y^c^x>
inline void vbe_sum(GateSeq& s, uint32_t c, uint32_t x, uint32_t y) {
    add(s, Gate::cnot(x, y));
    add(s, Gate::cnot(c, y));
}

inline void temp_and(GateSeq& s, uint32_t x, uint32_t y, uint32_t anc) {
    add(s, Gate::toffoli(x, y, anc));
}

// Gidney's measurement-based erasure of a temporary logical-AND. The
// conditional X returns the measured ancilla to |0> so the audit holds.
inline void temp_and_uncompute(GateSeq& s, CircuitBuilder& b, uint32_t x, uint32_t y,
                               uint32_t anc) {
    add(s, Gate::h(anc));
    int32_t cb = b.alloc_cbit();
    add(s, Gate::measure(anc, cb));
    add(s, Gate::cond(cb, {Gate::cz(x, y), Gate::x(anc)}));
}

// --- CDKPM ripple adder: W[0..m] += A[0..m-1], carries ripple on A wires. ---
// carry_anc must enter as |0> and is restored.
inline GateSeq cdkpm_add(uint32_t carry_anc, const std::vector<uint32_t>& A,
                         const std::vector<uint32_t>& W) {
    const size_t m = A.size();
    if (W.size() != m + 1) throw std::invalid_argument("cdkpm_add: target must be one wider");
    GateSeq s;
    auto cw = [&](size_t i) { return i == 0 ? carry_anc : A[i - 1]; };
    for (size_t i = 0; i < m; ++i) {
        GateSeq blk;
        maj(blk, cw(i), W[i], A[i]);
        add_seq(s, tagged("MAJ", blk));
    }
    add(s, Gate::cnot(A[m - 1], W[m]));
    for (size_t i = m; i-- > 0;) {
        GateSeq blk;
        uma2(blk, cw(i), W[i], A[i]);
        add_seq(s, tagged("UMA", blk));
    }
    return s;
}

// --- VBE adder with an explicit carry register C[0..m-1]. ---
inline GateSeq vbe_add(const std::vector<uint32_t>& C, const std::vector<uint32_t>& A,
                       const std::vector<uint32_t>& W) {
    const size_t m = A.size();
    if (W.size() != m + 1 || C.size() != m) throw std::invalid_argument("vbe_add: bad widths");
    GateSeq s;
    for (size_t i = 0; i < m; ++i) {
        GateSeq blk;
        carry(blk, C[i], A[i], W[i], i + 1 < m ? C[i + 1] : W[m]);
        add_seq(s, tagged("CARRY", blk));
    }
    add(s, Gate::cnot(A[m - 1], W[m - 1]));
    {
        GateSeq blk;
        vbe_sum(blk, C[m - 1], A[m - 1], W[m - 1]);
        add_seq(s, tagged("SUM", blk));
    }
    for (size_t i = m - 1; i-- > 0;) {
        GateSeq blk;
        carry_dagger(blk, C[i], A[i], W[i], C[i + 1]);
        add_seq(s, tagged("CARRY", blk));
        GateSeq sm;
        vbe_sum(sm, C[i], A[i], W[i]);
        add_seq(s, tagged("SUM", sm));
    }
    return s;
}

// --- Gidney temp-AND adder: W[0..m] += A[0..m-1]. ---
// anc[0..m-1] hold the carries; every one is erased by measurement, so the
// sequence contains m measurements and their conditional fixups.
inline GateSeq gidney_add(const std::vector<uint32_t>& A, const std::vector<uint32_t>& W,
                          const std::vector<uint32_t>& anc, CircuitBuilder& b) {
    const size_t m = A.size();
    if (W.size() != m + 1 || anc.size() != m) throw std::invalid_argument("gidney_add: bad widths");
    GateSeq s;
    for (size_t i = 0; i < m; ++i) {
        GateSeq blk;
        if (i > 0) {
            add(blk, Gate::cnot(anc[i - 1], A[i]));
            add(blk, Gate::cnot(anc[i - 1], W[i]));
        }
        temp_and(blk, A[i], W[i], anc[i]);
        if (i > 0) add(blk, Gate::cnot(anc[i - 1], anc[i]));
        add_seq(s, tagged("MAJ", blk));
    }
    add(s, Gate::cnot(anc[m - 1], W[m]));
    for (size_t i = m; i-- > 0;) {
        GateSeq blk;
        if (i > 0) add(blk, Gate::cnot(anc[i - 1], anc[i]));
        temp_and_uncompute(blk, b, A[i], W[i], anc[i]);
        if (i > 0) add(blk, Gate::cnot(anc[i - 1], A[i]));
        add(blk, Gate::cnot(A[i], W[i]));
        add_seq(s, tagged("UMA", blk));
    }
    return s;
}

// --- Gidney-style subtractor: W[0..m] -= A[0..m-1] (two's complement wrap).
// This is the "swap the roles of computation and uncomputation" direction:
// borrows are computed into fresh ANDs and erased by measurement.
inline GateSeq gidney_sub(const std::vector<uint32_t>& A, const std::vector<uint32_t>& W,
                          const std::vector<uint32_t>& g, CircuitBuilder& b) {
    const size_t m = A.size();
    if (W.size() != m + 1 || g.size() != m) throw std::invalid_argument("gidney_sub: bad widths");
    GateSeq s;
    for (size_t i = 0; i < m; ++i) {
        GateSeq blk;
        add(blk, Gate::x(W[i]));
        if (i > 0) {
            add(blk, Gate::cnot(g[i - 1], W[i]));
            add(blk, Gate::cnot(g[i - 1], A[i]));
        }
        temp_and(blk, A[i], W[i], g[i]);
        if (i > 0) add(blk, Gate::cnot(g[i - 1], g[i]));
        add_seq(s, tagged("MAJ", blk));
    }
    add(s, Gate::cnot(g[m - 1], W[m]));
    for (size_t i = m; i-- > 0;) {
        GateSeq blk;
        if (i > 0) add(blk, Gate::cnot(g[i - 1], g[i]));
        temp_and_uncompute(blk, b, A[i], W[i], g[i]);
        if (i > 0) add(blk, Gate::cnot(g[i - 1], A[i]));
        add(blk, Gate::cnot(A[i], W[i]));
        add(blk, Gate::x(W[i]));
        add_seq(s, tagged("UMA", blk));
    }
    return s;
}

// --- QFT family (no swaps; qubit i of phi(y) carries exp(2 pi i y / 2^(i+1))).
inline GateSeq qft_seq(const std::vector<uint32_t>& q, bool inverse) {
    GateSeq s;
    const size_t m = q.size();
    for (size_t i = m; i-- > 0;) {
        add(s, Gate::h(q[i]));
        for (size_t j = i; j-- > 0;)
            add(s, Gate::crot(q[j], q[i], 1, static_cast<uint32_t>(i - j + 1), +1));
    }
    if (inverse) {
        GateSeq rev;
        for (auto it = s.rbegin(); it != s.rend(); ++it) {
            Gate g = *it;
            if (g.kind == GateKind::CRot) g.rot_sign = -g.rot_sign;
            rev.push_back(std::move(g));
        }
        return rev;
    }
    return s;
}

// Phi-basis register addition: |x>|phi(w)> -> |x>|phi(w + sign*x)>.
inline GateSeq phi_add_seq(const std::vector<uint32_t>& X, const std::vector<uint32_t>& Y,
                           int sign) {
    GateSeq s;
    const size_t n = X.size();
    if (Y.size() != n + 1) throw std::invalid_argument("phi_add: target must be one wider");
    for (size_t i = 0; i < Y.size(); ++i)
        for (size_t j = 0; j <= std::min(i, n - 1); ++j)
            add(s, Gate::crot(X[j], Y[i], 1, static_cast<uint32_t>(i - j + 1), sign));
    return s;
}

// Constant phi-addition: merged rotation U_{a,i} on each target qubit, one
// record per qubit with numerator a mod 2^(i+1) reduced to odd.
inline GateSeq phi_add_const_seq(const std::vector<uint32_t>& Y, uint64_t a, int sign,
                                 std::optional<uint32_t> control = std::nullopt) {
    GateSeq s;
    for (size_t i = 0; i < Y.size(); ++i) {
        uint64_t v = (i + 1 >= 64) ? a : (a & ((uint64_t(1) << (i + 1)) - 1));
        if (v == 0) continue;
        uint32_t k = static_cast<uint32_t>(i + 1);
        while ((v & 1) == 0) {
            v >>= 1;
            --k;
        }
        if (control)
            add(s, Gate::crot(*control, Y[i], static_cast<int64_t>(v), k, sign));
        else
            add(s, Gate::rot(Y[i], static_cast<int64_t>(v), k, sign));
    }
    return s;
}

// Loads constant bits into a zeroed register: plain X gates, or CNOTs from a
// control for the c*a load. Used for both LOAD and UNLOAD blocks.
inline GateSeq load_const(const std::vector<uint32_t>& reg, uint64_t value,
                          std::optional<uint32_t> control, const std::string& tag) {
    GateSeq blk;
    for (size_t i = 0; i < reg.size(); ++i) {
        if ((value >> i) & 1) {
            if (control)
                add(blk, Gate::cnot(*control, reg[i]));
            else
                add(blk, Gate::x(reg[i]));
        }
    }
    return tagged(tag, blk);
}

// --- CDKPM controlled adder: W[0..m] += c*A[0..m-1], 3m Toffoli.
// The top carry-out is produced through a measure-erased AND helper so the
// controlled copy costs one Toffoli instead of two.
inline GateSeq cdkpm_ctrl_add(uint32_t ctrl, uint32_t carry_anc, uint32_t helper,
                              const std::vector<uint32_t>& A, const std::vector<uint32_t>& W,
                              CircuitBuilder& b) {
    const size_t m = A.size();
    if (W.size() != m + 1) throw std::invalid_argument("cdkpm_ctrl_add: bad widths");
    GateSeq s;
    auto cw = [&](size_t i) { return i == 0 ? carry_anc : A[i - 1]; };
    for (size_t i = 0; i + 1 < m; ++i) {
        GateSeq blk;
        maj(blk, cw(i), W[i], A[i]);
        add_seq(s, tagged("MAJ", blk));
    }
    {
        // Top block: carry-out into W[m] (controlled), sum bit m-1.
        const size_t t = m - 1;
        GateSeq blk;
        add(blk, Gate::cnot(cw(t), A[t]));
        add(blk, Gate::cnot(cw(t), W[t]));
        temp_and(blk, A[t], W[t], helper);
        add(blk, Gate::cnot(cw(t), helper));
        add(blk, Gate::toffoli(ctrl, helper, W[m]));
        add(blk, Gate::cnot(cw(t), helper));
        temp_and_uncompute(blk, b, A[t], W[t], helper);
        add(blk, Gate::toffoli(ctrl, A[t], W[t]));
        add(blk, Gate::cnot(cw(t), W[t]));
        add(blk, Gate::cnot(cw(t), A[t]));
        add_seq(s, tagged("MAJ", blk));
    }
    for (size_t i = m - 1; i-- > 0;) {
        GateSeq blk;
        add(blk, Gate::toffoli(cw(i), W[i], A[i]));
        add(blk, Gate::toffoli(ctrl, cw(i), W[i]));
        add(blk, Gate::cnot(A[i], W[i]));
        add(blk, Gate::cnot(A[i], cw(i)));
        add_seq(s, tagged("UMA", blk));
    }
    return s;
}

// --- Gidney controlled adder: W[0..m] += c*A[0..m-1], 2m Toffoli.
// Carries of c*A + W are computed directly (they are c times the plain
// carries), one AND for the controlled addend bit plus one for the carry per
// position; the top carry lands on W[m] with no extra copy.
inline GateSeq gidney_ctrl_add(uint32_t ctrl, const std::vector<uint32_t>& h,
                               const std::vector<uint32_t>& carry_anc,
                               const std::vector<uint32_t>& A, const std::vector<uint32_t>& W,
                               CircuitBuilder& b) {
    const size_t m = A.size();
    if (W.size() != m + 1 || h.size() != m || carry_anc.size() != m - 1)
        throw std::invalid_argument("gidney_ctrl_add: bad widths");
    GateSeq s;
    for (size_t i = 0; i < m; ++i) {
        GateSeq blk;
        temp_and(blk, ctrl, A[i], h[i]);
        if (i > 0) {
            add(blk, Gate::cnot(carry_anc[i - 1], h[i]));
            add(blk, Gate::cnot(carry_anc[i - 1], W[i]));
        }
        const uint32_t tgt = (i + 1 < m) ? carry_anc[i] : W[m];
        temp_and(blk, h[i], W[i], tgt);
        if (i > 0) add(blk, Gate::cnot(carry_anc[i - 1], tgt));
        add_seq(s, tagged("MAJ", blk));
    }
    for (size_t i = m; i-- > 0;) {
        GateSeq blk;
        if (i + 1 < m) {
            if (i > 0) add(blk, Gate::cnot(carry_anc[i - 1], carry_anc[i]));
            temp_and_uncompute(blk, b, h[i], W[i], carry_anc[i]);
        }
        add(blk, Gate::cnot(h[i], W[i]));
        if (i > 0) {
            add(blk, Gate::cnot(carry_anc[i - 1], W[i]));
            add(blk, Gate::cnot(carry_anc[i - 1], h[i]));
        }
        temp_and_uncompute(blk, b, ctrl, A[i], h[i]);
        add_seq(s, tagged("UMA", blk));
    }
    return s;
}

}  // namespace emit

// ---------------------------------------------------------------------------
// Public builders. Register conventions: "x" is the preserved addend, "y" the
// (n+1)-wide target whose most significant qubit starts at |0>, "c" a control.
// ---------------------------------------------------------------------------

inline Circuit build_plain_adder(AdderVariant variant, uint32_t n) {
    if (n == 0) throw std::invalid_argument("adder width must be >= 1");
    switch (variant) {
        case AdderVariant::CDKPM: {
            CircuitBuilder b(2 * n + 2);
            uint32_t q = 0;
            std::vector<uint32_t> X(n), Y(n + 1);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            uint32_t carry = q++;
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Output, Y);
            b.add_register("carry", RegRole::Ancilla, {carry});
            emit::append_to(b, emit::cdkpm_add(carry, X, Y));
            b.set_semantic({"plain-add", n});
            return b.seal();
        }
        case AdderVariant::VBE: {
            CircuitBuilder b(3 * n + 1);
            uint32_t q = 0;
            std::vector<uint32_t> X(n), Y(n + 1), C(n);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            for (auto& w : C) w = q++;
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Output, Y);
            b.add_register("carry", RegRole::Ancilla, C);
            emit::append_to(b, emit::vbe_add(C, X, Y));
            b.set_semantic({"plain-add", n});
            return b.seal();
        }
        case AdderVariant::GIDNEY: {
            CircuitBuilder b(3 * n + 1);
            uint32_t q = 0;
            std::vector<uint32_t> X(n), Y(n + 1), A(n);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            for (auto& w : A) w = q++;
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Output, Y);
            b.add_register("and", RegRole::Ancilla, A);
            emit::append_to(b, emit::gidney_add(X, Y, A, b));
            b.set_semantic({"plain-add", n});
            return b.seal();
        }
        case AdderVariant::DRAPER: {
            CircuitBuilder b(2 * n + 1);
            uint32_t q = 0;
            std::vector<uint32_t> X(n), Y(n + 1);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Output, Y);
            emit::append_to(b, emit::tagged("QFT", emit::qft_seq(Y, false)));
            emit::append_to(b, emit::tagged("Phi_ADD", emit::phi_add_seq(X, Y, +1)));
            emit::append_to(b, emit::tagged("IQFT", emit::qft_seq(Y, true)));
            b.set_semantic({"plain-add", n});
            return b.seal();
        }
    }
    throw std::logic_error("unreachable");
}

inline Circuit build_controlled_adder(ControlledStrategy strategy, uint32_t n,
                                      AdderVariant base = AdderVariant::CDKPM) {
    if (n == 0) throw std::invalid_argument("adder width must be >= 1");
    Semantic sem{"ctrl-add", n};
    sem.controlled = true;
    switch (strategy) {
        case ControlledStrategy::GENERIC_LOAD:
        case ControlledStrategy::GENERIC_LOAD_MBU: {
            // Load c*x into a scratch addend, run the base adder, unload.
            if (base == AdderVariant::DRAPER || base == AdderVariant::GIDNEY)
                throw std::invalid_argument("generic load strategy expects a ripple adder base");
            const uint32_t base_anc = (base == AdderVariant::CDKPM) ? 1 : n;
            CircuitBuilder b(1 + n + (n + 1) + n + base_anc);
            uint32_t q = 0;
            uint32_t ctrl = q++;
            std::vector<uint32_t> X(n), Y(n + 1), G(n), C(base_anc);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            for (auto& w : G) w = q++;
            for (auto& w : C) w = q++;
            b.add_register("c", RegRole::Control, {ctrl});
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Output, Y);
            b.add_register("load", RegRole::Ancilla, G);
            b.add_register("carry", RegRole::Ancilla, C);
            GateSeq s;
            GateSeq loadblk;
            for (uint32_t i = 0; i < n; ++i) emit::temp_and(loadblk, ctrl, X[i], G[i]);
            emit::add_seq(s, emit::tagged("LOAD", loadblk));
            if (base == AdderVariant::CDKPM)
                emit::add_seq(s, emit::cdkpm_add(C[0], G, Y));
            else
                emit::add_seq(s, emit::vbe_add(C, G, Y));
            GateSeq unload;
            if (strategy == ControlledStrategy::GENERIC_LOAD) {
                for (uint32_t i = n; i-- > 0;) emit::temp_and(unload, ctrl, X[i], G[i]);
            } else {
                for (uint32_t i = n; i-- > 0;) emit::temp_and_uncompute(unload, b, ctrl, X[i], G[i]);
            }
            emit::add_seq(s, emit::tagged("UNLOAD", unload));
            emit::append_to(b, s);
            b.set_semantic(sem);
            return b.seal();
        }
        case ControlledStrategy::CDKPM_CUMA: {
            CircuitBuilder b(1 + n + (n + 1) + 2);
            uint32_t q = 0;
            uint32_t ctrl = q++;
            std::vector<uint32_t> X(n), Y(n + 1);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            uint32_t carry = q++, helper = q++;
            b.add_register("c", RegRole::Control, {ctrl});
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Output, Y);
            b.add_register("carry", RegRole::Ancilla, {carry, helper});
            emit::append_to(b, emit::cdkpm_ctrl_add(ctrl, carry, helper, X, Y, b));
            b.set_semantic(sem);
            return b.seal();
        }
        case ControlledStrategy::GIDNEY_CTRL: {
            CircuitBuilder b(1 + n + (n + 1) + n + (n - 1));
            uint32_t q = 0;
            uint32_t ctrl = q++;
            std::vector<uint32_t> X(n), Y(n + 1), H(n), A(n - 1);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            for (auto& w : H) w = q++;
            for (auto& w : A) w = q++;
            b.add_register("c", RegRole::Control, {ctrl});
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Output, Y);
            b.add_register("load", RegRole::Ancilla, H);
            if (n > 1) b.add_register("and", RegRole::Ancilla, A);
            emit::append_to(b, emit::gidney_ctrl_add(ctrl, H, A, X, Y, b));
            b.set_semantic(sem);
            return b.seal();
        }
        case ControlledStrategy::DRAPER_CENTRAL:
        case ControlledStrategy::DRAPER_1ANC: {
            CircuitBuilder b(1 + n + (n + 1) + 1);
            uint32_t q = 0;
            uint32_t ctrl = q++;
            std::vector<uint32_t> X(n), Y(n + 1);
            for (auto& w : X) w = q++;
            for (auto& w : Y) w = q++;
            uint32_t anc = q++;
            b.add_register("c", RegRole::Control, {ctrl});
            b.add_register("x", RegRole::Input, X);
            b.add_register("y", RegRole::Output, Y);
            b.add_register("and", RegRole::Ancilla, {anc});
            GateSeq s;
            emit::add_seq(s, emit::tagged("QFT", emit::qft_seq(Y, false)));
            GateSeq body;
            if (strategy == ControlledStrategy::DRAPER_1ANC) {
                // Group the doubly-controlled rotations by their x_i control:
                // one temporary AND serves the whole group.
                for (uint32_t j = 0; j < n; ++j) {
                    emit::temp_and(body, ctrl, X[j], anc);
                    for (size_t i = j; i < Y.size(); ++i)
                        emit::add(body, Gate::crot(anc, Y[i], 1, static_cast<uint32_t>(i - j + 1), +1));
                    emit::temp_and_uncompute(body, b, ctrl, X[j], anc);
                }
            } else {
                for (size_t i = 0; i < Y.size(); ++i) {
                    for (size_t j = 0; j <= std::min<size_t>(i, n - 1); ++j) {
                        emit::temp_and(body, ctrl, X[j], anc);
                        emit::add(body, Gate::crot(anc, Y[i], 1, static_cast<uint32_t>(i - j + 1), +1));
                        emit::temp_and_uncompute(body, b, ctrl, X[j], anc);
                    }
                }
            }
            emit::add_seq(s, emit::tagged("Phi_ADD", body));
            emit::add_seq(s, emit::tagged("IQFT", emit::qft_seq(Y, true)));
            emit::append_to(b, s);
            b.set_semantic(sem);
            return b.seal();
        }
    }
    throw std::logic_error("unreachable");
}

inline Circuit build_const_adder(AdderVariant variant, uint32_t n, const BitString& a) {
    if (a.width() != n) throw std::invalid_argument("constant width mismatch");
    Semantic sem{"const-add", n};
    sem.a = a.to_uint();
    if (variant == AdderVariant::DRAPER) {
        CircuitBuilder b(n + 1);
        std::vector<uint32_t> Y(n + 1);
        uint32_t q = 0;
        for (auto& w : Y) w = q++;
        b.add_register("y", RegRole::Output, Y);
        emit::append_to(b, emit::tagged("QFT", emit::qft_seq(Y, false)));
        emit::append_to(b, emit::tagged("Phi_ADD_CONST", emit::phi_add_const_seq(Y, a.to_uint(), +1)));
        emit::append_to(b, emit::tagged("IQFT", emit::qft_seq(Y, true)));
        b.set_semantic(sem);
        return b.seal();
    }
    const uint32_t base_anc = (variant == AdderVariant::CDKPM) ? 1 : n;
    CircuitBuilder b((n + 1) + n + base_anc);
    uint32_t q = 0;
    std::vector<uint32_t> Y(n + 1), A(n), C(base_anc);
    for (auto& w : Y) w = q++;
    for (auto& w : A) w = q++;
    for (auto& w : C) w = q++;
    b.add_register("y", RegRole::Output, Y);
    b.add_register("load", RegRole::Ancilla, A);
    b.add_register(variant == AdderVariant::GIDNEY ? "and" : "carry", RegRole::Ancilla, C);
    GateSeq s;
    emit::add_seq(s, emit::load_const(A, a.to_uint(), std::nullopt, "LOAD"));
    switch (variant) {
        case AdderVariant::CDKPM: emit::add_seq(s, emit::cdkpm_add(C[0], A, Y)); break;
        case AdderVariant::VBE: emit::add_seq(s, emit::vbe_add(C, A, Y)); break;
        case AdderVariant::GIDNEY: emit::add_seq(s, emit::gidney_add(A, Y, C, b)); break;
        default: break;
    }
    emit::add_seq(s, emit::load_const(A, a.to_uint(), std::nullopt, "UNLOAD"));
    emit::append_to(b, s);
    b.set_semantic(sem);
    return b.seal();
}

inline Circuit build_ctrl_const_adder(AdderVariant variant, uint32_t n, const BitString& a) {
    if (a.width() != n) throw std::invalid_argument("constant width mismatch");
    Semantic sem{"ctrl-const-add", n};
    sem.a = a.to_uint();
    sem.controlled = true;
    if (variant == AdderVariant::DRAPER) {
        CircuitBuilder b(1 + n + 1);
        uint32_t ctrl = 0;
        std::vector<uint32_t> Y(n + 1);
        uint32_t q = 1;
        for (auto& w : Y) w = q++;
        b.add_register("c", RegRole::Control, {ctrl});
        b.add_register("y", RegRole::Output, Y);
        emit::append_to(b, emit::tagged("QFT", emit::qft_seq(Y, false)));
        emit::append_to(b, emit::tagged("C_Phi_ADD_CONST",
                                        emit::phi_add_const_seq(Y, a.to_uint(), +1, ctrl)));
        emit::append_to(b, emit::tagged("IQFT", emit::qft_seq(Y, true)));
        b.set_semantic(sem);
        return b.seal();
    }
    const uint32_t base_anc = (variant == AdderVariant::CDKPM) ? 1 : n;
    CircuitBuilder b(1 + (n + 1) + n + base_anc);
    uint32_t q = 0;
    uint32_t ctrl = q++;
    std::vector<uint32_t> Y(n + 1), A(n), C(base_anc);
    for (auto& w : Y) w = q++;
    for (auto& w : A) w = q++;
    for (auto& w : C) w = q++;
    b.add_register("c", RegRole::Control, {ctrl});
    b.add_register("y", RegRole::Output, Y);
    b.add_register("load", RegRole::Ancilla, A);
    b.add_register(variant == AdderVariant::GIDNEY ? "and" : "carry", RegRole::Ancilla, C);
    GateSeq s;
    emit::add_seq(s, emit::load_const(A, a.to_uint(), ctrl, "LOAD"));
    switch (variant) {
        case AdderVariant::CDKPM: emit::add_seq(s, emit::cdkpm_add(C[0], A, Y)); break;
        case AdderVariant::VBE: emit::add_seq(s, emit::vbe_add(C, A, Y)); break;
        case AdderVariant::GIDNEY: emit::add_seq(s, emit::gidney_add(A, Y, C, b)); break;
        default: break;
    }
    emit::add_seq(s, emit::load_const(A, a.to_uint(), ctrl, "UNLOAD"));
    emit::append_to(b, s);
    b.set_semantic(sem);
    return b.seal();
}

// |x>|y> -> |x>|y - x> in the (n+1)-bit signed convention (bit n = sign).
inline Circuit build_subtractor(AdderVariant variant, uint32_t n, SubtractMethod method) {
    if (n == 0) throw std::invalid_argument("subtractor width must be >= 1");
    Semantic sem{"sub", n};
    if (variant == AdderVariant::GIDNEY) {
        // Measurement circuits have no adjoint; the dedicated reversed
        // builder swaps the compute/uncompute roles of the logical-ANDs.
        CircuitBuilder b(3 * n + 1);
        uint32_t q = 0;
        std::vector<uint32_t> X(n), Y(n + 1), G(n);
        for (auto& w : X) w = q++;
        for (auto& w : Y) w = q++;
        for (auto& w : G) w = q++;
        b.add_register("x", RegRole::Input, X);
        b.add_register("y", RegRole::Output, Y);
        b.add_register("and", RegRole::Ancilla, G);
        emit::append_to(b, emit::gidney_sub(X, Y, G, b));
        b.set_semantic(sem);
        return b.seal();
    }
    if (method == SubtractMethod::Adjoint) {
        Circuit adder = build_plain_adder(variant, n);
        return adder.with_gates(Circuit::dagger_gates(adder.gates())).with_semantic(sem);
    }
    // The explicit one's/two's-complement circuits wrap a plain adder.
    Circuit adder = build_plain_adder(variant, n);
    const auto& X = adder.reg("x").qubits;
    const auto& Y = adder.reg("y").qubits;
    GateSeq s;
    if (method == SubtractMethod::OnesComplementWrap) {
        // y - x = NOT(NOT(y) + x) over all n+1 target bits.
        for (uint32_t w : Y) emit::add(s, Gate::x(w));
        emit::add_seq(s, adder.gates());
        for (uint32_t w : Y) emit::add(s, Gate::x(w));
    } else {
        // y + NOT(x) + 1 (+2^n for the virtual flipped pad bit of x).
        uint32_t carry = adder.reg("carry").qubits[0];
        for (uint32_t w : X) emit::add(s, Gate::x(w));
        emit::add(s, Gate::x(carry));  // carry-in = 1 adds the +1
        emit::add_seq(s, adder.gates());
        emit::add(s, Gate::x(carry));
        for (uint32_t w : X) emit::add(s, Gate::x(w));
        emit::add(s, Gate::x(Y[n]));
    }
    return adder.with_gates(std::move(s)).with_semantic(sem);
}

// Fragment circuits exposed for direct testing and the CLI.
inline Circuit build_fragment(const std::string& name) {
    auto make = [&](uint32_t nq, const std::vector<std::pair<std::string, std::vector<uint32_t>>>& regs,
                    GateSeq seq) {
        CircuitBuilder b(nq);
        for (auto& [nm, qs] : regs) b.add_register(nm, RegRole::Input, qs);
        emit::append_to(b, seq);
        b.set_semantic({"fragment-" + name, nq});
        return b.seal();
    };
    GateSeq s;
    if (name == "maj") {
        emit::maj(s, 0, 1, 2);
        return make(3, {{"c", {0}}, {"y", {1}}, {"x", {2}}}, s);
    }
    if (name == "uma2") {
        emit::uma2(s, 0, 1, 2);
        return make(3, {{"c", {0}}, {"y", {1}}, {"x", {2}}}, s);
    }
    if (name == "uma3") {
        emit::uma3(s, 0, 1, 2);
        return make(3, {{"c", {0}}, {"y", {1}}, {"x", {2}}}, s);
    }
    if (name == "carry") {
        emit::carry(s, 0, 1, 2, 3);
        return make(4, {{"c", {0}}, {"x", {1}}, {"y", {2}}, {"cout", {3}}}, s);
    }
    if (name == "sum") {
        emit::vbe_sum(s, 0, 1, 2);
        return make(3, {{"c", {0}}, {"x", {1}}, {"y", {2}}}, s);
    }
    if (name == "temp-and") {
        emit::temp_and(s, 0, 1, 2);
        return make(3, {{"x", {0}}, {"y", {1}}, {"anc", {2}}}, s);
    }
    if (name == "temp-and-uncompute") {
        CircuitBuilder b(3);
        b.add_register("x", RegRole::Input, {0});
        b.add_register("y", RegRole::Input, {1});
        b.add_register("anc", RegRole::Input, {2});
        GateSeq t;
        emit::temp_and_uncompute(t, b, 0, 1, 2);
        emit::append_to(b, t);
        b.set_semantic({"fragment-temp-and-uncompute", 3});
        return b.seal();
    }
    throw std::invalid_argument("unknown fragment: " + name);
}

inline Circuit build_qft(uint32_t m, bool inverse = false) {
    if (m == 0) throw std::invalid_argument("qft width must be >= 1");
    CircuitBuilder b(m);
    std::vector<uint32_t> Q(m);
    for (uint32_t i = 0; i < m; ++i) Q[i] = i;
    b.add_register("q", RegRole::Input, Q);
    emit::append_to(b, emit::tagged(inverse ? "IQFT" : "QFT", emit::qft_seq(Q, inverse)));
    b.set_semantic({inverse ? "iqft" : "qft", m});
    return b.seal();
}

// QFT skeleton with every controlled rotation replaced by a classically
// conditioned rotation: cbits[j] stands in for the would-be control qubit j.
inline Circuit build_pcqft(uint32_t m, const std::vector<int32_t>& cbits) {
    if (cbits.size() != m) throw std::invalid_argument("pcqft needs one cbit per qubit");
    CircuitBuilder b(m, m);
    std::vector<uint32_t> Q(m);
    for (uint32_t i = 0; i < m; ++i) Q[i] = i;
    b.add_register("q", RegRole::Input, Q);
    // The conditions must exist; a PCQFT consumer will have measured them.
    for (uint32_t i = 0; i < m; ++i) b.append(Gate::measure(Q[i], cbits[i]));
    b.open_tag("PCQFT");
    for (size_t i = m; i-- > 0;) {
        b.append(Gate::h(Q[i]));
        for (size_t j = i; j-- > 0;)
            b.append(Gate::cond(cbits[j], {Gate::rot(Q[i], 1, static_cast<uint32_t>(i - j + 1), +1)}));
    }
    b.close_tag("PCQFT");
    b.set_semantic({"pcqft", m});
    return b.seal();
}

inline Circuit build_phi_add(uint32_t n, int sign = +1) {
    CircuitBuilder b(2 * n + 1);
    uint32_t q = 0;
    std::vector<uint32_t> X(n), Y(n + 1);
    for (auto& w : X) w = q++;
    for (auto& w : Y) w = q++;
    b.add_register("x", RegRole::Input, X);
    b.add_register("y", RegRole::Output, Y);
    emit::append_to(b, emit::tagged(sign > 0 ? "Phi_ADD" : "Phi_SUB", emit::phi_add_seq(X, Y, sign)));
    b.set_semantic({sign > 0 ? "phi-add" : "phi-sub", n});
    return b.seal();
}

inline Circuit build_phi_add_const(uint32_t n, const BitString& a, int sign) {
    if (a.width() != n) throw std::invalid_argument("constant width mismatch");
    CircuitBuilder b(n + 1);
    std::vector<uint32_t> Y(n + 1);
    for (uint32_t i = 0; i <= n; ++i) Y[i] = i;
    b.add_register("y", RegRole::Output, Y);
    emit::append_to(b, emit::tagged(sign > 0 ? "Phi_ADD_CONST" : "Phi_SUB_CONST",
                                    emit::phi_add_const_seq(Y, a.to_uint(), sign)));
    Semantic sem{sign > 0 ? "phi-add-const" : "phi-sub-const", n};
    sem.a = a.to_uint();
    b.set_semantic(sem);
    return b.seal();
}

}  // namespace qarith
