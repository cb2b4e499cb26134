#pragma once

#include "qarith/compare.hpp"
#include "qarith/mbu.hpp"

namespace qarith {

enum class ModKind {
    MODADD,
    CTRL_MODADD,
    CONST_MODADD_VBE,
    CONST_MODADD_TAKAHASHI,
    CTRL_CONST_MODADD_VBE,
    CTRL_CONST_MODADD_BEAUREGARD,
    IN_RANGE,
};

enum class Preset { CDKPM_ALL, GIDNEY_ALL, HYBRID, DRAPER_BEAUREGARD, VBE_ALL };

inline const char* mod_kind_name(ModKind k) {
    switch (k) {
        case ModKind::MODADD: return "modadd";
        case ModKind::CTRL_MODADD: return "ctrl-modadd";
        case ModKind::CONST_MODADD_VBE: return "const-modadd-vbe";
        case ModKind::CONST_MODADD_TAKAHASHI: return "const-modadd-takahashi";
        case ModKind::CTRL_CONST_MODADD_VBE: return "ctrl-const-modadd-vbe";
        case ModKind::CTRL_CONST_MODADD_BEAUREGARD: return "ctrl-const-modadd-beauregard";
        case ModKind::IN_RANGE: return "in-range";
    }
    return "?";
}

inline const char* preset_name(Preset p) {
    switch (p) {
        case Preset::CDKPM_ALL: return "cdkpm";
        case Preset::GIDNEY_ALL: return "gidney";
        case Preset::HYBRID: return "hybrid";
        case Preset::DRAPER_BEAUREGARD: return "draper";
        case Preset::VBE_ALL: return "vbe";
    }
    return "?";
}

// A named composition of subroutine choices, parameterized by (n, p, a,
// control) plus the MBU flag.
struct ArchitectureSpec {
    ModKind kind = ModKind::MODADD;
    Preset preset = Preset::CDKPM_ALL;
    uint32_t n = 0;
    uint64_t p = 0;   // unused by IN_RANGE
    uint64_t a = 0;   // constant kinds only
    bool mbu = false;

    void check() const {
        if (n == 0 || n > 62) throw std::invalid_argument("n out of range");
        const bool needs_p = kind != ModKind::IN_RANGE;
        if (needs_p) {
            if (p == 0) throw std::invalid_argument("modulus p must be >= 1");
            if (p > ((uint64_t(1) << n) - 1)) throw std::invalid_argument("p does not fit in n bits");
        }
        const bool needs_a = kind == ModKind::CONST_MODADD_VBE ||
                             kind == ModKind::CONST_MODADD_TAKAHASHI ||
                             kind == ModKind::CTRL_CONST_MODADD_VBE ||
                             kind == ModKind::CTRL_CONST_MODADD_BEAUREGARD;
        if (needs_a && a >= p) throw std::invalid_argument("constant a must satisfy a < p");
        if (preset == Preset::HYBRID && kind != ModKind::MODADD)
            throw std::invalid_argument("hybrid preset is defined for modadd only");
        if (preset == Preset::VBE_ALL && kind != ModKind::MODADD)
            throw std::invalid_argument("vbe preset is defined for modadd only");
        if (preset == Preset::DRAPER_BEAUREGARD && kind != ModKind::MODADD &&
            kind != ModKind::CTRL_CONST_MODADD_BEAUREGARD)
            throw std::invalid_argument("draper preset supports modadd and the Beauregard kind");
        if (kind == ModKind::CTRL_CONST_MODADD_BEAUREGARD && preset != Preset::DRAPER_BEAUREGARD)
            throw std::invalid_argument("the Beauregard kind uses the draper preset");
        if (kind == ModKind::CTRL_MODADD && preset != Preset::CDKPM_ALL &&
            preset != Preset::GIDNEY_ALL)
            throw std::invalid_argument("ctrl-modadd presets: cdkpm or gidney");
    }
};

namespace detail {

// Ripple-slot family used inside an architecture; Gidney slots erase their
// ANDs by measurement, CDKPM/VBE slots are measurement-free (daggerable).
enum class SlotFamily { CDKPM, GIDNEY, VBE };

struct SlotPool {
    std::vector<uint32_t> wires;
    std::vector<uint32_t> span(size_t offset, size_t count) const {
        if (offset + count > wires.size()) throw std::logic_error("slot pool overflow");
        return {wires.begin() + offset, wires.begin() + offset + count};
    }
};

inline GateSeq slot_plain_add(SlotFamily fam, const std::vector<uint32_t>& A,
                              const std::vector<uint32_t>& W, const SlotPool& pool,
                              CircuitBuilder& b) {
    switch (fam) {
        case SlotFamily::CDKPM: return emit::cdkpm_add(pool.span(0, 1)[0], A, W);
        case SlotFamily::GIDNEY: return emit::gidney_add(A, W, pool.span(0, A.size()), b);
        case SlotFamily::VBE: return emit::vbe_add(pool.span(0, A.size()), A, W);
    }
    throw std::logic_error("unreachable");
}

// W -= value (full width, two's-complement wrap; W.back() becomes the sign).
inline GateSeq slot_const_sub(SlotFamily fam, uint64_t value, const std::vector<uint32_t>& W,
                              const SlotPool& pool, CircuitBuilder& b) {
    const size_t n = W.size() - 1;
    const auto A = pool.span(0, n);
    GateSeq s;
    emit::add_seq(s, emit::load_const(A, value, std::nullopt, "LOAD"));
    switch (fam) {
        case SlotFamily::CDKPM:
            emit::add_seq(s, Circuit::dagger_gates(emit::cdkpm_add(pool.span(n, 1)[0], A, W)));
            break;
        case SlotFamily::GIDNEY:
            emit::add_seq(s, emit::gidney_sub(A, W, pool.span(n, n), b));
            break;
        case SlotFamily::VBE:
            emit::add_seq(s, Circuit::dagger_gates(emit::vbe_add(pool.span(n, n), A, W)));
            break;
    }
    emit::add_seq(s, emit::load_const(A, value, std::nullopt, "UNLOAD"));
    return s;
}

// W += ctrl * value (full width): the control rides on the load CNOTs.
inline GateSeq slot_ctrl_const_add(SlotFamily fam, uint64_t value, uint32_t ctrl,
                                   const std::vector<uint32_t>& W, const SlotPool& pool,
                                   CircuitBuilder& b) {
    const size_t n = W.size() - 1;
    const auto A = pool.span(0, n);
    GateSeq s;
    emit::add_seq(s, emit::load_const(A, value, ctrl, "LOAD"));
    switch (fam) {
        case SlotFamily::CDKPM:
            emit::add_seq(s, emit::cdkpm_add(pool.span(n, 1)[0], A, W));
            break;
        case SlotFamily::GIDNEY:
            emit::add_seq(s, emit::gidney_add(A, W, pool.span(n, n), b));
            break;
        case SlotFamily::VBE:
            emit::add_seq(s, emit::vbe_add(pool.span(n, n), A, W));
            break;
    }
    emit::add_seq(s, emit::load_const(A, value, ctrl, "UNLOAD"));
    return s;
}

// t ^= [F > S] (optionally with a control), register-register.
inline GateSeq slot_compare(SlotFamily fam, const std::vector<uint32_t>& F,
                            const std::vector<uint32_t>& S, uint32_t t,
                            std::optional<uint32_t> ctrl, const std::vector<uint32_t>& ovf,
                            const SlotPool& pool, CircuitBuilder& b) {
    switch (fam) {
        case SlotFamily::CDKPM:
            return emit::cdkpm_compare(pool.span(0, 1)[0], F, S, t, ctrl);
        case SlotFamily::GIDNEY:
            return emit::gidney_compare(F, S, t, pool.span(0, F.size()), ctrl, b);
        case SlotFamily::VBE: {
            // Two-adder comparator: subtract F from S||ovf, read the sign,
            // add back. ovf supplies the width-(n+1) workspace.
            std::vector<uint32_t> SW = S;
            SW.insert(SW.end(), ovf.begin(), ovf.end());
            GateSeq s;
            GateSeq adder = emit::vbe_add(pool.span(0, F.size()), F, SW);
            emit::add_seq(s, Circuit::dagger_gates(adder));
            if (ctrl)
                emit::add(s, Gate::toffoli(*ctrl, SW.back(), t));
            else
                emit::add(s, Gate::cnot(SW.back(), t));
            emit::add_seq(s, adder);
            return s;
        }
    }
    throw std::logic_error("unreachable");
}

// t ^= [value > S] with the constant loaded (optionally as ctrl*value).
inline GateSeq slot_const_compare(SlotFamily fam, uint64_t value,
                                  const std::vector<uint32_t>& S, uint32_t t,
                                  std::optional<uint32_t> load_ctrl,
                                  const std::vector<uint32_t>& ovf, const SlotPool& pool,
                                  CircuitBuilder& b) {
    const size_t n = S.size();
    const auto A = pool.span(0, n);
    GateSeq s;
    emit::add_seq(s, emit::load_const(A, value, load_ctrl, "LOAD"));
    SlotPool rest{pool.span(n, pool.wires.size() - n)};
    emit::add_seq(s, slot_compare(fam, A, S, t, std::nullopt, ovf, rest, b));
    emit::add_seq(s, emit::load_const(A, value, load_ctrl, "UNLOAD"));
    return s;
}

struct Families {
    SlotFamily adder, comp_p, csub_p, comp_final;
};

inline Families families_for(Preset preset) {
    switch (preset) {
        case Preset::CDKPM_ALL:
            return {SlotFamily::CDKPM, SlotFamily::CDKPM, SlotFamily::CDKPM, SlotFamily::CDKPM};
        case Preset::GIDNEY_ALL:
            return {SlotFamily::GIDNEY, SlotFamily::GIDNEY, SlotFamily::GIDNEY, SlotFamily::GIDNEY};
        case Preset::HYBRID:
            // Gidney adder and final comparator, CDKPM constant slots.
            return {SlotFamily::GIDNEY, SlotFamily::CDKPM, SlotFamily::CDKPM, SlotFamily::GIDNEY};
        case Preset::VBE_ALL:
            return {SlotFamily::VBE, SlotFamily::VBE, SlotFamily::VBE, SlotFamily::VBE};
        default:
            throw std::invalid_argument("preset has no ripple families");
    }
}

inline size_t pool_need_plain_add(SlotFamily f, size_t n) {
    return f == SlotFamily::CDKPM ? 1 : n;
}
inline size_t pool_need_const(SlotFamily f, size_t n) {
    // load register + adder workspace; the Gidney reversed adder is accounted
    // with its borrow-baseline wire per the propositions.
    return f == SlotFamily::CDKPM ? n + 1 : 2 * n;
}
inline size_t pool_need_compare(SlotFamily f, size_t n) {
    return f == SlotFamily::CDKPM ? 1 : n;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Architecture builders. Layout: [c] x y ovf flag work...; "y" plus the ovf
// qubit form the (n+1)-wide accumulator W. The final comparator lives in an
// UNCOMPUTE block so the MBU transform can replace it wholesale.
// ---------------------------------------------------------------------------

namespace detail {

struct ArchFrame {
    CircuitBuilder b;
    std::optional<uint32_t> ctrl;
    std::vector<uint32_t> X, Y, W;  // W = Y + ovf
    uint32_t ovf = 0, flag = 0;
    SlotPool pool;
};

inline ArchFrame make_frame(const ArchitectureSpec& spec, bool with_x, size_t pool_size) {
    const uint32_t n = spec.n;
    const bool controlled = spec.kind == ModKind::CTRL_MODADD ||
                            spec.kind == ModKind::CTRL_CONST_MODADD_VBE ||
                            spec.kind == ModKind::CTRL_CONST_MODADD_BEAUREGARD;
    uint32_t total = (controlled ? 1 : 0) + (with_x ? n : 0) + n + 2 +
                     static_cast<uint32_t>(pool_size);
    ArchFrame f{CircuitBuilder(total), std::nullopt, {}, {}, {}, 0, 0, {}};
    uint32_t q = 0;
    if (controlled) {
        f.ctrl = q++;
        f.b.add_register("c", RegRole::Control, {*f.ctrl});
    }
    if (with_x) {
        f.X.resize(n);
        for (auto& w : f.X) w = q++;
        f.b.add_register("x", RegRole::Input, f.X);
    }
    f.Y.resize(n);
    for (auto& w : f.Y) w = q++;
    f.b.add_register("y", RegRole::Output, f.Y);
    f.ovf = q++;
    f.flag = q++;
    f.b.add_register("ovf", RegRole::Ancilla, {f.ovf});
    f.b.add_register("flag", RegRole::Ancilla, {f.flag});
    f.pool.wires.resize(pool_size);
    for (auto& w : f.pool.wires) w = q++;
    if (pool_size) f.b.add_register("work", RegRole::Ancilla, f.pool.wires);
    f.W = f.Y;
    f.W.push_back(f.ovf);
    return f;
}

inline Circuit build_ripple_arch(const ArchitectureSpec& spec) {
    using namespace detail;
    const uint32_t n = spec.n;
    const Families fam = families_for(spec.preset);
    const bool ctrl_kind = spec.kind == ModKind::CTRL_MODADD;
    const bool const_kind = spec.kind == ModKind::CONST_MODADD_VBE ||
                            spec.kind == ModKind::CONST_MODADD_TAKAHASHI;
    const bool ctrl_const_kind = spec.kind == ModKind::CTRL_CONST_MODADD_VBE;

    size_t pool = 0;
    auto need = [&](size_t v) { pool = std::max(pool, v); };
    if (spec.kind == ModKind::MODADD) need(pool_need_plain_add(fam.adder, n));
    if (ctrl_kind) need(fam.adder == SlotFamily::CDKPM ? 2 : (2 * n - 1));
    if (const_kind && spec.kind == ModKind::CONST_MODADD_VBE)
        need(n + pool_need_plain_add(fam.adder, n));
    if (ctrl_const_kind) need(n + pool_need_plain_add(fam.adder, n));
    need(pool_need_const(fam.comp_p, n));
    need(pool_need_const(fam.csub_p, n));
    const bool const_compare = const_kind || ctrl_const_kind;
    need((const_compare ? n : 0) + pool_need_compare(fam.comp_final, n));
    // The Gidney reversed-adder slots are accounted with one extra baseline
    // wire (see the propositions' 2n+1 ancilla slot counts).
    if (fam.csub_p == SlotFamily::GIDNEY) pool += 1;

    ArchFrame f = make_frame(spec, !const_kind && !ctrl_const_kind, pool);
    CircuitBuilder& b = f.b;

    GateSeq s;
    if (spec.kind == ModKind::MODADD) {
        emit::add_seq(s, emit::tagged("Q_ADD", slot_plain_add(fam.adder, f.X, f.W, f.pool, b)));
    } else if (ctrl_kind) {
        GateSeq ca;
        if (fam.adder == SlotFamily::CDKPM)
            ca = emit::cdkpm_ctrl_add(*f.ctrl, f.pool.wires[0], f.pool.wires[1], f.X, f.W, b);
        else
            ca = emit::gidney_ctrl_add(*f.ctrl, f.pool.span(0, n), f.pool.span(n, n - 1), f.X,
                                       f.W, b);
        emit::add_seq(s, emit::tagged("C_Q_ADD", ca));
    } else if (const_kind && spec.kind == ModKind::CONST_MODADD_VBE) {
        GateSeq load = emit::load_const(f.pool.span(0, n), spec.a, std::nullopt, "LOAD");
        GateSeq unload = emit::load_const(f.pool.span(0, n), spec.a, std::nullopt, "UNLOAD");
        GateSeq body = load;
        SlotPool rest{f.pool.span(n, f.pool.wires.size() - n)};
        emit::add_seq(body, slot_plain_add(fam.adder, f.pool.span(0, n), f.W, rest, b));
        emit::add_seq(body, unload);
        emit::add_seq(s, emit::tagged("Q_ADD_CONST", body));
    } else if (ctrl_const_kind) {
        GateSeq body = emit::load_const(f.pool.span(0, n), spec.a, *f.ctrl, "LOAD");
        SlotPool rest{f.pool.span(n, f.pool.wires.size() - n)};
        emit::add_seq(body, slot_plain_add(fam.adder, f.pool.span(0, n), f.W, rest, b));
        emit::add_seq(body, emit::load_const(f.pool.span(0, n), spec.a, *f.ctrl, "UNLOAD"));
        emit::add_seq(s, emit::tagged("C_Q_ADD_CONST", body));
    }

    if (spec.kind == ModKind::CONST_MODADD_TAKAHASHI) {
        // Takahashi: start by subtracting p-a; the sign bit tells whether to
        // add p back.
        emit::add_seq(s, emit::tagged("Q_SUB_CONST",
                                      slot_const_sub(fam.csub_p, spec.p - spec.a, f.W, f.pool, b)));
        emit::add(s, Gate::cnot(f.ovf, f.flag));
        emit::add_seq(s, emit::tagged("C_Q_ADD_CONST", slot_ctrl_const_add(fam.csub_p, spec.p,
                                                                           f.flag, f.W, f.pool, b)));
    } else {
        // Subtract p unconditionally; the sign bit (copied to the flag) says
        // whether the subtraction overshot and p must be added back.
        emit::add_seq(s, emit::tagged("Q_SUB_CONST",
                                      slot_const_sub(fam.comp_p, spec.p, f.W, f.pool, b)));
        emit::add(s, Gate::cnot(f.ovf, f.flag));
        emit::add_seq(s, emit::tagged("C_Q_ADD_CONST", slot_ctrl_const_add(fam.csub_p, spec.p,
                                                                           f.flag, f.W, f.pool, b)));
    }

    // Final comparator uncomputes the flag; the X in front aligns the flag
    // with the comparator's own sense so MBU halves exactly this block.
    emit::add(s, Gate::x(f.flag));
    GateSeq comp;
    if (spec.kind == ModKind::MODADD) {
        comp = slot_compare(fam.comp_final, f.X, f.Y, f.flag, std::nullopt, {f.ovf}, f.pool, b);
    } else if (ctrl_kind) {
        comp = slot_compare(fam.comp_final, f.X, f.Y, f.flag, f.ctrl, {f.ovf}, f.pool, b);
    } else if (spec.kind == ModKind::CTRL_CONST_MODADD_VBE) {
        comp = slot_const_compare(fam.comp_final, spec.a, f.Y, f.flag, f.ctrl, {f.ovf}, f.pool, b);
    } else {
        comp = slot_const_compare(fam.comp_final, spec.a, f.Y, f.flag, std::nullopt, {f.ovf},
                                  f.pool, b);
    }
    emit::add_seq(s, emit::tagged("UNCOMPUTE", comp));

    emit::append_to(b, s);
    Semantic sem{mod_kind_name(spec.kind), n};
    sem.p = spec.p;
    if (const_kind || ctrl_const_kind) sem.a = spec.a;
    sem.controlled = ctrl_kind || ctrl_const_kind;
    b.set_semantic(sem);
    Circuit built = b.seal();
    if (spec.mbu) {
        const bool gidney_final = fam.comp_final == SlotFamily::GIDNEY;
        return wrap_final_uncompute(built, std::nullopt, gidney_final);
    }
    return built;
}

// Draper/Beauregard architectures: the accumulator stays in the Fourier basis
// across the whole sequence; adjacent QFT/IQFT pairs are already elided.
inline Circuit build_draper_arch(const ArchitectureSpec& spec) {
    const uint32_t n = spec.n;
    const bool beauregard = spec.kind == ModKind::CTRL_CONST_MODADD_BEAUREGARD;
    ArchFrame f = make_frame(spec, !beauregard, 0);
    CircuitBuilder& b = f.b;
    GateSeq s;
    emit::add_seq(s, emit::tagged("QFT", emit::qft_seq(f.W, false)));
    if (beauregard)
        emit::add_seq(s, emit::tagged("C_Phi_ADD_CONST",
                                      emit::phi_add_const_seq(f.W, spec.a, +1, *f.ctrl)));
    else
        emit::add_seq(s, emit::tagged("Phi_ADD", emit::phi_add_seq(f.X, f.W, +1)));
    emit::add_seq(s, emit::tagged("Phi_SUB_CONST", emit::phi_add_const_seq(f.W, spec.p, -1)));
    emit::add_seq(s, emit::tagged("IQFT", emit::qft_seq(f.W, true)));
    emit::add(s, Gate::cnot(f.ovf, f.flag));
    emit::add_seq(s, emit::tagged("QFT", emit::qft_seq(f.W, false)));
    emit::add_seq(s, emit::tagged("Phi_ADD_CONST", emit::phi_add_const_seq(f.W, spec.p, +1)));
    emit::add(s, Gate::x(f.flag));
    emit::add_seq(s, emit::tagged("C_Phi_SUB_CONST",
                                  emit::phi_add_const_seq(f.W, spec.p, -1, f.flag)));
    // Fourier-interior comparator: uncomputes the flag and leaves W in the
    // phi basis for the final IQFT.
    GateSeq comp;
    if (beauregard) {
        emit::add_seq(comp, emit::tagged("C_Phi_SUB_CONST",
                                         emit::phi_add_const_seq(f.W, spec.a, -1, *f.ctrl)));
        emit::add_seq(comp, emit::tagged("IQFT", emit::qft_seq(f.W, true)));
        emit::add(comp, Gate::cnot(f.ovf, f.flag));
        emit::add_seq(comp, emit::tagged("QFT", emit::qft_seq(f.W, false)));
        emit::add_seq(comp, emit::tagged("C_Phi_ADD_CONST",
                                         emit::phi_add_const_seq(f.W, spec.a, +1, *f.ctrl)));
    } else {
        emit::add_seq(comp, emit::tagged("Phi_SUB", emit::phi_add_seq(f.X, f.W, -1)));
        emit::add_seq(comp, emit::tagged("IQFT", emit::qft_seq(f.W, true)));
        emit::add(comp, Gate::cnot(f.ovf, f.flag));
        emit::add_seq(comp, emit::tagged("QFT", emit::qft_seq(f.W, false)));
        emit::add_seq(comp, emit::tagged("Phi_ADD", emit::phi_add_seq(f.X, f.W, +1)));
    }
    emit::add_seq(s, emit::tagged("UNCOMPUTE", comp));
    emit::add_seq(s, emit::tagged("IQFT", emit::qft_seq(f.W, true)));

    emit::append_to(b, s);
    Semantic sem{mod_kind_name(spec.kind), n};
    sem.p = spec.p;
    if (beauregard) sem.a = spec.a;
    sem.controlled = beauregard;
    b.set_semantic(sem);
    Circuit built = b.seal();
    if (spec.mbu) return wrap_final_uncompute(built);
    return built;
}

}  // namespace detail

// |x>|y>|z>|t> -> |x>|y>|z>|t ^ [x in (y,z)]> via two strict comparisons; the
// intermediate [y < x] flag is uncomputed by a third comparator, or by MBU.
inline Circuit build_in_range(uint32_t n, ComparatorVariant variant, bool mbu) {
    if (n == 0) throw std::invalid_argument("width must be >= 1");
    if (variant != ComparatorVariant::CDKPM_HALF && variant != ComparatorVariant::GIDNEY_HALF)
        throw std::invalid_argument("in-range supports the half-subtractor comparators");
    const bool gidney = variant == ComparatorVariant::GIDNEY_HALF;
    const uint32_t pool = gidney ? n : 1;
    CircuitBuilder b(3 * n + 2 + pool);
    uint32_t q = 0;
    std::vector<uint32_t> X(n), Y(n), Z(n), P(pool);
    for (auto& w : X) w = q++;
    for (auto& w : Y) w = q++;
    for (auto& w : Z) w = q++;
    uint32_t t = q++, flag = q++;
    for (auto& w : P) w = q++;
    b.add_register("x", RegRole::Input, X);
    b.add_register("y", RegRole::Input, Y);
    b.add_register("z", RegRole::Input, Z);
    b.add_register("t", RegRole::TargetBit, {t});
    b.add_register("flag", RegRole::Ancilla, {flag});
    b.add_register(gidney ? "and" : "carry", RegRole::Ancilla, P);
    auto comp = [&](const std::vector<uint32_t>& F, const std::vector<uint32_t>& S, uint32_t tgt,
                    std::optional<uint32_t> c) {
        return gidney ? emit::gidney_compare(F, S, tgt, P, c, b)
                      : emit::cdkpm_compare(P[0], F, S, tgt, c);
    };
    GateSeq s;
    emit::add_seq(s, emit::tagged("Q_COMP", comp(X, Y, flag, std::nullopt)));  // flag = [y < x]
    emit::add_seq(s, emit::tagged("C_Q_COMP", comp(Z, X, t, flag)));           // t ^= flag*[x < z]
    emit::add_seq(s, emit::tagged("UNCOMPUTE", comp(X, Y, flag, std::nullopt)));
    emit::append_to(b, s);
    Semantic sem{"in-range", n};
    b.set_semantic(sem);
    Circuit built = b.seal();
    if (mbu) return wrap_final_uncompute(built, std::nullopt, gidney);
    return built;
}

inline Circuit build_modadd(const ArchitectureSpec& spec) {
    spec.check();
    if (spec.kind == ModKind::IN_RANGE)
        throw std::invalid_argument("use build_in_range for the two-sided comparator");
    if (spec.preset == Preset::DRAPER_BEAUREGARD) return detail::build_draper_arch(spec);
    return detail::build_ripple_arch(spec);
}

inline Circuit build_architecture(const ArchitectureSpec& spec) { return build_modadd(spec); }

}  // namespace qarith
