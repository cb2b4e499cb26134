#include "qarith/modular.hpp"

#include <gtest/gtest.h>

#include "qarith/resources.hpp"
#include "qarith/verify.hpp"

using namespace qarith;

namespace {

void expect_pass(const Circuit& c, Backend backend = Backend::Basis,
                 BranchMode mode = BranchMode::all_forced()) {
    auto report = exhaustive_verify(c, backend, mode);
    ASSERT_TRUE(report.pass()) << c.semantic().op << " (mbu=" << c.semantic().mbu
                               << "): " << report.failures[0].what;
}

uint64_t pick_p(uint32_t n) { return n == 2 ? 3 : (n == 3 ? 7 : 11); }

}  // namespace

TEST(Modadd, ExamplesFromOracle) {
    ArchitectureSpec spec{ModKind::MODADD, Preset::CDKPM_ALL, 3, 7, 0, false};
    Circuit c = build_modadd(spec);
    auto r = run_basis(c, {{"x", 5}, {"y", 4}}, MeasurePolicy::seeded(0));
    EXPECT_EQ(r.registers.at("y"), 2u);  // (5+4) mod 7
    EXPECT_EQ(r.registers.at("x"), 5u);
    auto z = run_basis(c, {{"x", 0}, {"y", 0}}, MeasurePolicy::seeded(0));
    EXPECT_EQ(z.registers.at("y"), 0u);
}

TEST(Modadd, ExhaustiveAllPresetsSmallN) {
    for (uint32_t n : {2u, 3u}) {
        for (uint64_t p : {uint64_t(1) << (n - 1), pick_p(n), (uint64_t(1) << n) - 1}) {
            for (bool mbu : {false, true}) {
                for (Preset preset : {Preset::CDKPM_ALL, Preset::GIDNEY_ALL, Preset::HYBRID,
                                      Preset::VBE_ALL}) {
                    ArchitectureSpec spec{ModKind::MODADD, preset, n, p, 0, mbu};
                    expect_pass(build_modadd(spec));
                }
                ArchitectureSpec dr{ModKind::MODADD, Preset::DRAPER_BEAUREGARD, n, p, 0, mbu};
                expect_pass(build_modadd(dr), Backend::Statevector);
            }
        }
    }
}

TEST(Modadd, SampledAtN4) {
    for (Preset preset : {Preset::CDKPM_ALL, Preset::GIDNEY_ALL, Preset::HYBRID}) {
        for (bool mbu : {false, true}) {
            ArchitectureSpec spec{ModKind::MODADD, preset, 4, 11, 0, mbu};
            expect_pass(build_modadd(spec), Backend::Basis, BranchMode::sampled(17, 9));
        }
    }
}

TEST(Modadd, ResultAlwaysBelowP) {
    ArchitectureSpec spec{ModKind::MODADD, Preset::HYBRID, 3, 5, 0, false};
    Circuit c = build_modadd(spec);
    for (uint64_t x = 0; x < 5; ++x)
        for (uint64_t y = 0; y < 5; ++y) {
            auto r = run_basis(c, {{"x", x}, {"y", y}}, MeasurePolicy::seeded(1));
            EXPECT_LT(r.registers.at("y"), 5u);
        }
}

TEST(Modadd, ToffoliAndAncillaCounts) {
    for (uint32_t n = 2; n <= 10; ++n) {
        const uint64_t p = (uint64_t(1) << n) - 1;
        ResourceReport cd = count_resources(
            build_modadd({ModKind::MODADD, Preset::CDKPM_ALL, n, p, 0, false}));
        EXPECT_EQ(cd.stat("toffoli"), 8 * n);
        EXPECT_EQ(cd.ancilla_count, n + 3);
        ResourceReport gd = count_resources(
            build_modadd({ModKind::MODADD, Preset::GIDNEY_ALL, n, p, 0, false}));
        EXPECT_EQ(gd.stat("toffoli"), 4 * n);
        EXPECT_EQ(gd.ancilla_count, 2 * n + 3);
        ResourceReport hy = count_resources(
            build_modadd({ModKind::MODADD, Preset::HYBRID, n, p, 0, false}));
        EXPECT_EQ(hy.stat("toffoli"), 6 * n);
        EXPECT_EQ(hy.ancilla_count, n + 3);
    }
}

TEST(Modadd, MbuExpectedCounts) {
    for (uint32_t n = 2; n <= 10; ++n) {
        const uint64_t p = (uint64_t(1) << n) - 1;
        ResourceReport cd = count_resources(
            build_modadd({ModKind::MODADD, Preset::CDKPM_ALL, n, p, 0, true}));
        EXPECT_EQ(cd.expect("toffoli"), Dyadic(7 * n));
        ResourceReport gd = count_resources(
            build_modadd({ModKind::MODADD, Preset::GIDNEY_ALL, n, p, 0, true}));
        EXPECT_EQ(gd.expect("toffoli"), Dyadic(7 * n, 1));  // 3.5n
        ResourceReport hy = count_resources(
            build_modadd({ModKind::MODADD, Preset::HYBRID, n, p, 0, true}));
        EXPECT_EQ(hy.expect("toffoli"), Dyadic(11 * n, 1));  // 5.5n
    }
}

TEST(Modadd, MbuDoesNotChangeBehavior) {
    // Identical verify reports with and without the wrap.
    for (Preset preset : {Preset::CDKPM_ALL, Preset::GIDNEY_ALL, Preset::HYBRID}) {
        ArchitectureSpec spec{ModKind::MODADD, preset, 3, 7, 0, false};
        auto plain = exhaustive_verify(build_modadd(spec), Backend::Basis, BranchMode::all_forced());
        spec.mbu = true;
        auto wrapped = exhaustive_verify(build_modadd(spec), Backend::Basis, BranchMode::all_forced());
        EXPECT_TRUE(plain.pass() && wrapped.pass());
        EXPECT_EQ(plain.inputs_checked, wrapped.inputs_checked);
    }
}

TEST(Modadd, DraperBlockTallies) {
    ArchitectureSpec spec{ModKind::MODADD, Preset::DRAPER_BEAUREGARD, 4, 11, 0, false};
    ResourceReport r = count_resources(build_modadd(spec));
    EXPECT_EQ(r.block("QFT"), 3);
    EXPECT_EQ(r.block("IQFT"), 3);
    EXPECT_EQ(r.stat("cnot"), 2);
    EXPECT_EQ(r.block("Phi_ADD"), 2);
    EXPECT_EQ(r.block("Phi_SUB"), 1);
    EXPECT_EQ(r.block("Phi_ADD_CONST"), 1);
    EXPECT_EQ(r.block("Phi_SUB_CONST"), 1);
    EXPECT_EQ(r.block("C_Phi_SUB_CONST"), 1);
    EXPECT_EQ(r.ancilla_count, 2);
    EXPECT_EQ(r.stat("toffoli"), 0);

    spec.mbu = true;
    ResourceReport m = count_resources(build_modadd(spec));
    EXPECT_EQ(m.expect_block("QFT"), Dyadic(5, 1));   // 2.5
    EXPECT_EQ(m.expect_block("IQFT"), Dyadic(5, 1));  // 2.5
    EXPECT_EQ(m.expect("cnot"), Dyadic(3, 1));        // 1.5
    EXPECT_EQ(m.expect_block("Phi_ADD"), Dyadic(3, 1));
    EXPECT_EQ(m.expect_block("Phi_SUB"), Dyadic(1, 1));
}

TEST(CtrlModadd, Exhaustive) {
    for (uint32_t n : {2u, 3u}) {
        const uint64_t p = pick_p(n);
        for (bool mbu : {false, true}) {
            for (Preset preset : {Preset::CDKPM_ALL, Preset::GIDNEY_ALL}) {
                ArchitectureSpec spec{ModKind::CTRL_MODADD, preset, n, p, 0, mbu};
                expect_pass(build_modadd(spec));
            }
        }
    }
}

TEST(CtrlModadd, Example) {
    ArchitectureSpec spec{ModKind::CTRL_MODADD, Preset::CDKPM_ALL, 3, 5, 0, false};
    Circuit c = build_modadd(spec);
    auto r = run_basis(c, {{"c", 1}, {"x", 4}, {"y", 3}}, MeasurePolicy::seeded(0));
    EXPECT_EQ(r.registers.at("y"), 2u);  // (4+3) mod 5
    auto off = run_basis(c, {{"c", 0}, {"x", 4}, {"y", 3}}, MeasurePolicy::seeded(0));
    EXPECT_EQ(off.registers.at("y"), 3u);
}

TEST(CtrlModadd, Counts) {
    for (uint32_t n = 2; n <= 10; ++n) {
        const uint64_t p = (uint64_t(1) << n) - 1;
        ResourceReport cd = count_resources(
            build_modadd({ModKind::CTRL_MODADD, Preset::CDKPM_ALL, n, p, 0, false}));
        EXPECT_EQ(cd.stat("toffoli"), 9 * n + 1);
        EXPECT_EQ(cd.ancilla_count, n + 3);
        ResourceReport gd = count_resources(
            build_modadd({ModKind::CTRL_MODADD, Preset::GIDNEY_ALL, n, p, 0, false}));
        EXPECT_EQ(gd.stat("toffoli"), 5 * n + 1);
        EXPECT_EQ(gd.ancilla_count, 2 * n + 3);
        // Expected counts under MBU: 8n + 1/2 and 4.5n + 1/2.
        ResourceReport cm = count_resources(
            build_modadd({ModKind::CTRL_MODADD, Preset::CDKPM_ALL, n, p, 0, true}));
        EXPECT_EQ(cm.expect("toffoli"), Dyadic(16 * n + 1, 1));
        ResourceReport gm = count_resources(
            build_modadd({ModKind::CTRL_MODADD, Preset::GIDNEY_ALL, n, p, 0, true}));
        EXPECT_EQ(gm.expect("toffoli"), Dyadic(9 * n + 1, 1));
    }
    ResourceReport c4 = count_resources(
        build_modadd({ModKind::CTRL_MODADD, Preset::CDKPM_ALL, 4, 11, 0, false}));
    EXPECT_EQ(c4.stat("toffoli"), 37);  // 9n+1
    ResourceReport g6 = count_resources(
        build_modadd({ModKind::CTRL_MODADD, Preset::GIDNEY_ALL, 6, 43, 0, false}));
    EXPECT_EQ(g6.stat("toffoli"), 31);  // 5n+1
}

TEST(ConstModadd, ExhaustiveBothArchitectures) {
    for (uint32_t n : {2u, 3u}) {
        const uint64_t p = pick_p(n);
        for (uint64_t a = 0; a < p; ++a) {
            for (bool mbu : {false, true}) {
                expect_pass(build_modadd({ModKind::CONST_MODADD_VBE, Preset::CDKPM_ALL, n, p, a, mbu}));
                expect_pass(build_modadd(
                    {ModKind::CONST_MODADD_TAKAHASHI, Preset::CDKPM_ALL, n, p, a, mbu}));
                expect_pass(build_modadd({ModKind::CONST_MODADD_TAKAHASHI, Preset::GIDNEY_ALL, n, p, a, mbu}));
            }
        }
    }
}

TEST(ConstModadd, IdentityWhenAZero) {
    Circuit c = build_modadd({ModKind::CONST_MODADD_TAKAHASHI, Preset::CDKPM_ALL, 3, 5, 0, false});
    for (uint64_t x = 0; x < 5; ++x) {
        auto r = run_basis(c, {{"y", x}}, MeasurePolicy::seeded(0));
        EXPECT_EQ(r.registers.at("y"), x);
    }
}

TEST(ConstModadd, Example) {
    Circuit c = build_modadd({ModKind::CONST_MODADD_TAKAHASHI, Preset::CDKPM_ALL, 3, 5, 3, false});
    auto r = run_basis(c, {{"y", 4}}, MeasurePolicy::seeded(0));
    EXPECT_EQ(r.registers.at("y"), 2u);  // (4+3) mod 5
}

TEST(ConstModadd, TakahashiCounts) {
    for (uint32_t n = 2; n <= 10; ++n) {
        const uint64_t p = (uint64_t(1) << n) - 1;
        ResourceReport r = count_resources(
            build_modadd({ModKind::CONST_MODADD_TAKAHASHI, Preset::CDKPM_ALL, n, p, 2, false}));
        EXPECT_EQ(r.stat("toffoli"), 6 * n);
        ResourceReport m = count_resources(
            build_modadd({ModKind::CONST_MODADD_TAKAHASHI, Preset::CDKPM_ALL, n, p, 2, true}));
        EXPECT_EQ(m.expect("toffoli"), Dyadic(5 * n));
    }
    ResourceReport t4 = count_resources(
        build_modadd({ModKind::CONST_MODADD_TAKAHASHI, Preset::CDKPM_ALL, 4, 11, 6, false}));
    EXPECT_EQ(t4.stat("toffoli"), 24);
    ResourceReport t4m = count_resources(
        build_modadd({ModKind::CONST_MODADD_TAKAHASHI, Preset::CDKPM_ALL, 4, 11, 6, true}));
    EXPECT_EQ(t4m.expect("toffoli"), Dyadic(20));
}

TEST(ConstModadd, VbeArchitectureCounts) {
    for (uint32_t n = 2; n <= 10; ++n) {
        const uint64_t p = (uint64_t(1) << n) - 1;
        ResourceReport r = count_resources(
            build_modadd({ModKind::CONST_MODADD_VBE, Preset::CDKPM_ALL, n, p, 2, false}));
        EXPECT_EQ(r.stat("toffoli"), 8 * n);
        ResourceReport m = count_resources(
            build_modadd({ModKind::CONST_MODADD_VBE, Preset::CDKPM_ALL, n, p, 2, true}));
        EXPECT_EQ(m.expect("toffoli"), Dyadic(7 * n));
    }
}

TEST(CtrlConstModadd, ExhaustiveVbeAndBeauregard) {
    for (uint32_t n : {2u, 3u}) {
        const uint64_t p = pick_p(n);
        for (uint64_t a : {uint64_t(0), p - 1, p / 2}) {
            for (bool mbu : {false, true}) {
                expect_pass(build_modadd(
                    {ModKind::CTRL_CONST_MODADD_VBE, Preset::CDKPM_ALL, n, p, a, mbu}));
                expect_pass(build_modadd({ModKind::CTRL_CONST_MODADD_BEAUREGARD,
                                          Preset::DRAPER_BEAUREGARD, n, p, a, mbu}),
                            Backend::Statevector);
            }
        }
    }
}

TEST(CtrlConstModadd, Example) {
    Circuit c = build_modadd(
        {ModKind::CTRL_CONST_MODADD_BEAUREGARD, Preset::DRAPER_BEAUREGARD, 3, 7, 6, false});
    auto r = run_statevector(c, {{"c", 1}, {"y", 6}}, MeasurePolicy::seeded(0));
    EXPECT_GE(StatevectorSimulator::basis_amplitude(c, r, {{"c", 1}, {"y", 5}}), 1.0 - 1e-9);
    auto off = run_statevector(c, {{"c", 0}, {"y", 6}}, MeasurePolicy::seeded(0));
    EXPECT_GE(StatevectorSimulator::basis_amplitude(c, off, {{"c", 0}, {"y", 6}}), 1.0 - 1e-9);
}

TEST(CtrlConstModadd, BeauregardBlockTally) {
    Circuit c = build_modadd(
        {ModKind::CTRL_CONST_MODADD_BEAUREGARD, Preset::DRAPER_BEAUREGARD, 4, 11, 5, false});
    ResourceReport r = count_resources(c);
    EXPECT_EQ(r.block("QFT"), 3);
    EXPECT_EQ(r.block("IQFT"), 3);
    EXPECT_EQ(r.stat("cnot"), 2);
    EXPECT_EQ(r.ancilla_count, 2);
    EXPECT_EQ(r.stat("toffoli"), 0);
}

TEST(CtrlConstModadd, VbeCounts) {
    for (uint32_t n = 2; n <= 10; ++n) {
        const uint64_t p = (uint64_t(1) << n) - 1;
        ResourceReport r = count_resources(
            build_modadd({ModKind::CTRL_CONST_MODADD_VBE, Preset::CDKPM_ALL, n, p, 2, false}));
        EXPECT_EQ(r.stat("toffoli"), 8 * n);
        ResourceReport m = count_resources(
            build_modadd({ModKind::CTRL_CONST_MODADD_VBE, Preset::CDKPM_ALL, n, p, 2, true}));
        EXPECT_EQ(m.expect("toffoli"), Dyadic(7 * n));
    }
}

TEST(InRange, Exhaustive) {
    for (uint32_t n : {2u, 3u}) {
        for (bool mbu : {false, true}) {
            expect_pass(build_in_range(n, ComparatorVariant::CDKPM_HALF, mbu));
            expect_pass(build_in_range(n, ComparatorVariant::GIDNEY_HALF, mbu));
        }
    }
}

TEST(InRange, BoundariesExcluded) {
    Circuit c = build_in_range(3, ComparatorVariant::CDKPM_HALF, false);
    auto at_y = run_basis(c, {{"x", 3}, {"y", 3}, {"z", 5}, {"t", 0}}, MeasurePolicy::seeded(0));
    EXPECT_EQ(at_y.registers.at("t"), 0u);
    auto inside = run_basis(c, {{"x", 3}, {"y", 1}, {"z", 5}, {"t", 0}}, MeasurePolicy::seeded(0));
    EXPECT_EQ(inside.registers.at("t"), 1u);
}

TEST(InRange, ExpectedSavings) {
    // Static 2r + r'; expected 1.5r + r' with MBU: the saving is r/2.
    for (uint32_t n = 2; n <= 10; ++n) {
        ResourceReport st = count_resources(build_in_range(n, ComparatorVariant::CDKPM_HALF, false));
        ResourceReport ex = count_resources(build_in_range(n, ComparatorVariant::CDKPM_HALF, true));
        EXPECT_EQ(st.stat("toffoli"), 2 * (2 * n) + (2 * n + 1));
        EXPECT_EQ(ex.expect("toffoli"), Dyadic(3 * n) + Dyadic(2 * n + 1));  // 1.5r + r'
        EXPECT_EQ(st.stat("toffoli") - (3 * n + 2 * n + 1), n);  // saving r/2 = n
    }
}

TEST(Spec, ValidationErrors) {
    EXPECT_THROW(build_modadd({ModKind::MODADD, Preset::CDKPM_ALL, 0, 1, 0, false}),
                 std::invalid_argument);
    EXPECT_THROW(build_modadd({ModKind::MODADD, Preset::CDKPM_ALL, 3, 0, 0, false}),
                 std::invalid_argument);
    EXPECT_THROW(build_modadd({ModKind::MODADD, Preset::CDKPM_ALL, 3, 8, 0, false}),
                 std::invalid_argument);
    EXPECT_THROW(build_modadd({ModKind::CONST_MODADD_VBE, Preset::CDKPM_ALL, 3, 5, 5, false}),
                 std::invalid_argument);
    EXPECT_THROW(build_modadd({ModKind::CTRL_MODADD, Preset::HYBRID, 3, 5, 0, false}),
                 std::invalid_argument);
}

TEST(Spec, SubroutineSlotGuard) {
    // Plugging a non-comparator where the uncompute slot expects one is
    // rejected at wrap time (the descriptor/shape check).
    Circuit adder = build_plain_adder(AdderVariant::CDKPM, 2);
    EXPECT_THROW(wrap_final_uncompute(adder, 0), std::invalid_argument);
}
