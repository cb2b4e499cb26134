#include "qarith/mbu.hpp"

#include <gtest/gtest.h>

#include "qarith/modular.hpp"
#include "qarith/resources.hpp"
#include "qarith/verify.hpp"

using namespace qarith;

namespace {

// Builds a test circuit: |support>|g> --mbu--> |support>|0>, where u_g XORs
// the parity of a subset of support qubits into g.
Circuit parity_mbu_circuit(uint32_t support, uint64_t mask) {
    CircuitBuilder b(support + 1);
    std::vector<uint32_t> S(support);
    for (uint32_t i = 0; i < support; ++i) S[i] = i;
    uint32_t g = support;
    b.add_register("s", RegRole::Input, S);
    b.add_register("g", RegRole::Ancilla, {g});
    GateSeq ug;
    for (uint32_t i = 0; i < support; ++i)
        if ((mask >> i) & 1) emit::add(ug, Gate::cnot(S[i], g));
    emit::append_to(b, mbu_uncompute(MbuSite{g, ug}, b));
    b.set_semantic({"identity", support});
    return b.seal();
}

}  // namespace

TEST(MbuFragment, StaticShape) {
    Circuit c = parity_mbu_circuit(2, 0b11);
    ResourceReport r = count_resources(c);
    EXPECT_EQ(r.stat("h"), 1 + 2);              // one unconditional, two in branch
    EXPECT_EQ(r.stat("measure"), 1);
    EXPECT_EQ(r.stat("x"), 1);                  // branch X
    EXPECT_EQ(r.expect("h"), Dyadic(1) + Dyadic(2, 1));
    EXPECT_EQ(r.expect("x"), Dyadic(1, 1));
    EXPECT_EQ(r.block("MBU_BRANCH"), 1);
}

TEST(MbuFragment, ForcedZeroLeavesGClear) {
    Circuit c = parity_mbu_circuit(2, 0b01);
    // Prepare g = parity of support by hand: support = 1 -> g = 1.
    CircuitBuilder b(3);
    b.add_register("s", RegRole::Input, {0, 1});
    b.add_register("g", RegRole::Ancilla, {2});
    b.append(Gate::cnot(0, 2));
    GateSeq ug{Gate::cnot(0, 2)};
    emit::append_to(b, mbu_uncompute(MbuSite{2, ug}, b));
    b.set_semantic({"identity", 2});
    Circuit full = b.seal();
    for (int outcome : {0, 1}) {
        for (uint64_t s = 0; s < 4; ++s) {
            auto r = run_basis(full, {{"s", s}}, MeasurePolicy::forced({outcome}));
            EXPECT_EQ(r.registers.at("g"), 0u) << "s=" << s << " outcome=" << outcome;
            EXPECT_EQ(r.registers.at("s"), s);
            EXPECT_EQ(r.path_probability, Dyadic(1, 1));
        }
    }
}

TEST(MbuLemma, BellStateWithCnotUg) {
    // (|00> + |11>)/sqrt(2), U_g = CNOT, forced outcome 1 -> (|0>+|1>)/sqrt2 x |0>.
    CircuitBuilder b(2);
    b.add_register("s", RegRole::Input, {0});
    b.add_register("g", RegRole::Ancilla, {1});
    GateSeq ug{Gate::cnot(0, 1)};
    emit::append_to(b, mbu_uncompute(MbuSite{1, ug}, b));
    b.set_semantic({"identity", 1});
    Circuit c = b.seal();
    const double inv = 1.0 / std::sqrt(2.0);
    std::vector<StatevectorSimulator::Amp> bell(4, 0);
    bell[0b00] = inv;
    bell[0b11] = inv;
    for (int outcome : {0, 1}) {
        StatevectorSimulator sim(c, MeasurePolicy::forced({outcome}));
        auto r = sim.run_state(bell);
        std::vector<StatevectorSimulator::Amp> want(4, 0);
        want[0b00] = inv;
        want[0b01] = inv;  // qubit 0 in (|0>+|1>)/sqrt2, g cleared
        EXPECT_GE(StatevectorSimulator::fidelity(want, r.state), 1.0 - 1e-10) << outcome;
    }
}

TEST(MbuLemma, RandomSuperpositions) {
    // 200 random inputs sum alpha_x |x>|g(x)>, both forced outcomes; final
    // state must be sum alpha_x |x>|0> with fidelity >= 1 - 1e-10.
    Rng rng(20240817);
    int cases = 0;
    for (uint32_t support = 1; support <= 4; ++support) {
        for (int rep = 0; rep < 25; ++rep) {
            const uint64_t mask = 1 + (rng.next_u64() % ((1u << support) - 1));
            Circuit c = parity_mbu_circuit(support, mask);
            const size_t dim = size_t(1) << (support + 1);
            std::vector<StatevectorSimulator::Amp> in(dim, 0), want(dim, 0);
            double norm = 0;
            std::vector<std::complex<double>> alpha(size_t(1) << support);
            for (auto& a : alpha) {
                a = {rng.uniform() - 0.5, rng.uniform() - 0.5};
                norm += std::norm(a);
            }
            norm = std::sqrt(norm);
            for (size_t x = 0; x < alpha.size(); ++x) {
                alpha[x] /= norm;
                int g = hamming_weight(uint64_t(x) & mask) & 1;
                in[x | (size_t(g) << support)] = alpha[x];
                want[x] = alpha[x];
            }
            for (int outcome : {0, 1}) {
                StatevectorSimulator sim(c, MeasurePolicy::forced({outcome}));
                auto r = sim.run_state(in);
                ASSERT_GE(StatevectorSimulator::fidelity(want, r.state), 1.0 - 1e-10)
                    << "support=" << support << " mask=" << mask << " outcome=" << outcome;
                ++cases;
            }
        }
    }
    EXPECT_GE(cases, 200);
}

TEST(MbuLemma, OutcomeFrequencyIsFair) {
    // Over 10,000 seeded runs the measured-1 frequency sits in 0.5 +- 0.02.
    CircuitBuilder b(2);
    b.add_register("s", RegRole::Input, {0});
    b.add_register("g", RegRole::Ancilla, {1});
    b.append(Gate::cnot(0, 1));
    GateSeq ug{Gate::cnot(0, 1)};
    emit::append_to(b, mbu_uncompute(MbuSite{1, ug}, b));
    b.set_semantic({"identity", 1});
    Circuit c = b.seal();
    int ones = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        auto r = run_basis(c, {{"s", uint64_t(t & 1)}}, MeasurePolicy::seeded(9000 + t));
        ones += r.cbits[0];
        ASSERT_EQ(r.registers.at("g"), 0u);
    }
    double freq = double(ones) / trials;
    EXPECT_GT(freq, 0.48);
    EXPECT_LT(freq, 0.52);
}

TEST(MbuWrap, ExpectedToffoliDrop) {
    ArchitectureSpec spec{ModKind::MODADD, Preset::CDKPM_ALL, 4, 11, 0, false};
    Circuit plain = build_modadd(spec);
    Circuit wrapped = wrap_final_uncompute(plain);
    ResourceReport rp = count_resources(plain);
    ResourceReport rw = count_resources(wrapped);
    EXPECT_EQ(rp.stat("toffoli"), 32);            // 8n
    EXPECT_EQ(rw.expect("toffoli"), Dyadic(28));  // 7n
    EXPECT_TRUE(wrapped.semantic().mbu);
}

TEST(MbuWrap, WrappingTwiceFails) {
    ArchitectureSpec spec{ModKind::MODADD, Preset::CDKPM_ALL, 3, 7, 0, false};
    Circuit wrapped = wrap_final_uncompute(build_modadd(spec));
    EXPECT_THROW(wrap_final_uncompute(wrapped), std::invalid_argument);
}

TEST(MbuWrap, GidneyNeedsWhitelist) {
    ArchitectureSpec spec{ModKind::MODADD, Preset::GIDNEY_ALL, 3, 7, 0, false};
    Circuit plain = build_modadd(spec);
    EXPECT_THROW(wrap_final_uncompute(plain), std::invalid_argument);
    Circuit wrapped = wrap_final_uncompute(plain, std::nullopt, /*phase_exact=*/true);
    ResourceReport rw = count_resources(wrapped);
    EXPECT_EQ(rw.expect("toffoli"), Dyadic(21, 1));  // 3.5n at n=3
}

TEST(MbuWrap, MissingBlockFails) {
    Circuit adder = build_plain_adder(AdderVariant::CDKPM, 2);
    EXPECT_THROW(wrap_final_uncompute(adder, 0), std::invalid_argument);
}

TEST(MbuWrap, RejectsUgControlledByG) {
    CircuitBuilder b(2);
    b.add_register("s", RegRole::Input, {0});
    b.add_register("g", RegRole::Ancilla, {1});
    GateSeq bad{Gate::cnot(1, 0)};  // G used as control
    EXPECT_THROW(mbu_uncompute(MbuSite{1, bad}, b), std::invalid_argument);
}
