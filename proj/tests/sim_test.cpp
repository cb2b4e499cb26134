#include <gtest/gtest.h>

#include "qarith/adders.hpp"
#include "qarith/sim_basis.hpp"
#include "qarith/sim_statevector.hpp"
#include "qarith/verify.hpp"

using namespace qarith;

namespace {

Circuit identity_circuit(uint32_t n) {
    CircuitBuilder b(n);
    std::vector<uint32_t> q(n);
    for (uint32_t i = 0; i < n; ++i) q[i] = i;
    b.add_register("q", RegRole::Input, q);
    b.set_semantic({"identity", n});
    return b.seal();
}

}  // namespace

TEST(BasisSim, IdentityKeepsValue) {
    Circuit c = identity_circuit(3);
    auto r = run_basis(c, {{"q", 5}}, MeasurePolicy::seeded(1));
    EXPECT_EQ(r.registers.at("q"), 5u);
    EXPECT_EQ(r.path_probability, Dyadic(1));
}

TEST(BasisSim, CdkpmAdderAddsFiveAndSix) {
    Circuit c = build_plain_adder(AdderVariant::CDKPM, 3);
    auto r = run_basis(c, {{"x", 5}, {"y", 6}}, MeasurePolicy::seeded(1));
    EXPECT_EQ(r.registers.at("y"), 11u);
    EXPECT_EQ(r.registers.at("x"), 5u);
    EXPECT_EQ(r.registers.at("carry"), 0u);
}

TEST(BasisSim, GidneyBranchIndependence) {
    Circuit c = build_plain_adder(AdderVariant::GIDNEY, 3);
    auto r1 = run_basis(c, {{"x", 7}, {"y", 7}}, MeasurePolicy::forced({1, 1, 1}));
    auto r0 = run_basis(c, {{"x", 7}, {"y", 7}}, MeasurePolicy::forced({0, 0, 0}));
    EXPECT_EQ(r1.registers.at("y"), 14u);
    EXPECT_EQ(r0.registers.at("y"), 14u);
    EXPECT_EQ(r1.registers.at("and"), 0u);
    EXPECT_EQ(r0.registers.at("and"), 0u);
}

TEST(BasisSim, RotationRejectedTowardStatevector) {
    Circuit c = build_plain_adder(AdderVariant::DRAPER, 2);
    try {
        run_basis(c, {{"x", 1}, {"y", 1}}, MeasurePolicy::seeded(1));
        FAIL() << "expected rejection";
    } catch (const BackendUnsupported& e) {
        EXPECT_NE(std::string(e.what()).find("statevector"), std::string::npos);
    }
}

TEST(BasisSim, ForcedListTooShort) {
    Circuit c = build_plain_adder(AdderVariant::GIDNEY, 3);
    EXPECT_THROW(run_basis(c, {{"x", 1}, {"y", 2}}, MeasurePolicy::forced({1})),
                 std::invalid_argument);
}

TEST(BasisSim, SeededRunsReproduce) {
    Circuit c = build_plain_adder(AdderVariant::GIDNEY, 4);
    auto a = run_basis(c, {{"x", 9}, {"y", 4}}, MeasurePolicy::seeded(42));
    auto b = run_basis(c, {{"x", 9}, {"y", 4}}, MeasurePolicy::seeded(42));
    EXPECT_EQ(a.cbits, b.cbits);
    EXPECT_EQ(a.registers, b.registers);
}

TEST(StatevectorSim, QftInverseIsIdentity) {
    const uint32_t n = 4;
    CircuitBuilder b(n);
    std::vector<uint32_t> q(n);
    for (uint32_t i = 0; i < n; ++i) q[i] = i;
    b.add_register("q", RegRole::Input, q);
    emit::append_to(b, emit::qft_seq(q, false));
    emit::append_to(b, emit::qft_seq(q, true));
    b.set_semantic({"identity", n});
    Circuit c = b.seal();
    for (uint64_t y = 0; y < 16; ++y) {
        auto r = run_statevector(c, {{"q", y}}, MeasurePolicy::seeded(0));
        EXPECT_GE(StatevectorSimulator::basis_amplitude(c, r, {{"q", y}}), 1.0 - 1e-10);
    }
}

TEST(StatevectorSim, DraperAdder) {
    Circuit c = build_plain_adder(AdderVariant::DRAPER, 3);
    auto r = run_statevector(c, {{"x", 2}, {"y", 3}}, MeasurePolicy::seeded(0));
    EXPECT_GE(StatevectorSimulator::basis_amplitude(c, r, {{"x", 2}, {"y", 5}}), 1.0 - 1e-9);
}

TEST(StatevectorSim, NormStableOverLongCircuits) {
    // 1e5 gates on 6 qubits; the backend throws if the norm drifts past 1e-12.
    const uint32_t n = 6;
    CircuitBuilder b(n);
    std::vector<uint32_t> q(n);
    for (uint32_t i = 0; i < n; ++i) q[i] = i;
    b.add_register("q", RegRole::Input, q);
    Rng rng(7);
    for (int i = 0; i < 100000; ++i) {
        uint32_t a = static_cast<uint32_t>(rng.next_u64() % n);
        uint32_t c2 = static_cast<uint32_t>(rng.next_u64() % n);
        switch (rng.next_u64() % 4) {
            case 0: b.append(Gate::h(a)); break;
            case 1: b.append(Gate::rot(a, 3, 5, rng.coin() ? 1 : -1)); break;
            case 2:
                if (a != c2) b.append(Gate::cnot(a, c2));
                break;
            default:
                if (a != c2) b.append(Gate::crot(a, c2, 1, 3, 1));
        }
    }
    b.set_semantic({"identity", n});
    Circuit c = b.seal();
    EXPECT_NO_THROW(run_statevector(c, {{"q", 0}}, MeasurePolicy::seeded(0)));
}

TEST(StatevectorSim, ForcedEntriesOnlyConsumedAtBranchPoints) {
    // A deterministic measurement (here of a qubit returned to |0> by H,H)
    // can never realize a zero-amplitude forced outcome: forcing is defined
    // at genuine branch points only, so the entry stays untouched and is
    // available for the following fair coin.
    CircuitBuilder b(2);
    b.add_register("q", RegRole::Input, {0, 1});
    b.append(Gate::h(0));
    b.append(Gate::h(0));
    b.append(Gate::measure(0, b.alloc_cbit()));  // deterministic 0
    b.append(Gate::h(1));
    b.append(Gate::measure(1, b.alloc_cbit()));  // fair coin
    b.set_semantic({"identity", 2});
    Circuit c = b.seal();
    auto r = run_statevector(c, {{"q", 0}}, MeasurePolicy::forced({1}));
    EXPECT_EQ(r.cbits[0], 0);
    EXPECT_EQ(r.cbits[1], 1);  // the single forced entry fed the coin
    EXPECT_EQ(r.coins_used, 1u);
    EXPECT_THROW(run_statevector(c, {{"q", 0}}, MeasurePolicy::forced({})),
                 std::invalid_argument);
}

// Criterion: the two backends agree on every measurement-free circuit.
TEST(CrossBackend, AgreeOnMeasurementFreeCircuits) {
    for (uint32_t n = 1; n <= 3; ++n) {
        std::vector<Circuit> circuits = {
            build_plain_adder(AdderVariant::CDKPM, n),
            build_plain_adder(AdderVariant::VBE, n),
            build_subtractor(AdderVariant::CDKPM, n, SubtractMethod::Adjoint),
            build_subtractor(AdderVariant::VBE, n, SubtractMethod::OnesComplementWrap),
        };
        for (const Circuit& c : circuits) {
            for (uint64_t x = 0; x < (uint64_t(1) << n); ++x) {
                for (uint64_t y = 0; y < (uint64_t(1) << n); ++y) {
                    auto rb = run_basis(c, {{"x", x}, {"y", y}}, MeasurePolicy::seeded(0));
                    auto rs = run_statevector(c, {{"x", x}, {"y", y}}, MeasurePolicy::seeded(0));
                    std::map<std::string, uint64_t> target = rb.registers;
                    ASSERT_GE(StatevectorSimulator::basis_amplitude(c, rs, target), 1.0 - 1e-9)
                        << c.semantic().op << " n=" << n << " x=" << x << " y=" << y;
                }
            }
        }
    }
}

TEST(Verify, CdkpmAdderSweep) {
    Circuit c = build_plain_adder(AdderVariant::CDKPM, 3);
    auto report = exhaustive_verify(c, Backend::Basis, BranchMode::all_forced());
    EXPECT_TRUE(report.pass()) << (report.failures.empty() ? "" : report.failures[0].what);
    EXPECT_EQ(report.inputs_checked, 64u);
}

TEST(Verify, CorruptedCircuitYieldsCounterexample) {
    Circuit c = build_plain_adder(AdderVariant::CDKPM, 3);
    std::vector<Gate> gates = c.gates();
    for (size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].kind == GateKind::Cnot) {
            gates.erase(gates.begin() + i);  // drop one CNOT
            break;
        }
    }
    Circuit broken = c.with_gates(std::move(gates));
    auto report = exhaustive_verify(broken, Backend::Basis, BranchMode::all_forced());
    EXPECT_FALSE(report.pass());
    EXPECT_FALSE(report.failures.empty());
}

TEST(Verify, BudgetGuard) {
    Circuit c = build_plain_adder(AdderVariant::CDKPM, 3);
    EXPECT_THROW(exhaustive_verify(c, Backend::Basis, BranchMode::all_forced(), 16),
                 std::invalid_argument);
}

TEST(Verify, ReportSerializes) {
    Circuit c = build_plain_adder(AdderVariant::CDKPM, 2);
    auto report = exhaustive_verify(c, Backend::Basis, BranchMode::all_forced());
    Json j = verify_report_to_json(report);
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_EQ(j.at("inputs_checked").get<uint64_t>(), 16u);
}
