#include "qarith/resources.hpp"

#include <gtest/gtest.h>

using namespace qarith;

TEST(Dyadic, Arithmetic) {
    EXPECT_EQ(Dyadic(3, 1) + Dyadic(1, 2), Dyadic(7, 2));  // 1.5 + 0.25
    EXPECT_EQ(Dyadic(4, 1), Dyadic(2));                    // normalization
    EXPECT_EQ(Dyadic(7, 1).str(), "3.5");
    EXPECT_EQ(Dyadic(5).str(), "5");
    EXPECT_TRUE(Dyadic(1, 1) < Dyadic(1));
    EXPECT_EQ(Dyadic(28).halved().str(), "14");
}

TEST(Counts, EmptyCircuitAllZero) {
    CircuitBuilder b(1);
    b.add_register("q", RegRole::Input, {0});
    b.set_semantic({"identity", 1});
    ResourceReport r = count_resources(b.seal());
    EXPECT_EQ(r.stat("toffoli"), 0);
    EXPECT_EQ(r.expect("x"), Dyadic(0));
}

TEST(Counts, CdkpmPlainAdderN4) {
    ResourceReport r = count_resources(build_plain_adder(AdderVariant::CDKPM, 4));
    EXPECT_EQ(r.stat("toffoli"), 8);
    EXPECT_EQ(r.stat("cnot"), 17);
}

TEST(Counts, GidneyPlainAdderN5) {
    ResourceReport r = count_resources(build_plain_adder(AdderVariant::GIDNEY, 5));
    EXPECT_EQ(r.stat("toffoli"), 5);
    EXPECT_EQ(r.stat("measure"), 5);
}

TEST(Counts, ExpectedEqualsStaticWithoutMeasurement) {
    for (const Circuit& c : {build_plain_adder(AdderVariant::CDKPM, 3),
                             build_plain_adder(AdderVariant::VBE, 3),
                             build_comparator(ComparatorVariant::CDKPM_HALF, 3)}) {
        ResourceReport r = count_resources(c);
        for (const auto& [k, v] : r.static_counts) EXPECT_EQ(r.expect(k), Dyadic(v)) << k;
    }
}

TEST(Counts, CondWeightsHalvePerLevel) {
    CircuitBuilder b(2);
    b.add_register("q", RegRole::Input, {0, 1});
    b.append(Gate::h(0));
    int32_t c0 = b.alloc_cbit();
    b.append(Gate::measure(0, c0));
    b.append(Gate::h(1));
    int32_t c1 = b.alloc_cbit();
    b.append(Gate::measure(1, c1));
    // x at depth 1, toffoli-free nested block at depth 2
    b.append(Gate::cond(c0, {Gate::x(0), Gate::cond(c1, {Gate::x(1)})}));
    b.set_semantic({"identity", 2});
    ResourceReport r = count_resources(b.seal());
    EXPECT_EQ(r.stat("x"), 2);
    EXPECT_EQ(r.expect("x"), Dyadic(1, 1) + Dyadic(1, 2));  // 1/2 + 1/4
}

TEST(Counts, MbuStructuralIdentity) {
    // expected = static_without_branch + 1/2 * branch, structurally, for
    // every MBU-wrapped architecture.
    for (Preset preset : {Preset::CDKPM_ALL, Preset::HYBRID}) {
        ArchitectureSpec spec{ModKind::MODADD, preset, 3, 7, 0, false};
        Circuit plain = build_modadd(spec);
        spec.mbu = true;
        Circuit wrapped = build_modadd(spec);
        ResourceReport rp = count_resources(plain);
        ResourceReport rw = count_resources(wrapped);
        // The branch holds exactly the final comparator (plus 2 H + 1 X).
        // Toffoli: static identical, expected drops by half the comparator.
        EXPECT_EQ(rw.stat("toffoli"), rp.stat("toffoli"));
        const int64_t comp_tof = preset == Preset::CDKPM_ALL ? 2 * 3 : 3;
        EXPECT_EQ(rw.expect("toffoli"), Dyadic(rp.stat("toffoli")) - Dyadic(comp_tof, 1));
    }
}

TEST(Audit, AncillasDeclaredAndRestored) {
    ArchitectureSpec spec{ModKind::MODADD, Preset::CDKPM_ALL, 3, 7, 0, false};
    Circuit c = build_modadd(spec);
    auto report = exhaustive_verify(c, Backend::Basis, BranchMode::all_forced());
    AncillaAudit audit = ancilla_audit(c, report);
    EXPECT_EQ(audit.declared, 6);  // n+3
    EXPECT_EQ(audit.restored, 6);
    ArchitectureSpec g{ModKind::MODADD, Preset::GIDNEY_ALL, 3, 7, 0, false};
    Circuit cg = build_modadd(g);
    auto rg = exhaustive_verify(cg, Backend::Basis, BranchMode::all_forced());
    AncillaAudit ag = ancilla_audit(cg, rg);
    EXPECT_EQ(ag.declared, 9);  // 2n+3
    EXPECT_EQ(ag.restored, 9);
    ArchitectureSpec h{ModKind::MODADD, Preset::HYBRID, 3, 7, 0, false};
    auto ch = build_modadd(h);
    EXPECT_EQ(ancilla_audit(ch, exhaustive_verify(ch, Backend::Basis, BranchMode::all_forced()))
                  .declared,
              6);
}

TEST(Formulas, NoDriftAnywhere) {
    // Every registered cell must come back exact, golden, or
    // discrepancy-documented; DRIFT means a builder changed silently.
    for (uint32_t n : {2u, 3u, 5u, 8u, 10u}) {
        const uint64_t p = (n == 2) ? 3 : (uint64_t(1) << n) - 1;
        for (auto [kind, preset] :
             std::vector<std::pair<ModKind, Preset>>{{ModKind::MODADD, Preset::CDKPM_ALL},
                                                     {ModKind::MODADD, Preset::GIDNEY_ALL},
                                                     {ModKind::MODADD, Preset::HYBRID},
                                                     {ModKind::MODADD, Preset::VBE_ALL},
                                                     {ModKind::CTRL_MODADD, Preset::CDKPM_ALL},
                                                     {ModKind::CTRL_MODADD, Preset::GIDNEY_ALL}}) {
            ArchitectureSpec spec{kind, preset, n, p, 0, false};
            Circuit plain = build_modadd(spec);
            spec.mbu = true;
            Circuit wrapped = build_modadd(spec);
            auto cells = check_formulas(mod_kind_name(kind), preset_name(preset), plain, wrapped,
                                        n, p, 0);
            EXPECT_FALSE(cells.empty());
            for (const auto& cell : cells)
                EXPECT_TRUE(cell.status.find("DRIFT") == std::string::npos)
                    << preset_name(preset) << " " << mod_kind_name(kind) << " n=" << n << " "
                    << cell.gate << " " << cell.status;
        }
    }
}

TEST(Formulas, CdkpmRowCells) {
    // n=4, p=11 (|p|=3): Toffoli 32, X 7 exact; CNOT documented at +1.
    ArchitectureSpec spec{ModKind::MODADD, Preset::CDKPM_ALL, 4, 11, 0, false};
    Circuit plain = build_modadd(spec);
    spec.mbu = true;
    Circuit wrapped = build_modadd(spec);
    auto cells = check_formulas("modadd", "cdkpm", plain, wrapped, 4, 11, 0);
    std::map<std::string, std::string> status;
    std::map<std::string, std::string> value;
    for (const auto& c : cells) {
        status[c.gate] = c.status;
        value[c.gate] = c.expected.str();
    }
    EXPECT_EQ(status["toffoli"], "exact");
    EXPECT_EQ(value["toffoli"], "32");
    EXPECT_EQ(status["toffoli(mbu)"], "exact");
    EXPECT_EQ(value["toffoli(mbu)"], "28");
    EXPECT_EQ(status["x"], "exact");
    EXPECT_EQ(value["x"], "7");  // 2|p|+1
    EXPECT_EQ(status["x(mbu)"], "exact");
    EXPECT_EQ(value["x(mbu)"], "7.5");
    EXPECT_EQ(status["cnot+cz"], "discrepancy-documented");
    EXPECT_EQ(value["cnot+cz"], "75");  // cited 74: the flag copy-out CNOT
    EXPECT_EQ(status["cnot+cz(mbu)"], "discrepancy-documented");
}

TEST(Formulas, EmptyRowListGivesHeaderOnly) {
    std::string csv = cells_to_csv({});
    EXPECT_EQ(csv, "preset,n,p,hamming_p,gate,static,expected_num,expected_den,status\n");
}

TEST(Formulas, CsvShape) {
    ArchitectureSpec spec{ModKind::MODADD, Preset::CDKPM_ALL, 4, 11, 0, false};
    Circuit plain = build_modadd(spec);
    spec.mbu = true;
    Circuit wrapped = build_modadd(spec);
    auto cells = check_formulas("modadd", "cdkpm", plain, wrapped, 4, 11, 0);
    std::string csv = cells_to_csv(cells);
    EXPECT_NE(csv.find("cdkpm,4,11,3,toffoli,32,32,1,exact"), std::string::npos) << csv;
}

TEST(Table, RendersAllRows) {
    std::string md = render_modadd_table({"cdkpm", "gidney", "hybrid", "vbe", "draper"}, 4, 11);
    EXPECT_NE(md.find("| cdkpm | 15 | 32 | 28 |"), std::string::npos) << md;
    EXPECT_NE(md.find("| gidney | 19 | 16 | 14 |"), std::string::npos) << md;
    EXPECT_NE(md.find("| hybrid | 15 | 24 | 22 |"), std::string::npos) << md;
    EXPECT_NE(md.find("draper"), std::string::npos);
}

TEST(Empirical, ExecutedToffoliMatchesExpectation) {
    // Mini version of the empirical criterion: seeded executed-gate tallies
    // track the expected counts (the acceptance suite runs the full 10k).
    ArchitectureSpec spec{ModKind::MODADD, Preset::CDKPM_ALL, 3, 7, 0, true};
    Circuit c = build_modadd(spec);
    ResourceReport r = count_resources(c);
    const double expected = r.expect("toffoli").as_double();
    double total = 0;
    const int trials = 2000;
    Rng inputs(5);
    for (int t = 0; t < trials; ++t) {
        uint64_t x = inputs.next_u64() % 7, y = inputs.next_u64() % 7;
        auto res = run_basis(c, {{"x", x}, {"y", y}}, MeasurePolicy::seeded(1000 + t));
        total += static_cast<double>(res.executed.of(GateKind::Toffoli));
    }
    double mean = total / trials;
    // branch toffolis = 6, sd = 3, se = 3/sqrt(2000) ~ 0.067
    EXPECT_NEAR(mean, expected, 3 * 3.0 / std::sqrt(double(trials)));
}
