// Builds a modular adder with and without measurement-based uncomputation,
// verifies both exhaustively against the classical oracle, and prints the
// resource summary.

#include <iostream>

#include "qarith/modular.hpp"
#include "qarith/resources.hpp"
#include "qarith/verify.hpp"

using namespace qarith;

int main() {
    ArchitectureSpec spec{ModKind::MODADD, Preset::HYBRID, 3, 7, 0, false};
    for (bool mbu : {false, true}) {
        spec.mbu = mbu;
        Circuit c = build_modadd(spec);
        VerifyReport report = exhaustive_verify(c, Backend::Basis, BranchMode::all_forced());
        ResourceReport r = count_resources(c);
        std::cout << "hybrid modadd n=3 p=7" << (mbu ? " (mbu)" : "") << ": "
                  << (report.pass() ? "verified" : "FAILED") << " over " << report.inputs_checked
                  << " inputs / " << report.branches_checked << " paths; Toffoli static "
                  << r.stat("toffoli") << ", expected " << r.expect("toffoli").str()
                  << ", ancillas " << r.ancilla_count << "\n";
        if (!report.pass()) return 1;
    }
    return 0;
}
