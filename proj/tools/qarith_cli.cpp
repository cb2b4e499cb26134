// Command-line surface: build circuits to JSON, simulate them, verify them
// exhaustively against the classical oracle, count resources, and render the
// modular-addition cost table.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parameter error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qarith/modular.hpp"
#include "qarith/resources.hpp"
#include "qarith/serialize.hpp"
#include "qarith/verify.hpp"

using namespace qarith;

namespace {

uint64_t parse_number(const std::string& text) {
    if (text.rfind("0b", 0) == 0) return BitString::parse(text).to_uint();
    return std::stoull(text);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct BuildFlags {
    std::string kind;
    std::string arch = "cdkpm";
    uint32_t n = 0;
    std::string p_text, a_text;
    bool mbu = false;

    void attach(CLI::App* cmd, bool kind_required = true) {
        auto* k = cmd->add_option("--kind", kind,
                                  "circuit kind (plain-add, ctrl-add, const-add, ctrl-const-add, "
                                  "sub, comp, ctrl-comp, const-comp, ctrl-const-comp, modadd, "
                                  "ctrl-modadd, const-modadd-vbe, const-modadd-takahashi, "
                                  "ctrl-const-modadd-vbe, ctrl-const-modadd-beauregard, in-range, "
                                  "qft, iqft, pcqft, phi-add, phi-sub, phi-add-const)");
        if (kind_required) k->required();
        cmd->add_option("--arch", arch, "subroutine family: vbe|cdkpm|gidney|draper|hybrid");
        cmd->add_option("--n", n, "register width");
        cmd->add_option("--p", p_text, "modulus (decimal or 0b binary)");
        cmd->add_option("--a", a_text, "constant addend (decimal or 0b binary)");
        cmd->add_flag("--mbu", mbu, "use measurement-based uncomputation for the final slot");
    }

    AdderVariant adder_variant() const {
        if (arch == "vbe") return AdderVariant::VBE;
        if (arch == "cdkpm") return AdderVariant::CDKPM;
        if (arch == "gidney") return AdderVariant::GIDNEY;
        if (arch == "draper") return AdderVariant::DRAPER;
        throw CLI::ValidationError("--arch", "unknown adder variant: " + arch);
    }

    ComparatorVariant comparator_variant() const {
        if (arch == "cdkpm") return ComparatorVariant::CDKPM_HALF;
        if (arch == "gidney") return ComparatorVariant::GIDNEY_HALF;
        if (arch == "draper") return ComparatorVariant::DRAPER;
        if (arch == "two-adder") return ComparatorVariant::TWO_ADDER;
        throw CLI::ValidationError("--arch", "unknown comparator variant: " + arch);
    }

    Preset preset() const {
        if (arch == "cdkpm") return Preset::CDKPM_ALL;
        if (arch == "gidney") return Preset::GIDNEY_ALL;
        if (arch == "hybrid") return Preset::HYBRID;
        if (arch == "draper") return Preset::DRAPER_BEAUREGARD;
        if (arch == "vbe") return Preset::VBE_ALL;
        throw CLI::ValidationError("--arch", "unknown preset: " + arch);
    }

    uint64_t p() const { return p_text.empty() ? 0 : parse_number(p_text); }
    uint64_t a() const { return a_text.empty() ? 0 : parse_number(a_text); }

    BitString a_bits() const {
        if (a_text.empty()) throw CLI::ValidationError("--a", "constant required for this kind");
        return BitString::from_uint(a(), n);
    }

    Circuit build() const {
        if (n == 0) throw CLI::ValidationError("--n", "width must be >= 1");
        if (kind == "plain-add") return build_plain_adder(adder_variant(), n);
        if (kind == "ctrl-add") {
            if (arch == "cdkpm") return build_controlled_adder(ControlledStrategy::CDKPM_CUMA, n);
            if (arch == "gidney") return build_controlled_adder(ControlledStrategy::GIDNEY_CTRL, n);
            if (arch == "draper") return build_controlled_adder(ControlledStrategy::DRAPER_1ANC, n);
            if (arch == "generic-load")
                return build_controlled_adder(ControlledStrategy::GENERIC_LOAD, n);
            if (arch == "generic-load-mbu")
                return build_controlled_adder(ControlledStrategy::GENERIC_LOAD_MBU, n);
            if (arch == "draper-central")
                return build_controlled_adder(ControlledStrategy::DRAPER_CENTRAL, n);
            throw CLI::ValidationError("--arch", "unknown controlled-adder strategy: " + arch);
        }
        if (kind == "const-add") return build_const_adder(adder_variant(), n, a_bits());
        if (kind == "ctrl-const-add") return build_ctrl_const_adder(adder_variant(), n, a_bits());
        if (kind == "sub") return build_subtractor(adder_variant(), n, SubtractMethod::Adjoint);
        if (kind == "sub-ones-complement")
            return build_subtractor(adder_variant(), n, SubtractMethod::OnesComplementWrap);
        if (kind == "sub-twos-complement")
            return build_subtractor(adder_variant(), n, SubtractMethod::TwosComplementAdd);
        if (kind == "comp") return build_comparator(comparator_variant(), n);
        if (kind == "ctrl-comp") return build_controlled_comparator(comparator_variant(), n);
        if (kind == "const-comp") return build_const_comparator(comparator_variant(), n, a_bits());
        if (kind == "ctrl-const-comp")
            return build_ctrl_const_comparator(comparator_variant(), n, a_bits());
        if (kind == "in-range") return build_in_range(n, comparator_variant(), mbu);
        if (kind == "qft") return build_qft(n, false);
        if (kind == "iqft") return build_qft(n, true);
        if (kind == "phi-add") return build_phi_add(n, +1);
        if (kind == "phi-sub") return build_phi_add(n, -1);
        if (kind == "phi-add-const") return build_phi_add_const(n, a_bits(), +1);
        if (kind == "pcqft") {
            std::vector<int32_t> cbits(n);
            for (uint32_t i = 0; i < n; ++i) cbits[i] = static_cast<int32_t>(i);
            return build_pcqft(n, cbits);
        }
        ModKind mk;
        if (kind == "modadd") mk = ModKind::MODADD;
        else if (kind == "ctrl-modadd") mk = ModKind::CTRL_MODADD;
        else if (kind == "const-modadd-vbe") mk = ModKind::CONST_MODADD_VBE;
        else if (kind == "const-modadd-takahashi") mk = ModKind::CONST_MODADD_TAKAHASHI;
        else if (kind == "ctrl-const-modadd-vbe") mk = ModKind::CTRL_CONST_MODADD_VBE;
        else if (kind == "ctrl-const-modadd-beauregard") mk = ModKind::CTRL_CONST_MODADD_BEAUREGARD;
        else throw CLI::ValidationError("--kind", "unknown kind: " + kind);
        if (p_text.empty()) throw CLI::ValidationError("--p", "modulus required for modular kinds");
        ArchitectureSpec spec{mk, preset(), n, p(), a(), mbu};
        return build_modadd(spec);
    }
};

void print_summary(std::ostream& out, const Circuit& c) {
    ResourceReport r = count_resources(c);
    out << "kind=" << c.semantic().op << " n=" << c.semantic().n;
    if (c.semantic().p) out << " p=" << *c.semantic().p;
    if (c.semantic().a) out << " a=" << *c.semantic().a;
    if (c.semantic().mbu) out << " mbu";
    out << "\nqubits " << r.total_qubits << " (ancillas " << r.ancilla_count << ")\n";
    out << "Toffoli static " << r.stat("toffoli") << " expected " << r.expect("toffoli").str()
        << "\nCNOT,CZ static " << r.stat("cnot+cz") << " expected " << r.expect("cnot+cz").str()
        << "\nX static " << r.stat("x") << " expected " << r.expect("x").str() << "\nH static "
        << r.stat("h") << " measure " << r.stat("measure") << "\n";
    if (r.block("QFT") || r.block("IQFT"))
        out << "QFT blocks " << r.block("QFT") << " (expected " << r.expect_block("QFT").str()
            << "), IQFT blocks " << r.block("IQFT") << " (expected "
            << r.expect_block("IQFT").str() << ")\n";
}

Circuit load_or_build(const std::string& circuit_file, const BuildFlags& flags, bool have_kind) {
    if (!circuit_file.empty()) {
        std::ifstream in(circuit_file);
        if (!in) throw CLI::ValidationError("--circuit", "cannot open " + circuit_file);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return deserialize(bytes);
    }
    if (!have_kind)
        throw CLI::ValidationError("--circuit", "either --circuit or builder flags are required");
    return flags.build();
}

Preset preset_from_name(const std::string& row) {
    if (row == "cdkpm") return Preset::CDKPM_ALL;
    if (row == "gidney") return Preset::GIDNEY_ALL;
    if (row == "hybrid") return Preset::HYBRID;
    if (row == "vbe") return Preset::VBE_ALL;
    if (row == "draper") return Preset::DRAPER_BEAUREGARD;
    throw CLI::ValidationError("--rows", "unknown preset: " + row);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum modular arithmetic circuit toolkit"};
    app.require_subcommand(1);

    uint64_t seed = 20240913;
    std::string format = "text";
    std::string out_file;
    app.add_option("--seed", seed, "seed for randomized behavior (printed when defaulted)");
    app.add_option("--format", format, "output format: text|json|md|csv");
    app.add_option("--out", out_file, "write primary output to this file");

    auto* cmd_build = app.add_subcommand("build", "construct a circuit and write its JSON");
    cmd_build->fallthrough();
    BuildFlags build_flags;
    build_flags.attach(cmd_build);

    auto* cmd_sim = app.add_subcommand("sim", "simulate a circuit on given register values");
    cmd_sim->fallthrough();
    std::string sim_circuit, sim_inputs, sim_force, sim_backend = "basis";
    BuildFlags sim_flags;
    cmd_sim->add_option("--circuit", sim_circuit, "circuit JSON file");
    sim_flags.attach(cmd_sim, /*kind_required=*/false);
    cmd_sim->add_option("--input", sim_inputs, "register values, e.g. x=5,y=0b110")->required();
    cmd_sim->add_option("--force", sim_force, "forced measurement outcomes, e.g. 0,1,1");
    cmd_sim->add_option("--backend", sim_backend, "basis|statevector");

    auto* cmd_verify =
        app.add_subcommand("verify", "exhaustively check a circuit against the oracle");
    cmd_verify->fallthrough();
    std::string verify_circuit, verify_branches = "all", verify_backend = "auto";
    uint64_t verify_trials = 64, verify_budget = uint64_t(1) << 22;
    int verify_jobs = 1;
    BuildFlags verify_flags;
    cmd_verify->add_option("--circuit", verify_circuit, "circuit JSON file");
    verify_flags.attach(cmd_verify, /*kind_required=*/false);
    cmd_verify->add_option("--branches", verify_branches, "all|sampled");
    cmd_verify->add_option("--trials", verify_trials, "trials per input when sampled");
    cmd_verify->add_option("--backend", verify_backend, "basis|statevector|auto");
    cmd_verify->add_option("--jobs", verify_jobs, "worker threads");
    cmd_verify->add_option("--budget", verify_budget, "input x branch budget guard");

    auto* cmd_count = app.add_subcommand("count", "static and expected resource counts");
    cmd_count->fallthrough();
    std::string count_circuit;
    BuildFlags count_flags;
    cmd_count->add_option("--circuit", count_circuit, "circuit JSON file");
    count_flags.attach(cmd_count, /*kind_required=*/false);

    auto* cmd_table = app.add_subcommand("table", "render the modular addition cost table");
    cmd_table->fallthrough();
    std::string table_rows = "cdkpm,gidney,hybrid", table_n = "4", table_p = "11";
    cmd_table->add_option("--rows", table_rows, "comma-separated presets");
    cmd_table->add_option("--n", table_n, "width or range, e.g. 4 or 4..8");
    cmd_table->add_option("--p", table_p, "comma-separated moduli");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const bool seed_given = app.count("--seed") > 0;

    auto emit_output = [&](const std::string& text) {
        if (!out_file.empty()) {
            std::ofstream out(out_file);
            out << text;
        } else {
            std::cout << text;
        }
    };

    try {
        if (*cmd_build) {
            Circuit c = build_flags.build();
            emit_output(serialize(c));
            print_summary(std::cerr, c);
            return 0;
        }

        if (*cmd_sim) {
            Circuit c = load_or_build(sim_circuit, sim_flags, !sim_flags.kind.empty());
            std::map<std::string, uint64_t> inputs;
            for (const std::string& kv : split(sim_inputs, ',')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--input", "expected name=value pairs");
                inputs[kv.substr(0, eq)] = parse_number(kv.substr(eq + 1));
            }
            // Inadmissible modular inputs get a warning, not a refusal.
            if (c.semantic().p) {
                for (const char* reg : {"x", "y"}) {
                    auto it = inputs.find(reg);
                    if (it != inputs.end() && it->second >= *c.semantic().p)
                        std::cerr << "warning: input " << reg << "=" << it->second
                                  << " is outside the admissible range [0, p)\n";
                }
            }
            MeasurePolicy policy = MeasurePolicy::seeded(seed);
            if (!sim_force.empty()) {
                std::vector<int> outcomes;
                for (const std::string& tok : split(sim_force, ','))
                    outcomes.push_back(std::stoi(tok));
                policy = MeasurePolicy::forced(outcomes);
            } else if (!seed_given) {
                std::cerr << "seed " << seed << " (default)\n";
            }
            std::ostringstream out;
            if (sim_backend == "basis") {
                auto r = run_basis(c, inputs, policy);
                for (const Register& reg : c.registers())
                    if (reg.role == RegRole::Output)
                        out << "result " << reg.name << "=" << r.registers.at(reg.name) << "\n";
                for (const Register& reg : c.registers())
                    if (reg.role != RegRole::Output)
                        out << reg.name << "=" << r.registers.at(reg.name) << "\n";
                out << "cbits ";
                for (uint8_t b : r.cbits) out << int(b);
                out << "\npath_probability " << r.path_probability.str() << "\n";
            } else if (sim_backend == "statevector") {
                auto r = run_statevector(c, inputs, policy);
                size_t best = 0;
                for (size_t i = 1; i < r.state.size(); ++i)
                    if (std::norm(r.state[i]) > std::norm(r.state[best])) best = i;
                for (const Register& reg : c.registers()) {
                    uint64_t v = 0;
                    for (size_t i = 0; i < reg.qubits.size(); ++i)
                        v |= ((best >> reg.qubits[i]) & 1) << i;
                    out << reg.name << "=" << v << "\n";
                }
                out << "amplitude " << std::abs(r.state[best]) << "\ncbits ";
                for (uint8_t b : r.cbits) out << int(b);
                out << "\n";
            } else {
                throw CLI::ValidationError("--backend", "unknown backend: " + sim_backend);
            }
            emit_output(out.str());
            return 0;
        }

        if (*cmd_verify) {
            Circuit c = load_or_build(verify_circuit, verify_flags, !verify_flags.kind.empty());
            Backend backend;
            if (verify_backend == "basis") {
                backend = Backend::Basis;
            } else if (verify_backend == "statevector") {
                backend = Backend::Statevector;
            } else {
                // Rotation-bearing circuits need the statevector backend.
                bool has_rot = false;
                std::function<void(const std::vector<Gate>&)> scan =
                    [&](const std::vector<Gate>& gs) {
                        for (const Gate& g : gs) {
                            if (g.kind == GateKind::Rot || g.kind == GateKind::CRot) has_rot = true;
                            if (!g.body.empty()) scan(g.body);
                        }
                    };
                scan(c.gates());
                backend = has_rot ? Backend::Statevector : Backend::Basis;
            }
            BranchMode mode = verify_branches == "sampled" ? BranchMode::sampled(seed, verify_trials)
                                                           : BranchMode::all_forced();
            if (verify_branches == "sampled" && !seed_given)
                std::cerr << "seed " << seed << " (default)\n";
            VerifyReport report = exhaustive_verify(c, backend, mode, verify_budget, verify_jobs);
            if (format == "json") {
                emit_output(verify_report_to_json(report, &c).dump(2) + "\n");
            } else {
                std::ostringstream out;
                out << (report.pass() ? "PASS" : "FAIL") << " op=" << report.op
                    << " backend=" << report.backend << " inputs=" << report.inputs_checked
                    << " paths=" << report.branches_checked << "\n";
                for (size_t i = 0; i < report.failures.size() && i < 5; ++i) {
                    out << "counterexample: " << report.failures[i].what << " inputs{";
                    for (auto& [k, v] : report.failures[i].inputs) out << k << "=" << v << " ";
                    out << "} branch{";
                    for (int bit : report.failures[i].branch) out << bit;
                    out << "}\n";
                }
                emit_output(out.str());
            }
            return report.pass() ? 0 : 1;
        }

        if (*cmd_count) {
            Circuit c = load_or_build(count_circuit, count_flags, !count_flags.kind.empty());
            if (format == "json") {
                ResourceReport r = count_resources(c);
                Json j;
                j["static"] = r.static_counts;
                Json je;
                for (auto& [k, v] : r.expected_counts)
                    je[k] = Json{{"num", v.num}, {"den", v.denominator()}};
                j["expected"] = std::move(je);
                j["blocks"] = r.static_blocks;
                j["ancillas"] = r.ancilla_count;
                j["qubits"] = r.total_qubits;
                emit_output(j.dump(2) + "\n");
            } else {
                std::ostringstream out;
                print_summary(out, c);
                emit_output(out.str());
            }
            return 0;
        }

        if (*cmd_table) {
            std::vector<std::string> rows = split(table_rows, ',');
            std::vector<uint32_t> ns;
            auto range = table_n.find("..");
            if (range != std::string::npos) {
                uint32_t lo = static_cast<uint32_t>(parse_number(table_n.substr(0, range)));
                uint32_t hi = static_cast<uint32_t>(parse_number(table_n.substr(range + 2)));
                for (uint32_t v = lo; v <= hi; ++v) ns.push_back(v);
            } else {
                ns.push_back(static_cast<uint32_t>(parse_number(table_n)));
            }
            std::vector<uint64_t> ps;
            for (const std::string& tok : split(table_p, ',')) ps.push_back(parse_number(tok));
            std::ostringstream out;
            if (format == "csv") {
                std::vector<ConformanceCell> all;
                for (uint32_t n : ns) {
                    for (uint64_t p : ps) {
                        if (p >= (uint64_t(1) << n)) continue;
                        for (const std::string& row : rows) {
                            ArchitectureSpec spec{ModKind::MODADD, preset_from_name(row), n, p, 0,
                                                  false};
                            Circuit plain = build_modadd(spec);
                            spec.mbu = true;
                            Circuit wrapped = build_modadd(spec);
                            auto cells = check_formulas("modadd", row, plain, wrapped, n, p, 0);
                            all.insert(all.end(), cells.begin(), cells.end());
                        }
                    }
                }
                out << cells_to_csv(all);
            } else {
                for (uint32_t n : ns)
                    for (uint64_t p : ps) {
                        if (p >= (uint64_t(1) << n)) continue;
                        out << "n=" << n << " p=" << p << " (|p|=" << hamming_weight(p) << ")\n";
                        out << render_modadd_table(rows, n, p) << "\n";
                    }
            }
            emit_output(out.str());
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BackendUnsupported& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
