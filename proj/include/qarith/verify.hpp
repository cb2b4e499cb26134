#pragma once

#include <atomic>
#include <thread>

#include "qarith/bitstring.hpp"
#include "qarith/serialize.hpp"
#include "qarith/sim_basis.hpp"
#include "qarith/sim_statevector.hpp"

namespace qarith {

enum class Backend { Basis, Statevector };

struct BranchMode {
    enum class Kind { AllForced, Sampled };
    Kind kind = Kind::AllForced;
    uint64_t seed = 0;
    uint64_t trials = 0;

    static BranchMode all_forced() { return {Kind::AllForced, 0, 0}; }
    static BranchMode sampled(uint64_t seed, uint64_t trials) {
        return {Kind::Sampled, seed, trials};
    }
};

struct VerifyFailure {
    std::map<std::string, uint64_t> inputs;
    std::vector<int> branch;
    std::string what;
};

struct VerifyReport {
    std::string op;
    std::string backend;
    uint64_t inputs_checked = 0;
    uint64_t branches_checked = 0;
    std::vector<VerifyFailure> failures;
    uint64_t seed = 0;

    bool pass() const { return failures.empty(); }
};

namespace oracle {

// Enumerable input space of a circuit, derived from its semantic descriptor.
// Each entry is (register name, cardinality); values run [0, cardinality).
struct InputSpace {
    std::vector<std::pair<std::string, uint64_t>> dims;

    uint64_t total() const {
        uint64_t t = 1;
        for (auto& [_, c] : dims) t *= c;
        return t;
    }

    std::map<std::string, uint64_t> at(uint64_t index) const {
        std::map<std::string, uint64_t> m;
        for (auto& [name, card] : dims) {
            m[name] = index % card;
            index /= card;
        }
        return m;
    }
};

inline InputSpace input_space(const Semantic& s) {
    const uint64_t full = uint64_t(1) << s.n;
    const uint64_t modp = s.p.value_or(full);
    const std::string& op = s.op;
    InputSpace sp;
    auto dim = [&](const char* name, uint64_t card) { sp.dims.emplace_back(name, card); };
    if (op == "plain-add" || op == "sub" || op == "plain-add-dagger") {
        dim("x", full);
        dim("y", full);
    } else if (op == "ctrl-add") {
        dim("c", 2);
        dim("x", full);
        dim("y", full);
    } else if (op == "const-add") {
        dim("y", full);
    } else if (op == "ctrl-const-add") {
        dim("c", 2);
        dim("y", full);
    } else if (op == "comp-gt" || op == "comp-le") {
        dim("x", full);
        dim("y", full);
        dim("t", 2);
    } else if (op == "ctrl-comp-gt") {
        dim("c", 2);
        dim("x", full);
        dim("y", full);
        dim("t", 2);
    } else if (op == "const-comp-lt" || op == "const-comp-ge") {
        dim("x", full);
        dim("t", 2);
    } else if (op == "ctrl-const-comp-lt") {
        dim("c", 2);
        dim("x", full);
        dim("t", 2);
    } else if (op == "modadd") {
        dim("x", modp);
        dim("y", modp);
    } else if (op == "ctrl-modadd") {
        dim("c", 2);
        dim("x", modp);
        dim("y", modp);
    } else if (op == "const-modadd-vbe" || op == "const-modadd-takahashi") {
        dim("y", modp);
    } else if (op == "ctrl-const-modadd-vbe" || op == "ctrl-const-modadd-beauregard") {
        dim("c", 2);
        dim("y", modp);
    } else if (op == "in-range") {
        dim("x", full);
        dim("y", full);
        dim("z", full);
        dim("t", 2);
    } else if (op == "qft" || op == "iqft" || op == "identity") {
        dim("q", full);
    } else {
        throw std::invalid_argument("no input space for op: " + op);
    }
    return sp;
}

// Expected final register values. Registers not present here must be
// preserved (inputs / controls) or restored to zero (ancillas).
inline std::map<std::string, uint64_t> expected(const Semantic& s,
                                                const std::map<std::string, uint64_t>& in) {
    auto get = [&](const char* k) -> uint64_t {
        auto it = in.find(k);
        return it == in.end() ? 0 : it->second;
    };
    const uint64_t wrap = uint64_t(1) << (s.n + 1);
    const std::string& op = s.op;
    std::map<std::string, uint64_t> out = in;
    if (op == "plain-add") {
        out["y"] = get("x") + get("y");
    } else if (op == "ctrl-add") {
        out["y"] = get("c") * get("x") + get("y");
    } else if (op == "const-add") {
        out["y"] = get("y") + *s.a;
    } else if (op == "ctrl-const-add") {
        out["y"] = get("y") + get("c") * *s.a;
    } else if (op == "sub" || op == "plain-add-dagger") {
        out["y"] = (get("y") + wrap - get("x")) % wrap;
    } else if (op == "comp-gt") {
        out["t"] = get("t") ^ (get("x") > get("y") ? 1 : 0);
    } else if (op == "comp-le") {
        out["t"] = get("t") ^ (get("x") <= get("y") ? 1 : 0);
    } else if (op == "ctrl-comp-gt") {
        out["t"] = get("t") ^ (get("c") && get("x") > get("y") ? 1 : 0);
    } else if (op == "const-comp-lt") {
        out["t"] = get("t") ^ (get("x") < *s.a ? 1 : 0);
    } else if (op == "const-comp-ge") {
        out["t"] = get("t") ^ (get("x") >= *s.a ? 1 : 0);
    } else if (op == "ctrl-const-comp-lt") {
        out["t"] = get("t") ^ (get("c") && get("x") < *s.a ? 1 : 0);
    } else if (op == "modadd") {
        out["y"] = (get("x") + get("y")) % *s.p;
    } else if (op == "ctrl-modadd") {
        out["y"] = (get("c") * get("x") + get("y")) % *s.p;
    } else if (op == "const-modadd-vbe" || op == "const-modadd-takahashi") {
        out["y"] = (get("y") + *s.a) % *s.p;
    } else if (op == "ctrl-const-modadd-vbe" || op == "ctrl-const-modadd-beauregard") {
        out["y"] = (get("y") + get("c") * *s.a) % *s.p;
    } else if (op == "in-range") {
        const bool hit = get("y") < get("x") && get("x") < get("z");
        out["t"] = get("t") ^ (hit ? 1 : 0);
    } else if (op == "qft" || op == "iqft" || op == "identity") {
        // qft/iqft are only verified as inverse pairs elsewhere.
    } else {
        throw std::invalid_argument("no oracle for op: " + op);
    }
    return out;
}

}  // namespace oracle

namespace detail_verify {

// Checks one (input, branch) run result against the oracle.
template <typename Readout>
inline void check_result(const Circuit& c, const std::map<std::string, uint64_t>& in,
                         const std::vector<int>& branch, const Readout& regs,
                         std::vector<VerifyFailure>& failures) {
    auto exp = oracle::expected(c.semantic(), in);
    for (const Register& r : c.registers()) {
        uint64_t want = 0;
        if (r.role == RegRole::Ancilla) {
            want = 0;
        } else {
            auto it = exp.find(r.name);
            want = (it == exp.end()) ? 0 : it->second;
        }
        uint64_t got = regs.at(r.name);
        if (got != want && failures.size() < 64) {
            failures.push_back(VerifyFailure{
                in, branch,
                "register " + r.name + " = " + std::to_string(got) + ", expected " +
                    std::to_string(want)});
        }
    }
}

struct BasisRunner {
    const Circuit& c;
    std::vector<VerifyFailure> run(const std::map<std::string, uint64_t>& in,
                                   const std::vector<int>& branch,
                                   uint64_t* coins_out) const {
        std::vector<VerifyFailure> fails;
        try {
            auto r = run_basis(c, in, MeasurePolicy::forced(branch));
            if (coins_out) *coins_out = r.coins_used;
            check_result(c, in, branch, r.registers, fails);
        } catch (const std::exception& e) {
            fails.push_back(VerifyFailure{in, branch, std::string("exception: ") + e.what()});
        }
        return fails;
    }
};

struct StatevectorRunner {
    const Circuit& c;
    static constexpr double kAmpTolerance = 1e-9;

    std::vector<VerifyFailure> run(const std::map<std::string, uint64_t>& in,
                                   const std::vector<int>& branch,
                                   uint64_t* coins_out) const {
        std::vector<VerifyFailure> fails;
        try {
            MeasurePolicy policy = MeasurePolicy::forced(branch);
            StatevectorSimulator sim(c, policy);
            auto r = sim.run(in);
            if (coins_out) *coins_out = r.coins_used;
            auto exp = oracle::expected(c.semantic(), in);
            std::map<std::string, uint64_t> target;
            for (const Register& reg : c.registers()) {
                auto it = exp.find(reg.name);
                target[reg.name] =
                    (reg.role == RegRole::Ancilla || it == exp.end()) ? 0 : it->second;
            }
            double amp = StatevectorSimulator::basis_amplitude(c, r, target);
            if (amp < 1.0 - kAmpTolerance) {
                fails.push_back(VerifyFailure{
                    in, branch,
                    "target basis amplitude " + std::to_string(amp) + " below tolerance"});
            }
        } catch (const std::exception& e) {
            fails.push_back(VerifyFailure{in, branch, std::string("exception: ") + e.what()});
        }
        return fails;
    }
};

// Enumerates every distinct execution path: run with a forced prefix padded
// by zeros, learn how many coins were consumed, then queue flipped siblings.
template <typename Runner>
inline uint64_t all_paths(const Runner& runner, const std::map<std::string, uint64_t>& in,
                          size_t max_coins, std::vector<VerifyFailure>& failures) {
    uint64_t paths = 0;
    std::vector<std::vector<int>> work{{}};
    while (!work.empty()) {
        std::vector<int> prefix = std::move(work.back());
        work.pop_back();
        std::vector<int> forced = prefix;
        forced.resize(max_coins, 0);
        uint64_t coins = 0;
        auto fails = runner.run(in, forced, &coins);
        ++paths;
        for (auto& f : fails) {
            f.branch.resize(coins);
            failures.push_back(std::move(f));
        }
        for (size_t j = prefix.size(); j < coins; ++j) {
            std::vector<int> sibling(forced.begin(), forced.begin() + j);
            sibling.push_back(1);
            work.push_back(std::move(sibling));
        }
    }
    return paths;
}

inline size_t count_measures(const std::vector<Gate>& gates) {
    size_t m = 0;
    for (const Gate& g : gates) {
        if (g.kind == GateKind::Measure) ++m;
        if (g.kind == GateKind::Cond) m += count_measures(g.body);
    }
    return m;
}

}  // namespace detail_verify

// Runs every admissible input (and, in all-forced mode, every measurement
// path) against the classical oracle; ancillas must end at zero and preserved
// registers unchanged on every path.
inline VerifyReport exhaustive_verify(const Circuit& c, Backend backend, BranchMode mode,
                                      uint64_t budget = uint64_t(1) << 22, int jobs = 1) {
    VerifyReport report;
    report.op = c.semantic().op;
    report.backend = backend == Backend::Basis ? "basis" : "statevector";
    report.seed = mode.seed;

    oracle::InputSpace space = oracle::input_space(c.semantic());
    const uint64_t inputs = space.total();
    const size_t max_coins = detail_verify::count_measures(c.gates());
    if (mode.kind == BranchMode::Kind::AllForced) {
        // Path count is bounded by 2^coins; refuse unbounded sweeps.
        const uint64_t branch_bound =
            max_coins >= 22 ? budget + 1 : (uint64_t(1) << max_coins);
        if (branch_bound > budget || inputs > budget / branch_bound)
            throw std::invalid_argument(
                "verification budget exceeded: inputs x branch bound " + std::to_string(inputs) +
                " x " + std::to_string(branch_bound) + " > " + std::to_string(budget) +
                "; raise the budget or use sampled branches");
    }

    std::vector<std::vector<VerifyFailure>> failure_shards;
    std::vector<uint64_t> path_shards;
    const int workers = std::max(1, jobs);
    failure_shards.resize(workers);
    path_shards.assign(workers, 0);

    auto run_span = [&](int worker, uint64_t begin, uint64_t end) {
        for (uint64_t idx = begin; idx < end; ++idx) {
            auto in = space.at(idx);
            if (mode.kind == BranchMode::Kind::AllForced) {
                if (backend == Backend::Basis) {
                    detail_verify::BasisRunner runner{c};
                    path_shards[worker] +=
                        detail_verify::all_paths(runner, in, max_coins, failure_shards[worker]);
                } else {
                    detail_verify::StatevectorRunner runner{c};
                    path_shards[worker] +=
                        detail_verify::all_paths(runner, in, max_coins, failure_shards[worker]);
                }
            } else {
                for (uint64_t t = 0; t < mode.trials; ++t) {
                    Rng rng = Rng::child(mode.seed, idx * 0x10001 + t);
                    std::vector<int> branch(max_coins);
                    for (auto& bit : branch) bit = rng.coin() ? 1 : 0;
                    uint64_t coins = 0;
                    std::vector<VerifyFailure> fails;
                    if (backend == Backend::Basis) {
                        detail_verify::BasisRunner runner{c};
                        fails = runner.run(in, branch, &coins);
                    } else {
                        detail_verify::StatevectorRunner runner{c};
                        fails = runner.run(in, branch, &coins);
                    }
                    ++path_shards[worker];
                    for (auto& f : fails) failure_shards[worker].push_back(std::move(f));
                }
            }
        }
    };

    if (workers == 1) {
        run_span(0, 0, inputs);
    } else {
        std::vector<std::thread> pool;
        const uint64_t chunk = (inputs + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            uint64_t b0 = std::min<uint64_t>(w * chunk, inputs);
            uint64_t b1 = std::min<uint64_t>(b0 + chunk, inputs);
            pool.emplace_back(run_span, w, b0, b1);
        }
        for (auto& t : pool) t.join();
    }

    report.inputs_checked = inputs;
    for (int w = 0; w < workers; ++w) {
        report.branches_checked += path_shards[w];
        for (auto& f : failure_shards[w]) report.failures.push_back(std::move(f));
    }
    return report;
}

inline Json verify_report_to_json(const VerifyReport& r, const Circuit* c = nullptr) {
    Json j;
    j["op"] = r.op;
    if (c) {
        Json spec;
        spec["op"] = c->semantic().op;
        spec["n"] = c->semantic().n;
        if (c->semantic().p) spec["p"] = *c->semantic().p;
        if (c->semantic().a) spec["a"] = *c->semantic().a;
        spec["mbu"] = c->semantic().mbu;
        j["spec"] = std::move(spec);
    }
    j["backend"] = r.backend;
    j["inputs_checked"] = r.inputs_checked;
    j["branches_checked"] = r.branches_checked;
    j["seed"] = r.seed;
    Json fails = Json::array();
    for (const auto& f : r.failures) {
        Json jf;
        jf["inputs"] = f.inputs;
        jf["branch"] = f.branch;
        jf["what"] = f.what;
        fails.push_back(std::move(jf));
    }
    j["failures"] = std::move(fails);
    j["pass"] = r.pass();
    return j;
}

}  // namespace qarith
