#include "rcp/sweep.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "rcp/generators.hpp"
#include "rcp/io.hpp"
#include "rcp/oracle.hpp"

namespace rcp {
namespace {

constexpr OracleOptions kNoGuard{.unlimited = true};
constexpr std::size_t kKeepFailures = 5;

void record(SweepReport& report, const Instance& inst, const std::string& solver, std::string detail) {
    if (report.first.size() < kKeepFailures) report.first.push_back({inst, solver, std::move(detail)});
}

bool witness_expected(const Instance& inst, const Verdict& v) { return !v.sat() || inst.s == 0; }

} // namespace

std::vector<SweepSolver> default_sweep_solvers(const SolveOptions& opts, SolveFn fn) {
    auto via = [opts, fn](Strategy s) { return [opts, fn, s](const Instance& inst) { return fn(inst, s, opts); }; };
    auto always = [](const Instance&) { return true; };
    return {
        {"dp", [opts](const Instance& i) { return i.s == 0 && i.d * i.p() <= opts.dp.max_bits; }, via(Strategy::dp)},
        {"ilp", [](const Instance& i) { return i.s == 0; }, via(Strategy::ilp)},
        {"setcover", [](const Instance& i) { return i.s == 0 && i.d == 1; }, via(Strategy::setcover)},
        {"branch", always, via(Strategy::branch)},
        {"reduced", always, via(Strategy::reduced)},
        {"fastpath", [](const Instance& i) { return i.d == 1 && i.t.value_or(i.p()) >= i.p(); },
         via(Strategy::fastpath)},
        {"auto", always, via(Strategy::automatic)},
    };
}

double branch_node_bound(const Instance& inst) {
    const double dt = static_cast<double>(inst.d) * inst.t.value_or(inst.p());
    double total = 0, term = 1;
    for (int i = 0; i <= inst.s; ++i, term *= dt) total += term;
    return total;
}

double dp_state_bound(const Instance& inst) {
    const double t = inst.t.value_or(inst.p());
    return inst.num_users() * std::pow(2.0, inst.d * inst.p()) * std::pow(t + 1.0, inst.d);
}

bool blocker_class_inequality(const Instance& inst, const BlockerSet& blocker) {
    const ClassPartition cp = class_partition(inst);
    for (const auto& [c, users] : cp.classes) {
        int inside = 0;
        for (int u : users) inside += std::binary_search(blocker.users.begin(), blocker.users.end(), u) ? 1 : 0;
        if (inside > 0 && static_cast<int>(users.size()) - inside >= inst.d) return false;
    }
    return true;
}

void sweep_instance(const Instance& inst, const std::vector<SweepSolver>& solvers, SweepReport& report) {
    ++report.instances;
    const Verdict reference = solve_rcp_bruteforce(inst, kNoGuard);

    auto check_witness = [&](const std::string& who, const Verdict& v) {
        if (!witness_expected(inst, v)) return;
        ++report.witnesses_checked;
        if (!verify_witness(inst, v)) {
            ++report.witness_failures;
            record(report, inst, who, "witness rejected");
        }
    };
    check_witness("oracle", reference);

    for (const auto& solver : solvers) {
        if (!solver.applies(inst)) continue;
        ++report.solver_runs;
        Verdict v;
        try {
            v = solver.run(inst);
        } catch (const Error& e) {
            ++report.disagreements;
            record(report, inst, solver.name, std::string("threw: ") + e.what());
            continue;
        }
        if (v.answer != reference.answer) {
            ++report.disagreements;
            record(report, inst, solver.name,
                   std::string(to_string(v.answer)) + " but the oracle says " + to_string(reference.answer));
            continue;
        }
        check_witness(solver.name, v);
        if (solver.name == "branch") {
            ++report.branch_runs;
            if (static_cast<double>(v.stats.nodes) > branch_node_bound(inst)) {
                ++report.branch_bound_violations;
                record(report, inst, solver.name, "node count " + std::to_string(v.stats.nodes) + " above bound");
            }
        }
        if (solver.name == "dp") {
            ++report.dp_runs;
            if (static_cast<double>(v.stats.nodes) > dp_state_bound(inst)) {
                ++report.dp_bound_violations;
                record(report, inst, solver.name, "state count " + std::to_string(v.stats.nodes) + " above bound");
            }
        }
    }

    // Minimal blockers: one within budget s, and one shrunk from all of U.
    if (reference.sat() && inst.s == 0) return;
    std::vector<BlockerSet> minimal;
    if (auto b = find_minimal_blocker(inst, kNoGuard)) minimal.push_back(*b);
    BlockerSet everyone;
    for (int u = 0; u < inst.num_users(); ++u) everyone.users.push_back(u);
    minimal.push_back(shrink_blocker(inst, everyone, kNoGuard));
    for (const auto& b : minimal) {
        ++report.minimal_blockers;
        if (!blocker_class_inequality(inst, b)) {
            ++report.class_inequality_violations;
            record(report, inst, "class-inequality", "minimal blocker violates |U_C \\ S| < d");
        }
    }
}

SweepReport run_sweep(const SweepOptions& opts, const std::vector<SweepSolver>& solvers) {
    SweepReport report;
    std::vector<std::optional<int>> ts;
    for (int t = 1; t <= opts.max_t; ++t) ts.push_back(t);
    ts.push_back(std::nullopt);

    auto policies = [&](const std::vector<ResourceSet>& access, int p) {
        for (int s = 0; s <= opts.max_s; ++s)
            for (int d = 1; d <= opts.max_d; ++d)
                for (const auto& t : ts) sweep_instance(normalize(make_instance(p, access, ResourceSet::prefix(p), s, d, t)), solvers, report);
    };

    for (int p = 1; p <= opts.max_p; ++p)
        for (int n = 0; n <= opts.max_n; ++n) {
            const std::uint64_t values = std::uint64_t{1} << p;
            std::vector<std::uint64_t> codes(n, 0);
            while (true) {
                std::vector<ResourceSet> access;
                for (auto c : codes) access.push_back(ResourceSet::from_mask(c));
                policies(access, p);
                // Next relation: odometer over all codes, or non-decreasing codes only.
                int i = n - 1;
                while (i >= 0 && codes[i] == values - 1) --i;
                if (i < 0) break;
                ++codes[i];
                for (int j = i + 1; j < n; ++j) codes[j] = opts.labelled ? 0 : codes[i];
            }
        }

    std::mt19937_64 rng(opts.base_seed);
    for (int i = 0; i < opts.seeds; ++i) {
        const int n = static_cast<int>(rng() % (opts.random_max_n + 1));
        const int p = 1 + static_cast<int>(rng() % opts.random_max_p);
        const int s = static_cast<int>(rng() % (opts.random_max_s + 1));
        const int d = 1 + static_cast<int>(rng() % opts.random_max_d);
        const int traw = static_cast<int>(rng() % (p + 2));
        const std::optional<int> t = traw == 0 ? std::nullopt : std::optional<int>(traw);
        const double density = 0.2 + 0.1 * static_cast<double>(rng() % 6);
        const GeneratedInstance g = random_instance(rng(), n, p, density, s, d, t);
        sweep_instance(normalize(g.instance), solvers, report);
    }

    if (!report.first.empty() && !opts.reproducer_path.empty()) {
        const Disagreement& bad = report.first.front();
        Provenance prov;
        prov.family = "sweep-failure";
        prov.params = {{"solver", bad.solver}, {"reference", "oracle"}, {"detail", bad.detail}};
        std::ofstream out(opts.reproducer_path);
        out << io::emit_instance(bad.instance, prov);
        if (out) report.reproducer = opts.reproducer_path;
    }
    return report;
}

} // namespace rcp
