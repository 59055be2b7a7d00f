// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "rcp/generators.hpp"
#include "rcp/kernel.hpp"
#include "rcp/oracle.hpp"
#include "rcp/s0_solvers.hpp"
#include "rcp/sweep.hpp"

using namespace rcp;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr double kSweepBudgetSeconds = 600.0;
constexpr double kKernelSecondsPerInstance = 1.0;
// Allowed slack on the state-growth ratio for averaging over random instances.
constexpr double kDpNoiseFactor = 1.10;

constexpr OracleOptions kNoGuard{.unlimited = true};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

struct Witnesses {
    std::uint64_t checked = 0;
    std::uint64_t rejected = 0;

    void check(const Instance& inst, const Verdict& v) {
        if (v.sat() && inst.s > 0) return;  // no witness for SAT with s > 0
        ++checked;
        if (!verify_witness(inst, v)) ++rejected;
    }
};

int report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d  %-30s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    return pass ? 0 : 1;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Criterion 2.
struct ReductionTally {
    int total = 0, agree = 0, sat = 0;
};

void tally(ReductionTally& t, const GeneratedInstance& g, Witnesses& w) {
    const Instance inst = normalize(g.instance);
    const Verdict v = solve_rcp_bruteforce(inst, kNoGuard);
    w.check(inst, v);
    ++t.total;
    t.sat += v.sat() ? 1 : 0;
    if (g.expected() != Expected::unknown && v.sat() == (g.expected() == Expected::sat)) ++t.agree;
}

// Criterion 4: mean all-layer state counts per (d, p) at fixed n.
struct DpScaling {
    int pairs = 0;
    double worst = 0;  // largest ratio / bound
    std::string worst_at;
    std::uint64_t measured = 0, over_bound = 0;
};

DpScaling dp_scaling() {
    constexpr int kN = 16;
    constexpr int kSeeds = 30;
    constexpr double kDensity = 0.5;
    constexpr int kMaxBits = 22;
    DpScaling out;
    for (std::optional<int> t : {std::optional<int>(1), std::optional<int>(2), std::optional<int>(3),
                                 std::optional<int>()}) {
        std::map<std::pair<int, int>, double> mean;
        for (int d = 1; d <= 3; ++d)
            for (int p = 1; d * p <= kMaxBits; ++p) {
                double sum = 0;
                for (int seed = 0; seed < kSeeds; ++seed) {
                    const Instance inst = normalize(
                        random_instance(7919ULL * p + 104729ULL * d + seed, kN, p, kDensity, 0, d, t).instance);
                    for (bool all : {false, true}) {
                        const Verdict v = dp_solve(inst, {.max_bits = 24, .all_layers = all});
                        ++out.measured;
                        if (static_cast<double>(v.stats.nodes) > dp_state_bound(inst)) ++out.over_bound;
                        if (all) sum += static_cast<double>(v.stats.nodes);
                    }
                }
                mean[{d, p}] = sum / kSeeds;
            }
        // Steps where 2^{dp} grows fourfold with d or p held fixed, and the
        // team-size counters are either present at both ends or at neither.
        for (const auto& [a, ma] : mean)
            for (const auto& [b, mb] : mean) {
                const auto [d0, p0] = a;
                const auto [d1, p1] = b;
                if (d1 < d0 || d1 * p1 != d0 * p0 + 2 || (d1 != d0 && p1 != p0)) continue;
                if ((t && *t < p0) != (t && *t < p1)) continue;
                const double bound = 4.0 * std::pow(t.value_or(p1) + 1.0, d1 - d0);
                const double r = mb / ma / bound;
                ++out.pairs;
                if (r > out.worst) {
                    out.worst = r;
                    out.worst_at = fmt("t=%s (d,p)=(%d,%d)->(%d,%d) x%.2f vs %.0f", t ? std::to_string(*t).c_str() : "inf",
                                       d0, p0, d1, p1, mb / ma, bound);
                }
            }
    }
    return out;
}

// Criterion 8 helpers.
int sh(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    int failures = 0;
    Witnesses witnesses;

    // 1, 5, 6: the full sweep.
    auto start = Clock::now();
    SweepOptions sweep_opts;
    sweep_opts.reproducer_path = (fs::path(ACCEPTANCE_SCRATCH) / "sweep-reproducer.json").string();
    fs::create_directories(ACCEPTANCE_SCRATCH);
    const SweepReport sweep = run_sweep(sweep_opts, default_sweep_solvers());
    const double sweep_seconds = seconds_since(start);
    witnesses.checked += sweep.witnesses_checked;
    witnesses.rejected += sweep.witness_failures;

    failures += report(1, "oracle-equivalence sweep", sweep.disagreements == 0 && sweep_seconds < kSweepBudgetSeconds,
                       fmt("%llu instances, %llu solver runs, %llu disagreements, %.1f s (limit %.0f s)",
                           static_cast<unsigned long long>(sweep.instances),
                           static_cast<unsigned long long>(sweep.solver_runs),
                           static_cast<unsigned long long>(sweep.disagreements), sweep_seconds, kSweepBudgetSeconds));

    // 2: reductions.
    std::mt19937_64 rng(20240601);
    ReductionTally hs, dm, dom, sc;
    for (int i = 0; i < 200; ++i) {
        const int delta = 2 + i % 2;
        const int n = uniform(rng, delta, 6);
        tally(hs, from_hitting_set(random_hitting_set(rng, n, delta, uniform(rng, 1, 5), uniform(rng, 0, 3))), witnesses);
    }
    for (int i = 0; i < 200; ++i) {
        const int n = uniform(rng, 1, 3);
        tally(dm, from_3dm(random_matching(rng, n, uniform(rng, 1, 5), uniform(rng, 1, 3))), witnesses);
    }
    for (int i = 0; i < 100; ++i) {
        const int n = uniform(rng, 1, 6);
        tally(dom, from_domatic(random_graph(rng, n, 0.5), uniform(rng, 1, 4)), witnesses);
    }
    for (int i = 0; i < 100; ++i) {
        const int universe = uniform(rng, 1, 6);
        tally(sc, from_set_cover(random_set_cover(rng, universe, uniform(rng, 1, 6), uniform(rng, 1, 3))), witnesses);
    }
    const bool reductions_ok = hs.agree == hs.total && dm.agree == dm.total && dom.agree == dom.total &&
                               sc.agree == sc.total;
    failures += report(2, "reduction soundness", reductions_ok,
                       fmt("agree: hitting-set %d/%d (%d SAT), 3dm %d/%d (%d SAT), domatic %d/%d (%d SAT), "
                           "set-cover %d/%d (%d SAT)",
                           hs.agree, hs.total, hs.sat, dm.agree, dm.total, dm.sat, dom.agree, dom.total, dom.sat,
                           sc.agree, sc.total, sc.sat));

    // 3: kernel.
    int kernel_size_ok = 0, kernel_same = 0, kernel_sat = 0;
    double kernel_worst = 0;
    std::mt19937_64 krng(777);
    for (int i = 0; i < 500; ++i) {
        const int n = uniform(krng, 1, 50);
        const int p = uniform(krng, 1, 4);
        const int d = uniform(krng, 1, 3);
        const double density = 0.1 * uniform(krng, 1, 6);
        const Instance inst = normalize(random_instance(krng(), n, p, density, 0, d, std::nullopt).instance);
        const auto t0 = Clock::now();
        const KernelResult k = kernelize(inst);
        kernel_worst = std::max(kernel_worst, seconds_since(t0));
        if (k.instance.num_users() <= k.instance.d * k.instance.p()) ++kernel_size_ok;
        const Verdict before = solve_s0_bruteforce(inst, kNoGuard);
        const Verdict after = solve_s0_bruteforce(k.instance, kNoGuard);
        if (before.answer == after.answer && (!k.trace.resolved_sat() || before.sat())) ++kernel_same;
        if (after.sat()) {
            ++kernel_sat;
            const Verdict lifted{Answer::sat, lift_teams(inst, k.trace, k.instance, *after.teams()), {}};
            witnesses.check(inst, lifted);
        }
    }
    failures += report(3, "kernel guarantee",
                       kernel_size_ok == 500 && kernel_same == 500 && kernel_worst < kKernelSecondsPerInstance,
                       fmt("|U'| <= d|P'| on %d/500, same answer on %d/500 (%d SAT), slowest kernelize %.4f s "
                           "(limit %.1f s)",
                           kernel_size_ok, kernel_same, kernel_sat, kernel_worst, kKernelSecondsPerInstance));

    // 4: DP scaling.
    const DpScaling dp = dp_scaling();
    const bool dp_ok = dp.over_bound == 0 && sweep.dp_bound_violations == 0 && dp.pairs > 0 &&
                       dp.worst <= kDpNoiseFactor;
    failures += report(4, "dp state scaling", dp_ok,
                       fmt("%llu + %llu runs within n*2^(dp)*(t+1)^d (%llu over); %d dp+2 steps, worst "
                           "ratio/bound %.3f (slack %.2f) at %s",
                           static_cast<unsigned long long>(dp.measured), static_cast<unsigned long long>(sweep.dp_runs),
                           static_cast<unsigned long long>(dp.over_bound + sweep.dp_bound_violations), dp.pairs,
                           dp.worst, kDpNoiseFactor, dp.worst_at.c_str()));

    // 5, 6.
    failures += report(5, "branching node bound", sweep.branch_runs > 0 && sweep.branch_bound_violations == 0,
                       fmt("%llu branch runs, %llu above sum_{i<=s} (dt)^i",
                           static_cast<unsigned long long>(sweep.branch_runs),
                           static_cast<unsigned long long>(sweep.branch_bound_violations)));
    failures += report(6, "minimal-blocker class bound", sweep.minimal_blockers > 0 && sweep.class_inequality_violations == 0,
                       fmt("%llu minimal blockers, %llu counterexamples",
                           static_cast<unsigned long long>(sweep.minimal_blockers),
                           static_cast<unsigned long long>(sweep.class_inequality_violations)));

    // 8 first, so the witnesses the CLI emits count toward 7.
    const fs::path dir = fs::path(ACCEPTANCE_SCRATCH) / "determinism";
    fs::create_directories(dir);
    const std::string bin = RCP_BIN;
    const std::vector<std::string> families = {
        "random --n 6 --m 3 --s 1 --d 2 --t 2",  "random --n 8 --m 4 --density 0.4 --d 2",
        "hitting-set --n 5 --delta 2 --m 4 --k 2", "hitting-set --n 6 --delta 3 --m 3 --k 1",
        "3dm --n 2 --m 4 --k 2",                 "domatic --n 6 --k 2",
        "set-cover --n 5 --m 5 --k 2",
    };
    int generate_same = 0, solve_same = 0, runs = 0, cli_witness_ok = 0;
    for (std::size_t f = 0; f < families.size(); ++f)
        for (int seed : {1, 42}) {
            ++runs;
            const std::string base = (dir / ("f" + std::to_string(f) + "_s" + std::to_string(seed))).string();
            const std::string gen = bin + " generate " + families[f] + " --seed " + std::to_string(seed);
            sh(gen + " --out " + base + "_a.json 2>/dev/null");
            sh(gen + " --out " + base + "_b.json 2>/dev/null");
            const std::string a = slurp(base + "_a.json");
            if (!a.empty() && a == slurp(base + "_b.json")) ++generate_same;
            const std::string solve = bin + " solve " + base + "_a.json --witness --stats";
            const int rc1 = sh(solve + " > " + base + "_v1.json 2>/dev/null");
            const int rc2 = sh(solve + " > " + base + "_v2.json 2>/dev/null");
            const std::string v1 = slurp(base + "_v1.json");
            if (rc1 == rc2 && (rc1 == 0 || rc1 == 1) && !v1.empty() && v1 == slurp(base + "_v2.json")) ++solve_same;
            const bool has_witness = v1.find("\"witness\": null") == std::string::npos;
            if (has_witness) {
                ++witnesses.checked;
                if (sh(bin + " verify " + base + "_a.json " + base + "_v1.json > /dev/null 2>&1") == 0)
                    ++cli_witness_ok;
                else
                    ++witnesses.rejected;
            }
        }

    failures += report(7, "witness integrity", witnesses.checked > 0 && witnesses.rejected == 0,
                       fmt("%llu witnesses verified (sweep, reductions, kernel-lifted, %d via the CLI), %llu rejected",
                           static_cast<unsigned long long>(witnesses.checked), cli_witness_ok,
                           static_cast<unsigned long long>(witnesses.rejected)));
    failures += report(8, "determinism", generate_same == runs && solve_same == runs,
                       fmt("generate byte-identical %d/%d, solve verdicts identical %d/%d", generate_same, runs,
                           solve_same, runs));

    std::printf("%s\n", failures == 0 ? "all criteria pass" : "some criteria FAIL");
    return failures == 0 ? 0 : 1;
}
