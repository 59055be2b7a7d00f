#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "rcp/generators.hpp"
#include "rcp/io.hpp"
#include "rcp/kernel.hpp"

namespace rcp::cli {
namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw UsageError("cannot write '" + path + "'");
}

io::InstanceDocument load_instance(const std::string& path) {
    auto parsed = io::parse_instance(read_file(path));
    if (!parsed) throw UsageError(path + ": " + parsed.error().to_string());
    return std::move(parsed.value());
}

// "0,1;1,2" -> {{0,1},{1,2}}
std::vector<std::vector<int>> parse_groups(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<int> values;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            try {
                std::size_t used = 0;
                values.push_back(std::stoi(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw UsageError("bad integer '" + item + "' in '" + text + "'");
            }
        }
        out.push_back(std::move(values));
    }
    return out;
}

std::optional<int> parse_t(const std::string& text) {
    if (text == "inf") return std::nullopt;
    try {
        std::size_t used = 0;
        const int t = std::stoi(text, &used);
        if (used == text.size() && t >= 1) return t;
    } catch (const std::exception&) {
    }
    throw UsageError("t must be a positive integer or 'inf'");
}

struct SolveArgs {
    std::string path;
    std::string algorithm = "auto";
    bool witness = false;
    bool stats = false;
};

struct Budgets {
    int dp_bits = 24;
    int ilp_classes = 4096;
    int oracle_users = 20;
};

SolveOptions options_from(const Budgets& b) {
    SolveOptions opts;
    opts.dp.max_bits = b.dp_bits;
    opts.ilp.max_classes = b.ilp_classes;
    opts.reduced.max_classes = b.ilp_classes;
    opts.oracle.max_users = b.oracle_users;
    return opts;
}

int cmd_solve(const SolveArgs& a, const Budgets& b, const Hooks& hooks) {
    const Strategy strategy = parse_strategy(a.algorithm);
    const Instance inst = normalize(load_instance(a.path).instance);
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = hooks.solve(inst, strategy, options_from(b));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << io::emit_verdict(v, inst, a.witness, a.stats);
    if (a.stats) std::fprintf(stderr, "algorithm %s, %llu nodes, %.6f s\n", v.stats.algorithm.c_str(),
                              static_cast<unsigned long long>(v.stats.nodes), seconds);
    return v.sat() ? kSat : kUnsat;
}

struct KernelArgs {
    std::string path;
    std::string out;
    std::string trace;
};

int cmd_kernelize(const KernelArgs& a) {
    Instance inst = load_instance(a.path).instance;
    if (inst.t)
        throw PreconditionViolation(
            "kernelize: t must be \"inf\"; with a finite team-size bound no polynomial kernel exists "
            "unless the polynomial hierarchy collapses");
    if (inst.s != 0) throw PreconditionViolation("kernelize: only s = 0 instances can be kernelized");
    const int users_before = inst.num_users();
    const int p_before = inst.p();
    if (p_before == 0) {
        // Already resolved: nothing to protect, so d empty teams suffice.
        write_file(a.out, io::emit_instance(inst));
        if (!a.trace.empty()) write_file(a.trace, io::emit_trace({}));
        std::fprintf(stderr, "users %d -> %d, resources 0 -> 0 (P is empty: SAT)\n", users_before, users_before);
        return kSat;
    }
    inst = normalize(inst);
    KernelResult k = kernelize(inst);
    k.instance.t = std::nullopt;
    write_file(a.out, io::emit_instance(k.instance));
    if (!a.trace.empty()) write_file(a.trace, io::emit_trace(k.trace));
    std::fprintf(stderr, "users %d -> %d, resources %d -> %d, d*p = %d%s\n", users_before,
                 k.instance.num_users(), p_before, k.instance.p(), k.instance.d * k.instance.p(),
                 k.trace.resolved_sat() ? " (resolved: SAT)" : "");
    return kSat;
}

struct GenerateArgs {
    std::string family;
    int n = 3;
    int m = 3;
    int k = 1;
    int delta = 2;
    int s = 0;
    int d = 1;
    std::string t = "inf";
    double density = 0.5;
    std::string sets;
    std::string edges;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& a) {
    std::mt19937_64 rng(a.seed);
    GeneratedInstance g;
    bool drew = false;
    if (a.family == "hitting-set") {
        HittingSetSource src{a.n, {}, a.k};
        if (!a.sets.empty())
            src.sets = parse_groups(a.sets);
        else {
            if (a.delta > a.n) throw UsageError("hitting-set: delta exceeds n");
            src = random_hitting_set(rng, a.n, a.delta, a.m, a.k);
            drew = true;
        }
        g = from_hitting_set(src);
    } else if (a.family == "3dm") {
        MatchingSource src{a.n, {}, a.k};
        if (!a.edges.empty()) {
            for (const auto& e : parse_groups(a.edges)) {
                if (e.size() != 3) throw UsageError("3dm: hyperedges need three coordinates");
                src.edges.push_back({e[0], e[1], e[2]});
            }
        } else {
            if (a.n < 1) throw UsageError("3dm: n must be >= 1");
            src = random_matching(rng, a.n, a.m, a.k);
            drew = true;
        }
        g = from_3dm(src);
    } else if (a.family == "domatic") {
        Graph graph{a.n, {}};
        if (!a.edges.empty()) {
            for (const auto& e : parse_groups(a.edges)) {
                if (e.size() != 2) throw UsageError("domatic: edges need two endpoints");
                graph.edges.emplace_back(e[0], e[1]);
            }
        } else {
            graph = random_graph(rng, a.n, a.density);
            drew = true;
        }
        g = from_domatic(graph, a.k);
    } else if (a.family == "set-cover") {
        SetCoverSource src{a.n, {}, a.k};
        if (!a.sets.empty())
            src.sets = parse_groups(a.sets);
        else {
            src = random_set_cover(rng, a.n, a.m, a.k);
            drew = true;
        }
        g = from_set_cover(src);
    } else if (a.family == "random") {
        g = random_instance(a.seed, a.n, a.m, a.density, a.s, a.d, parse_t(a.t));
    } else {
        throw UsageError("unknown family '" + a.family + "' (hitting-set, 3dm, domatic, set-cover, random)");
    }
    if (drew) g.provenance.seed = a.seed;
    write_file(a.out, io::emit_instance(g));
    return kSat;
}

struct VerifyArgs {
    std::string instance;
    std::string verdict;
};

int cmd_verify(const VerifyArgs& a) {
    const Instance inst = normalize(load_instance(a.instance).instance);
    auto v = io::parse_verdict(read_file(a.verdict), inst);
    if (!v) throw UsageError(a.verdict + ": " + v.error().to_string());
    const bool ok = verify_witness(inst, v.value());
    std::cout << (ok ? "valid" : "invalid") << "\n";
    return ok ? 0 : 1;
}

int cmd_sweep(const SweepOptions& opts, const Budgets& b, const Hooks& hooks) {
    const auto start = std::chrono::steady_clock::now();
    const SweepReport r = run_sweep(opts, default_sweep_solvers(options_from(b), hooks.solve));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("instances            %llu\n", static_cast<unsigned long long>(r.instances));
    std::printf("solver runs          %llu\n", static_cast<unsigned long long>(r.solver_runs));
    std::printf("disagreements        %llu\n", static_cast<unsigned long long>(r.disagreements));
    std::printf("witnesses checked    %llu (%llu rejected)\n", static_cast<unsigned long long>(r.witnesses_checked),
                static_cast<unsigned long long>(r.witness_failures));
    std::printf("branch bound         %llu runs, %llu over\n", static_cast<unsigned long long>(r.branch_runs),
                static_cast<unsigned long long>(r.branch_bound_violations));
    std::printf("dp state bound       %llu runs, %llu over\n", static_cast<unsigned long long>(r.dp_runs),
                static_cast<unsigned long long>(r.dp_bound_violations));
    std::printf("minimal blockers     %llu (%llu counterexamples)\n",
                static_cast<unsigned long long>(r.minimal_blockers),
                static_cast<unsigned long long>(r.class_inequality_violations));
    std::fprintf(stderr, "sweep took %.1f s\n", seconds);
    for (const auto& f : r.first) std::printf("FAIL %s: %s\n", f.solver.c_str(), f.detail.c_str());
    if (r.reproducer) std::printf("reproducer written to %s\n", r.reproducer->c_str());
    return r.ok() ? 0 : 1;
}

} // namespace

int run(int argc, char** argv, const Hooks& hooks) {
    CLI::App app{"Resiliency checking for access-control policies"};
    app.require_subcommand(1);
    Budgets budgets;
    auto add_budgets = [&budgets](CLI::App* sub) {
        sub->add_option("--dp-max-bits", budgets.dp_bits, "largest d*p the DP accepts")->capture_default_str();
        sub->add_option("--ilp-max-classes", budgets.ilp_classes, "largest 2^p the class-based solvers accept")
            ->capture_default_str();
        sub->add_option("--oracle-max-users", budgets.oracle_users, "largest n the brute force accepts")
            ->capture_default_str();
    };

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "decide res(P,s,d,t) for an instance file");
    solve_cmd->add_option("path", solve_args.path, "instance file, - for stdin")->required();
    solve_cmd->add_option("--algorithm", solve_args.algorithm,
                          "auto|oracle|dp|ilp|setcover|branch|reduced|fastpath")
        ->capture_default_str();
    solve_cmd->add_flag("--witness", solve_args.witness, "include teams or blocker in the verdict");
    solve_cmd->add_flag("--stats", solve_args.stats, "include node counts; timing goes to stderr");
    add_budgets(solve_cmd);

    KernelArgs kernel_args;
    auto* kernel_cmd = app.add_subcommand("kernelize", "shrink an s=0, t=inf instance to at most d*p users");
    kernel_cmd->add_option("path", kernel_args.path, "instance file, - for stdin")->required();
    kernel_cmd->add_option("--out", kernel_args.out, "kernel instance file (default stdout)");
    kernel_cmd->add_option("--trace", kernel_args.trace, "write the rule trace here");

    GenerateArgs gen;
    auto* gen_cmd = app.add_subcommand("generate", "write a generated instance with its provenance");
    gen_cmd->add_option("family", gen.family, "hitting-set|3dm|domatic|set-cover|random")->required();
    gen_cmd->add_option("--n", gen.n, "elements, vertices, universe size or users")->capture_default_str();
    gen_cmd->add_option("--m", gen.m, "number of sets, hyperedges or resources")->capture_default_str();
    gen_cmd->add_option("--k", gen.k, "source-problem budget")->capture_default_str();
    gen_cmd->add_option("--delta", gen.delta, "hitting-set set size")->capture_default_str();
    gen_cmd->add_option("--s", gen.s, "random: s")->capture_default_str();
    gen_cmd->add_option("--d", gen.d, "random: d")->capture_default_str();
    gen_cmd->add_option("--t", gen.t, "random: t or inf")->capture_default_str();
    gen_cmd->add_option("--density", gen.density, "random: pair or edge probability")->capture_default_str();
    gen_cmd->add_option("--sets", gen.sets, "explicit sets, e.g. 0,1;1,2");
    gen_cmd->add_option("--edges", gen.edges, "explicit hyperedges or graph edges, e.g. 0,0,0;1,1,1");
    gen_cmd->add_option("--seed", gen.seed, "seed for std::mt19937_64")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "check a verdict's witness against an instance");
    verify_cmd->add_option("instance", verify_args.instance)->required();
    verify_cmd->add_option("verdict", verify_args.verdict)->required();

    SweepOptions sweep;
    bool multiset = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "cross-check all solvers against the oracle");
    sweep_cmd->add_option("--max-n", sweep.max_n)->capture_default_str();
    sweep_cmd->add_option("--max-p", sweep.max_p)->capture_default_str();
    sweep_cmd->add_option("--max-s", sweep.max_s)->capture_default_str();
    sweep_cmd->add_option("--max-d", sweep.max_d)->capture_default_str();
    sweep_cmd->add_option("--max-t", sweep.max_t, "finite t values tried; inf is always added")
        ->capture_default_str();
    sweep_cmd->add_option("--seeds", sweep.seeds, "random instances after the grid")->capture_default_str();
    sweep_cmd->add_option("--base-seed", sweep.base_seed)->capture_default_str();
    sweep_cmd->add_flag("--multiset", multiset, "one relation per multiset of neighborhoods");
    sweep_cmd->add_option("--reproducer", sweep.reproducer_path, "where to write the first failure")
        ->capture_default_str();
    add_budgets(sweep_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve_args, budgets, hooks);
        if (*kernel_cmd) return cmd_kernelize(kernel_args);
        if (*gen_cmd) return cmd_generate(gen);
        if (*verify_cmd) return cmd_verify(verify_args);
        sweep.labelled = !multiset;
        return cmd_sweep(sweep, budgets, hooks);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace rcp::cli
