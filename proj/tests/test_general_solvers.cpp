#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "rcp/general_solvers.hpp"

using namespace rcp;
using namespace rcp::testing;

namespace {

const S0Solver kDp = [](const Instance& inst) { return dp_solve(inst); };
const S0Solver kIlp = [](const Instance& inst) { return ilp_solve(inst); };

std::uint64_t branch_bound(const Instance& inst) {
    std::uint64_t total = 0, term = 1;
    const std::uint64_t dt = static_cast<std::uint64_t>(inst.d) * *inst.t;
    for (int i = 0; i <= inst.s; ++i, term *= dt) total += term;
    return total;
}

void check_general(const Instance& inst) {
    const bool expected = solve_rcp_bruteforce(inst).sat();
    Verdict branch = branch_solve(inst, kDp);
    Verdict reduced = reduced_solve(inst, kIlp);
    REQUIRE(branch.sat() == expected);
    REQUIRE(reduced.sat() == expected);
    REQUIRE(branch.stats.nodes <= branch_bound(inst));
    REQUIRE(solve(inst, Strategy::automatic).sat() == expected);
    if (!expected) {
        REQUIRE(verify_witness(inst, branch));
        REQUIRE(verify_witness(inst, reduced));
    }
    if (inst.d == 1 && *inst.t >= inst.p()) {
        Verdict fast = fastpath_d1_tinf(inst);
        REQUIRE(fast.sat() == expected);
        if (!expected || inst.s == 0) REQUIRE(verify_witness(inst, fast));
    }
}

} // namespace

TEST_CASE("branch_solve examples") {
    CHECK(branch_solve(build_normalized(1, {{0}, {0}}, 1, 1, 1), kDp).sat());

    Verdict lone = branch_solve(build_normalized(1, {{0}}, 1, 1, 1), kDp);
    CHECK_FALSE(lone.sat());
    CHECK(lone.blocker()->users == UserSet{0});

    Instance inst = build_normalized(2, {{0}, {0}, {1}}, 1, 1, 2);
    REQUIRE_FALSE(solve_rcp_bruteforce(inst).sat());
    Verdict v = branch_solve(inst, kDp);
    CHECK_FALSE(v.sat());
    CHECK(v.blocker()->users == UserSet{2});
}

TEST_CASE("branch_solve dedup cache keeps the answer") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Instance inst = random_small(rng, 8, 3, 2, 2);
        Verdict plain = branch_solve(inst, kDp);
        Verdict cached = branch_solve(inst, kDp, BranchOptions{.dedup = true});
        CHECK(plain.sat() == cached.sat());
        CHECK(cached.stats.nodes <= plain.stats.nodes);
    }
}

TEST_CASE("zeta") {
    Instance five = build_normalized(1, {{0}, {0}, {0}, {0}, {0}}, 0, 2, 1);
    ClassPartition cp = class_partition(five);
    ClassDeletionVector v;
    v.k[ResourceSet{0}] = 1;
    CHECK(zeta(cp, v, ResourceSet{0}, 2) == 4);
    v.k[ResourceSet{0}] = 0;
    CHECK(zeta(cp, v, ResourceSet{0}, 2) == 0);

    Instance one = build_normalized(1, {{0}}, 0, 3, 1);
    ClassDeletionVector w;
    w.k[ResourceSet{0}] = 1;
    CHECK(zeta(class_partition(one), w, ResourceSet{0}, 3) == 1);
}

TEST_CASE("reduced_solve examples") {
    Verdict lone = reduced_solve(build_normalized(1, {{0}}, 1, 1, 1), kIlp);
    CHECK_FALSE(lone.sat());
    CHECK(lone.blocker()->users == UserSet{0});

    Instance trio = build_normalized(1, {{0}, {0}, {0}}, 1, 2, 1);
    REQUIRE(solve_rcp_bruteforce(trio).sat());
    CHECK(reduced_solve(trio, kIlp).sat());

    Instance inst = build_normalized(2, {{0}, {0}, {1}}, 1, 1, 2);
    Verdict v = reduced_solve(inst, kIlp);
    CHECK_FALSE(v.sat());
    CHECK(v.blocker()->users == UserSet{2});
}

TEST_CASE("reduced_solve expands blockers with off-representative users") {
    // Class {0} has 3 users, d = 2: two representatives, one extra. Removing
    // the whole class costs 1 + 3 - 2 = 2 per representative counted.
    Instance inst = build_normalized(2, {{0}, {0}, {0}, {1}, {1}, {1}}, 2, 2, 2);
    Verdict v = reduced_solve(inst, kIlp);
    REQUIRE_FALSE(solve_rcp_bruteforce(inst).sat());
    CHECK_FALSE(v.sat());
    CHECK(v.blocker()->users.size() == 2);
    CHECK(verify_witness(inst, v));
}

TEST_CASE("reduced user set is bounded by d * 2^p") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        Instance inst = random_small(rng, 10, 3, 2, 3);
        int reduced = 0;
        for (const auto& [c, users] : class_partition(inst).classes)
            if (!c.empty()) reduced += std::min(static_cast<int>(users.size()), inst.d);
        CHECK(reduced <= inst.d * (1 << inst.p()));
        // Every reduced candidate test restricts to those users only.
        Verdict v = reduced_solve(inst, kDp);
        CHECK(v.sat() == solve_rcp_bruteforce(inst).sat());
    }
}

TEST_CASE("fastpath examples") {
    Instance counts = build_normalized(2, {{0, 1}, {0}}, 1, 1, kInf);
    Verdict v = fastpath_d1_tinf(counts);
    CHECK_FALSE(v.sat());
    CHECK(v.blocker()->users == UserSet{0});
    CHECK_FALSE(solve_rcp_bruteforce(counts).sat());

    CHECK(fastpath_d1_tinf(build_normalized(2, {{0}, {1}}, 0, 1, kInf)).sat());

    Instance three = build_normalized(2, {{0, 1}, {0, 1}, {0, 1}, {1}}, 3, 1, kInf);
    CHECK_FALSE(fastpath_d1_tinf(three).sat());
    CHECK_FALSE(solve_rcp_bruteforce(three).sat());
    CHECK(fastpath_d1_tinf(three).blocker()->users == UserSet{0, 1, 2});

    CHECK_THROWS_AS(fastpath_d1_tinf(build_normalized(2, {{0}}, 0, 2, kInf)), PreconditionViolation);
    CHECK_THROWS_AS(fastpath_d1_tinf(build_normalized(2, {{0}}, 0, 1, 1)), PreconditionViolation);
}

TEST_CASE("solve dispatch") {
    Verdict fast = solve(build_normalized(2, {{0}, {1}}, 1, 1, kInf), Strategy::automatic);
    CHECK(fast.stats.algorithm == "auto/fastpath");

    Verdict s0 = solve(build_normalized(2, {{0}, {1}}, 0, 2, 1), Strategy::automatic);
    CHECK(s0.stats.algorithm == "auto/dp");

    SolveOptions tight;
    tight.dp.max_bits = 1;
    Verdict ilp = solve(build_normalized(2, {{0}, {1}}, 0, 2, 1), Strategy::automatic, tight);
    CHECK(ilp.stats.algorithm == "auto/ilp");

    Verdict br = solve(build_normalized(2, {{0}, {1}}, 1, 2, 1), Strategy::automatic);
    CHECK(br.stats.algorithm == "auto/branch+dp");

    CHECK_THROWS_AS(solve(build_normalized(2, {{0}}, 1, 1, 1), Strategy::dp), PreconditionViolation);
    CHECK(parse_strategy("reduced") == Strategy::reduced);
    CHECK_THROWS_AS(parse_strategy("magic"), InputError);
}

TEST_CASE("general solvers agree with the oracle on every relation with n <= 4, p <= 3") {
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 3; ++m)
            for (std::uint64_t code = 0; code < (1ULL << (n * m)); ++code)
                for (int s = 0; s <= 2; ++s)
                    for (int d = 1; d <= 2; ++d)
                        for (std::optional<int> t : {std::optional<int>(1), std::optional<int>(2), kInf})
                            check_general(from_code(n, m, code, s, d, t));
}

TEST_CASE("general solvers agree with the oracle on random instances") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 600; ++trial) check_general(random_small(rng, 9, 4, 2, 3));
}

TEST_CASE("minimal blockers satisfy the class inequality") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        Instance inst = random_small(rng, 8, 3, 3, 3);
        auto blocker = find_minimal_blocker(inst);
        if (!blocker) continue;
        const ClassPartition cp = class_partition(inst);
        for (const auto& [c, users] : cp.classes) {
            int inside = 0;
            for (int u : users) inside += std::binary_search(blocker->users.begin(), blocker->users.end(), u);
            if (inside > 0) CHECK(static_cast<int>(users.size()) - inside < inst.d);
        }
    }
}
