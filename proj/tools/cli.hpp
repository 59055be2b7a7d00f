#pragma once

#include <functional>
#include <vector>

#include "rcp/sweep.hpp"

namespace rcp::cli {

enum ExitCode { kSat = 0, kUnsat = 1, kUsage = 2, kBudget = 3, kInternal = 4 };

struct Hooks {
    // Entry point for `solve` and the swept solvers; tests swap in a faulty one.
    SolveFn solve = rcp::solve;
};

int run(int argc, char** argv, const Hooks& hooks = {});

} // namespace rcp::cli
