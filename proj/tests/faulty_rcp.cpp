// CLI build whose dp answers wrongly on instances with exactly three users.
#include "cli.hpp"

int main(int argc, char** argv) {
    rcp::cli::Hooks hooks;
    hooks.solve = [](const rcp::Instance& inst, rcp::Strategy s, const rcp::SolveOptions& opts) {
        rcp::Verdict v = rcp::solve(inst, s, opts);
        if (s == rcp::Strategy::dp && inst.num_users() == 3) {
            v.answer = v.sat() ? rcp::Answer::unsat : rcp::Answer::sat;
            v.witness = std::monostate{};
        }
        return v;
    };
    return rcp::cli::run(argc, argv, hooks);
}
