#include <algorithm>

#include "rcp/oracle.hpp"
#include "rcp/policy.hpp"

namespace rcp {

bool verify_witness(const Instance& inst, const Verdict& v) {
    if (const TeamSet* teams = v.teams()) return v.sat() && inst.s == 0 && is_team_set(inst, *teams);
    if (const BlockerSet* blocker = v.blocker()) {
        const auto& users = blocker->users;
        if (v.sat() || static_cast<int>(users.size()) > inst.s) return false;
        if (!std::is_sorted(users.begin(), users.end()) ||
            std::adjacent_find(users.begin(), users.end()) != users.end())
            return false;
        if (!users.empty() && (users.front() < 0 || users.back() >= inst.num_users())) return false;
        return is_blocker(inst, users, OracleOptions{.unlimited = true});
    }
    return false;
}

} // namespace rcp
