#include "rcp/io.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <json.hpp>

namespace rcp::io {
namespace {

using json = nlohmann::ordered_json;

// Thrown internally and turned into a ParseError at the API boundary.
struct Bad {
    std::string field;
    std::string message;
};

[[noreturn]] void fail(std::string field, std::string message) { throw Bad{std::move(field), std::move(message)}; }

const json& need(const json& obj, const std::string& at, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(at, std::string("missing field '") + key + "'");
    return *it;
}

void only_keys(const json& obj, const std::string& at, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
            fail(at + "/" + it.key(), "unknown field '" + it.key() + "'");
}

const json& object(const json& j, const std::string& at) {
    if (!j.is_object()) fail(at, "expected an object");
    return j;
}

const json& array(const json& j, const std::string& at) {
    if (!j.is_array()) fail(at, "expected an array");
    return j;
}

std::string str(const json& j, const std::string& at) {
    if (!j.is_string()) fail(at, "expected a string");
    std::string s = j.get<std::string>();
    if (s.empty()) fail(at, "empty id");
    return s;
}

std::int64_t integer(const json& j, const std::string& at) {
    if (!j.is_number_integer()) fail(at, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        fail(at, "integer out of range");
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(at, "integer out of range");
    return v;
}

std::string at_index(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

std::map<std::string, int> index_ids(const std::vector<std::string>& ids) {
    std::map<std::string, int> out;
    for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], static_cast<int>(i));
    return out;
}

int lookup(const std::map<std::string, int>& index, const std::string& id, const std::string& at, const char* what) {
    auto it = index.find(id);
    if (it == index.end()) fail(at, std::string("unknown ") + what + " id '" + id + "'");
    return it->second;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Report the line containing the failing byte.
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
        std::string msg = e.what();
        throw ParseError{"syntax error: " + msg, "", line};
    }
}

template <class T, class Fn>
Result<T> guarded(const std::string& text, Fn&& body) {
    try {
        return body(parse_json(text));
    } catch (const ParseError& e) {
        return e;
    } catch (const Bad& b) {
        return ParseError{b.message, b.field.empty() ? "/" : b.field, 0};
    } catch (const Error& e) {
        return ParseError{e.what(), "/", 0};
    }
}

json provenance_json(const Provenance& p) {
    json out;
    out["family"] = p.family;
    json params = json::object();
    for (const auto& [k, v] : p.params) params[k] = v;
    out["params"] = params;
    if (p.seed) out["seed"] = *p.seed;
    out["expected"] = to_string(p.expected);
    return out;
}

Provenance parse_provenance(const json& j) {
    const std::string at = "/provenance";
    object(j, at);
    only_keys(j, at, {"family", "params", "seed", "expected"});
    Provenance p;
    p.family = str(need(j, at, "family"), at + "/family");
    if (auto it = j.find("params"); it != j.end()) {
        object(*it, at + "/params");
        for (auto kv = it->begin(); kv != it->end(); ++kv) {
            if (!kv->is_string()) fail(at + "/params/" + kv.key(), "expected a string");
            p.params.emplace_back(kv.key(), kv->get<std::string>());
        }
    }
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_unsigned()) fail(at + "/seed", "expected a non-negative integer");
        p.seed = it->get<std::uint64_t>();
    }
    if (auto it = j.find("expected"); it != j.end()) {
        const std::string e = it->is_string() ? it->get<std::string>() : "";
        if (e != "SAT" && e != "UNSAT" && e != "unknown") fail(at + "/expected", "expected SAT, UNSAT or unknown");
        p.expected = parse_expected(e);
    }
    return p;
}

std::vector<std::string> id_list(const json& j, const std::string& at) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array(j, at).size(); ++i) out.push_back(str(j[i], at_index(at, i)));
    return out;
}

json user_list(const UserSet& users, const Instance& inst) {
    json out = json::array();
    for (int u : users) out.push_back(inst.user_ids.at(u));
    return out;
}

UserSet parse_user_list(const json& j, const std::string& at, const std::map<std::string, int>& index) {
    UserSet out;
    for (std::size_t i = 0; i < array(j, at).size(); ++i)
        out.push_back(lookup(index, str(j[i], at_index(at, i)), at_index(at, i), "user"));
    return out;
}

} // namespace

std::string ParseError::to_string() const {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "at " + field + ": ";
    return out + message;
}

std::string emit_instance(const Instance& inst, const std::optional<Provenance>& provenance) {
    validate(inst);
    json doc;
    doc["version"] = kInstanceVersion;
    doc["resources"] = inst.resource_ids;
    json users = json::array();
    for (int u = 0; u < inst.num_users(); ++u) {
        json entry;
        entry["id"] = inst.user_ids[u];
        json rs = json::array();
        for (int r : inst.access[u].members()) rs.push_back(inst.resource_ids[r]);
        entry["resources"] = rs;
        users.push_back(entry);
    }
    doc["users"] = users;
    json policy;
    json target = json::array();
    for (int r : inst.target.members()) target.push_back(inst.resource_ids[r]);
    policy["P"] = target;
    policy["s"] = inst.s;
    policy["d"] = inst.d;
    if (inst.t)
        policy["t"] = *inst.t;
    else
        policy["t"] = "inf";
    doc["policy"] = policy;
    if (provenance) doc["provenance"] = provenance_json(*provenance);
    return doc.dump(2) + "\n";
}

std::string emit_instance(const GeneratedInstance& g) { return emit_instance(g.instance, g.provenance); }

Result<InstanceDocument> parse_instance(const std::string& text) {
    return guarded<InstanceDocument>(text, [](const json& doc) -> InstanceDocument {
        object(doc, "/");
        only_keys(doc, "", {"version", "resources", "users", "policy", "provenance"});
        const json& version = need(doc, "", "version");
        if (!version.is_string() || version.get<std::string>() != kInstanceVersion)
            fail("/version", std::string("expected \"") + kInstanceVersion + "\"");

        Instance inst;
        inst.resource_ids = id_list(need(doc, "", "resources"), "/resources");
        if (static_cast<int>(inst.resource_ids.size()) > kMaxResources)
            fail("/resources", "more than " + std::to_string(kMaxResources) + " resources");
        std::map<std::string, int> rindex;
        for (std::size_t i = 0; i < inst.resource_ids.size(); ++i)
            if (!rindex.emplace(inst.resource_ids[i], static_cast<int>(i)).second)
                fail(at_index("/resources", i), "duplicate resource id '" + inst.resource_ids[i] + "'");

        const json& users = array(need(doc, "", "users"), "/users");
        std::map<std::string, int> uindex;
        for (std::size_t u = 0; u < users.size(); ++u) {
            const std::string at = at_index("/users", u);
            object(users[u], at);
            only_keys(users[u], at, {"id", "resources"});
            const std::string id = str(need(users[u], at, "id"), at + "/id");
            if (!uindex.emplace(id, static_cast<int>(u)).second) fail(at + "/id", "duplicate user id '" + id + "'");
            ResourceSet n;
            const std::string rat = at + "/resources";
            const auto held = id_list(need(users[u], at, "resources"), rat);
            for (std::size_t i = 0; i < held.size(); ++i) {
                const int r = lookup(rindex, held[i], at_index(rat, i), "resource");
                if (n.test(r)) fail(at_index(rat, i), "resource '" + held[i] + "' listed twice");
                n.set(r);
            }
            inst.user_ids.push_back(id);
            inst.access.push_back(n);
            inst.user_origin.push_back(static_cast<int>(u));
        }

        const json& policy = object(need(doc, "", "policy"), "/policy");
        only_keys(policy, "/policy", {"P", "s", "d", "t"});
        const auto target = id_list(need(policy, "/policy", "P"), "/policy/P");
        for (std::size_t i = 0; i < target.size(); ++i) {
            const int r = lookup(rindex, target[i], at_index("/policy/P", i), "resource");
            if (inst.target.test(r)) fail(at_index("/policy/P", i), "resource '" + target[i] + "' listed twice");
            inst.target.set(r);
        }
        inst.s = static_cast<int>(integer(need(policy, "/policy", "s"), "/policy/s"));
        if (inst.s < 0) fail("/policy/s", "s must be >= 0");
        inst.d = static_cast<int>(integer(need(policy, "/policy", "d"), "/policy/d"));
        if (inst.d < 1) fail("/policy/d", "d must be >= 1");
        const json& t = need(policy, "/policy", "t");
        if (t.is_string()) {
            if (t.get<std::string>() != "inf") fail("/policy/t", "expected a positive integer or \"inf\"");
        } else {
            const auto tv = integer(t, "/policy/t");
            if (tv < 1) fail("/policy/t", "t must be >= 1 or \"inf\"");
            inst.t = static_cast<int>(tv);
        }

        InstanceDocument out;
        if (auto it = doc.find("provenance"); it != doc.end()) out.provenance = parse_provenance(*it);
        validate(inst);
        out.instance = std::move(inst);
        return out;
    });
}

std::string emit_verdict(const Verdict& v, const Instance& inst, bool with_witness, bool with_stats) {
    json doc;
    doc["version"] = kVerdictVersion;
    doc["answer"] = to_string(v.answer);
    doc["algorithm"] = v.stats.algorithm;
    if (with_witness) {
        json w = nullptr;
        if (const TeamSet* ts = v.teams()) {
            w = json::object();
            json teams = json::array();
            for (const auto& team : ts->teams) teams.push_back(user_list(team, inst));
            w["teams"] = teams;
        } else if (const BlockerSet* b = v.blocker()) {
            w = json::object();
            w["blocker"] = user_list(b->users, inst);
        }
        doc["witness"] = w;
    }
    if (with_stats) {
        json stats;
        stats["nodes"] = v.stats.nodes;
        doc["stats"] = stats;
    }
    return doc.dump(2) + "\n";
}

Result<Verdict> parse_verdict(const std::string& text, const Instance& inst) {
    return guarded<Verdict>(text, [&inst](const json& doc) -> Verdict {
        object(doc, "/");
        only_keys(doc, "", {"version", "answer", "algorithm", "witness", "stats"});
        const json& version = need(doc, "", "version");
        if (!version.is_string() || version.get<std::string>() != kVerdictVersion)
            fail("/version", std::string("expected \"") + kVerdictVersion + "\"");
        Verdict v;
        const std::string answer = str(need(doc, "", "answer"), "/answer");
        if (answer == "SAT")
            v.answer = Answer::sat;
        else if (answer == "UNSAT")
            v.answer = Answer::unsat;
        else
            fail("/answer", "expected SAT or UNSAT");
        if (auto it = doc.find("algorithm"); it != doc.end()) {
            if (!it->is_string()) fail("/algorithm", "expected a string");
            v.stats.algorithm = it->get<std::string>();
        }
        if (auto it = doc.find("stats"); it != doc.end()) {
            object(*it, "/stats");
            if (auto n = it->find("nodes"); n != it->end()) {
                if (!n->is_number_unsigned()) fail("/stats/nodes", "expected a non-negative integer");
                v.stats.nodes = n->get<std::uint64_t>();
            }
        }
        const auto index = index_ids(inst.user_ids);
        if (auto it = doc.find("witness"); it != doc.end() && !it->is_null()) {
            const json& w = object(*it, "/witness");
            only_keys(w, "/witness", {"teams", "blocker"});
            if (w.contains("teams") == w.contains("blocker")) fail("/witness", "expected exactly one of teams, blocker");
            if (w.contains("teams")) {
                TeamSet ts;
                const json& teams = array(w["teams"], "/witness/teams");
                for (std::size_t i = 0; i < teams.size(); ++i)
                    ts.teams.push_back(parse_user_list(teams[i], at_index("/witness/teams", i), index));
                v.witness = std::move(ts);
            } else {
                v.witness = BlockerSet{parse_user_list(w["blocker"], "/witness/blocker", index)};
            }
        }
        return v;
    });
}

std::string emit_trace(const KernelTrace& trace) {
    json doc;
    doc["version"] = kTraceVersion;
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json step;
        step["rule"] = to_string(s.rule);
        step["deleted_users"] = s.deleted_users;
        step["deleted_resources"] = s.deleted_resources;
        json pairs = json::array();
        for (const auto& [r, u] : s.pairs) pairs.push_back(json::array({r, u}));
        step["pairs"] = pairs;
        steps.push_back(step);
    }
    doc["steps"] = steps;
    return doc.dump(2) + "\n";
}

Result<KernelTrace> parse_trace(const std::string& text) {
    return guarded<KernelTrace>(text, [](const json& doc) -> KernelTrace {
        object(doc, "/");
        only_keys(doc, "", {"version", "steps"});
        const json& version = need(doc, "", "version");
        if (!version.is_string() || version.get<std::string>() != kTraceVersion)
            fail("/version", std::string("expected \"") + kTraceVersion + "\"");
        KernelTrace trace;
        const json& steps = array(need(doc, "", "steps"), "/steps");
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const std::string at = at_index("/steps", i);
            const json& s = object(steps[i], at);
            only_keys(s, at, {"rule", "deleted_users", "deleted_resources", "pairs"});
            KernelStep step;
            const std::string rule = str(need(s, at, "rule"), at + "/rule");
            try {
                step.rule = parse_kernel_rule(rule);
            } catch (const Error&) {
                fail(at + "/rule", "unknown rule '" + rule + "'");
            }
            step.deleted_users = id_list(need(s, at, "deleted_users"), at + "/deleted_users");
            step.deleted_resources = id_list(need(s, at, "deleted_resources"), at + "/deleted_resources");
            const json& pairs = array(need(s, at, "pairs"), at + "/pairs");
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                const std::string pat = at_index(at + "/pairs", k);
                if (!pairs[k].is_array() || pairs[k].size() != 2) fail(pat, "expected a [resource, user] pair");
                step.pairs.emplace_back(str(pairs[k][0], pat + "/0"), str(pairs[k][1], pat + "/1"));
            }
            trace.steps.push_back(std::move(step));
        }
        return trace;
    });
}

} // namespace rcp::io
