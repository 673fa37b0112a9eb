#include "morl/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "morl/envs.hpp"

namespace morl::io {

namespace {

template <typename T>
T field(const json& j, const char* name, const char* context) {
    if (!j.is_object() || !j.contains(name))
        throw InvalidInput(fmt::format("{}: missing field '{}'", context, name));
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw InvalidInput(fmt::format("{}: field '{}' has the wrong type ({})", context, name, e.what()));
    }
}

StateId state_ref(const Momdp& m, const json& j, const char* name, const char* context) {
    const auto id = field<std::string>(j, name, context);
    auto s = m.find_state(id);
    if (!s) throw InvalidInput(fmt::format("{}: unknown state '{}'", context, id));
    return *s;
}

ActionIndex action_ref(const Momdp& m, StateId s, const std::string& name, const char* context) {
    auto a = m.find_action(s, name);
    if (!a) throw InvalidInput(fmt::format("{}: state '{}' has no action '{}'", context, m.states[s].name, name));
    return *a;
}

json acc_json(const std::vector<std::int64_t>& q, double grid) { return dequantize(q, grid); }

}  // namespace

json to_json(const Momdp& m) {
    json states = json::array();
    json mu = json::object();
    json transitions = json::array();
    json rewards = json::array();
    for (StateId s = 0; s < m.num_states(); ++s) {
        const State& st = m.states[s];
        json entry = {{"id", st.name}, {"terminal", st.terminal}};
        if (!st.actions.empty()) {
            json names = json::array();
            for (const auto& a : st.actions) names.push_back(a.name);
            entry["actions"] = names;
        }
        states.push_back(entry);
        if (s < m.mu.size() && m.mu[s] != 0.0) mu[st.name] = m.mu[s];
        for (const auto& act : st.actions) {
            for (const auto& b : act.branches) {
                const std::string& to = b.to < m.num_states() ? m.states[b.to].name : std::to_string(b.to);
                transitions.push_back({{"from", st.name}, {"action", act.name}, {"to", to}, {"prob", b.prob}});
                json outcomes = json::array();
                for (const auto& o : b.outcomes) outcomes.push_back({{"vector", o.vector}, {"prob", o.prob}});
                rewards.push_back({{"from", st.name}, {"action", act.name}, {"to", to}, {"outcomes", outcomes}});
            }
        }
    }
    return {{"d", m.d},         {"gamma", m.gamma},             {"horizon", m.horizon}, {"states", states},
            {"mu", mu},         {"transitions", transitions},   {"rewards", rewards}};
}

Momdp momdp_from_json(const json& doc) {
    constexpr const char* ctx = "MOMDP";
    if (!doc.is_object()) throw InvalidInput("MOMDP: document is not an object");
    Momdp m;
    const auto d = field<long long>(doc, "d", ctx);
    if (d < 0) throw InvalidInput("MOMDP: d must be non-negative");
    m.d = static_cast<std::size_t>(d);
    m.gamma = field<double>(doc, "gamma", ctx);
    m.horizon = field<int>(doc, "horizon", ctx);

    for (const auto& sj : field<json>(doc, "states", ctx)) {
        State st;
        st.name = field<std::string>(sj, "id", "MOMDP state");
        st.terminal = sj.value("terminal", false);
        if (m.find_state(st.name)) throw InvalidInput(fmt::format("MOMDP: duplicate state '{}'", st.name));
        if (sj.contains("actions"))
            for (const auto& a : field<std::vector<std::string>>(sj, "actions", "MOMDP state"))
                st.actions.push_back(Action{a, {}});
        m.states.push_back(std::move(st));
    }

    m.mu.assign(m.num_states(), 0.0);
    const json mu = field<json>(doc, "mu", ctx);
    if (!mu.is_object()) throw InvalidInput("MOMDP: field 'mu' must map state ids to probabilities");
    for (const auto& [name, p] : mu.items()) {
        auto s = m.find_state(name);
        if (!s) throw InvalidInput(fmt::format("MOMDP mu: unknown state '{}'", name));
        if (!p.is_number()) throw InvalidInput(fmt::format("MOMDP mu: probability for '{}' is not a number", name));
        m.mu[*s] = p.get<double>();
    }

    for (const auto& tj : field<json>(doc, "transitions", ctx)) {
        constexpr const char* tctx = "MOMDP transition";
        const StateId from = state_ref(m, tj, "from", tctx);
        const StateId to = state_ref(m, tj, "to", tctx);
        const auto name = field<std::string>(tj, "action", tctx);
        auto& actions = m.states[from].actions;
        auto a = m.find_action(from, name);
        if (!a) {
            actions.push_back(Action{name, {}});
            a = actions.size() - 1;
        }
        if (m.find_branch(from, *a, to))
            throw InvalidInput(fmt::format("MOMDP: duplicate transition ({}, {}, {})", m.states[from].name, name,
                                           m.states[to].name));
        actions[*a].branches.push_back(Branch{to, field<double>(tj, "prob", tctx), {}});
    }

    for (const auto& rj : field<json>(doc, "rewards", ctx)) {
        constexpr const char* rctx = "MOMDP reward";
        const StateId from = state_ref(m, rj, "from", rctx);
        const StateId to = state_ref(m, rj, "to", rctx);
        const auto name = field<std::string>(rj, "action", rctx);
        const ActionIndex a = action_ref(m, from, name, rctx);
        auto& branches = m.states[from].actions[a].branches;
        auto it = std::find_if(branches.begin(), branches.end(), [to](const Branch& b) { return b.to == to; });
        if (it == branches.end())
            throw InvalidInput(fmt::format("MOMDP: reward for undeclared transition ({}, {}, {})",
                                           m.states[from].name, name, m.states[to].name));
        if (!it->outcomes.empty())
            throw InvalidInput(fmt::format("MOMDP: duplicate reward distribution for ({}, {}, {})",
                                           m.states[from].name, name, m.states[to].name));
        for (const auto& oj : field<json>(rj, "outcomes", rctx))
            it->outcomes.push_back(RewardOutcome{field<RewardVector>(oj, "vector", "MOMDP reward outcome"),
                                                 field<double>(oj, "prob", "MOMDP reward outcome")});
    }
    return m;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput(fmt::format("file not found: {}", path.string()));
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(fmt::format("{}: not valid JSON ({})", path.string(), e.what()));
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw InvalidInput(fmt::format("cannot write {}", path.string()));
    out << text;
}

Momdp load_momdp(const std::filesystem::path& path) {
    Momdp m = momdp_from_json(read_json_file(path));
    require_valid(m);
    return m;
}

Momdp resolve_env(const std::string& ref, bool validated) {
    if (ref == "builtin:fig1") return envs::fig1();
    if (ref == "builtin:fig2") return envs::fig2();
    if (ref.rfind("builtin:", 0) == 0)
        throw InvalidInput(fmt::format("unknown built-in environment '{}' (expected builtin:fig1 or builtin:fig2)", ref));
    return validated ? load_momdp(ref) : momdp_from_json(read_json_file(ref));
}

json to_json(const Policy& policy, const Momdp& m) {
    json entries = json::array();
    for (const auto& [key, a] : policy.table()) {
        json e = {{"state", m.states.at(key.state).name}, {"action", m.states[key.state].actions.at(a).name}};
        if (policy.kind() != ObservationKind::Markov) {
            e["step"] = key.step;
            e["acc"] = acc_json(key.acc, policy.grid());
        }
        entries.push_back(e);
    }
    json fallback = policy.fallback() ? json(*policy.fallback()) : json(nullptr);
    return {{"observation_kind", to_string(policy.kind())},
            {"grid", policy.grid()},
            {"entries", entries},
            {"fallback", fallback}};
}

Policy policy_from_json(const json& doc, const Momdp& m) {
    constexpr const char* ctx = "policy";
    Policy p(parse_observation_kind(field<std::string>(doc, "observation_kind", ctx)),
             doc.value("grid", kDefaultGrid));
    for (const auto& e : field<json>(doc, "entries", ctx)) {
        const StateId s = state_ref(m, e, "state", "policy entry");
        const ActionIndex a = action_ref(m, s, field<std::string>(e, "action", "policy entry"), "policy entry");
        if (p.kind() == ObservationKind::Markov)
            p.set(markov_key(s), a);
        else
            p.set(p.key(s, field<int>(e, "step", "policy entry"), field<RewardVector>(e, "acc", "policy entry")), a);
    }
    if (doc.contains("fallback") && !doc.at("fallback").is_null())
        p.set_fallback(doc.at("fallback").get<ActionIndex>());
    p.check_legal(m);
    return p;
}

json to_json(const RewardModel& model, const Momdp& m) {
    json entries = json::array();
    for (const auto& [key, e] : model.entries()) {
        const auto& [s, a, next] = key;
        entries.push_back({{"from", m.states.at(s).name},
                           {"action", m.states[s].actions.at(a).name},
                           {"to", m.states.at(next).name},
                           {"mean", e.mean},
                           {"count", e.count}});
    }
    return {{"d", model.dimension()}, {"strict", model.strict()}, {"entries", entries}};
}

RewardModel reward_model_from_json(const json& doc, const Momdp& m) {
    constexpr const char* ctx = "reward model";
    RewardModel model(field<std::size_t>(doc, "d", ctx), doc.value("strict", false));
    for (const auto& e : field<json>(doc, "entries", ctx)) {
        const StateId s = state_ref(m, e, "from", "reward model entry");
        const StateId next = state_ref(m, e, "to", "reward model entry");
        const ActionIndex a = action_ref(m, s, field<std::string>(e, "action", "reward model entry"), ctx);
        model.set_entry({s, a, next}, RewardModel::Entry{field<RewardVector>(e, "mean", "reward model entry"),
                                                         field<std::size_t>(e, "count", "reward model entry")});
    }
    return model;
}

json to_json(const QTable& table, const Momdp& m) {
    json entries = json::array();
    for (const auto& [key, e] : table.entries)
        entries.push_back({{"state", m.states.at(key.state).name},
                           {"step", key.step},
                           {"acc", acc_json(key.acc, table.grid)},
                           {"q", e.q},
                           {"visits", e.visits}});
    return {{"grid", table.grid}, {"entries", entries}};
}

std::uint64_t fingerprint(const json& doc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : doc.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fingerprint(const Momdp& momdp) { return fingerprint(to_json(momdp)); }

std::uint64_t fingerprint(const Policy& policy, const Momdp& momdp) { return fingerprint(to_json(policy, momdp)); }

std::string hex(std::uint64_t value) { return fmt::format("{:016x}", value); }

}  // namespace morl::io
