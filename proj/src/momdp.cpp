#include "morl/momdp.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

namespace morl {

namespace {

constexpr double kMassTolerance = 1e-9;

bool mass_ok(double mass) { return std::abs(mass - 1.0) <= kMassTolerance; }

bool all_finite(const RewardVector& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::True: return "true";
        case Regime::Proxy: return "proxy";
        case Regime::None: return "none";
    }
    return "?";
}

std::string to_string(ObservationKind kind) {
    switch (kind) {
        case ObservationKind::Markov: return "markov";
        case ObservationKind::TrueAugmented: return "true-augmented";
        case ObservationKind::ProxyAugmented: return "proxy-augmented";
    }
    return "?";
}

Regime parse_regime(const std::string& text) {
    if (text == "true") return Regime::True;
    if (text == "proxy") return Regime::Proxy;
    if (text == "none") return Regime::None;
    throw InvalidInput(fmt::format("unknown regime '{}' (expected true, proxy or none)", text));
}

ObservationKind parse_observation_kind(const std::string& text) {
    if (text == "markov") return ObservationKind::Markov;
    if (text == "true-augmented") return ObservationKind::TrueAugmented;
    if (text == "proxy-augmented") return ObservationKind::ProxyAugmented;
    throw InvalidInput(fmt::format(
        "unknown observation kind '{}' (expected markov, true-augmented or proxy-augmented)", text));
}

std::optional<StateId> Momdp::find_state(const std::string& name) const {
    for (StateId s = 0; s < states.size(); ++s)
        if (states[s].name == name) return s;
    return std::nullopt;
}

std::optional<ActionIndex> Momdp::find_action(StateId s, const std::string& name) const {
    const auto& actions = states.at(s).actions;
    for (ActionIndex a = 0; a < actions.size(); ++a)
        if (actions[a].name == name) return a;
    return std::nullopt;
}

const Branch* Momdp::find_branch(StateId s, ActionIndex a, StateId next) const {
    for (const auto& b : states.at(s).actions.at(a).branches)
        if (b.to == next) return &b;
    return nullptr;
}

RewardVector Momdp::expected_reward(StateId s, ActionIndex a, StateId next) const {
    const Branch* b = find_branch(s, a, next);
    if (b == nullptr)
        throw InvalidInput(fmt::format("no transition {} -> {}", states.at(s).name, states.at(next).name));
    RewardVector mean(d, 0.0);
    for (const auto& o : b->outcomes)
        for (std::size_t i = 0; i < d; ++i) mean[i] += o.prob * o.vector[i];
    return mean;
}

std::vector<Violation> validate(const Momdp& m) {
    std::vector<Violation> out;
    auto add = [&out](std::string where, std::string message) {
        out.push_back({std::move(where), std::move(message)});
    };

    if (m.d == 0) add("model", "objective count d must be positive");
    if (!(m.gamma >= 0.0 && m.gamma <= 1.0)) add("model", fmt::format("gamma {} outside [0, 1]", m.gamma));
    if (m.horizon <= 0) add("model", fmt::format("horizon {} must be positive", m.horizon));
    if (m.states.empty()) add("model", "no states");

    bool structural_ok = true;
    const std::size_t n = m.states.size();

    for (StateId s = 0; s < n; ++s) {
        const State& st = m.states[s];
        if (st.terminal && !st.actions.empty()) add(st.name, "terminal state has outgoing transitions");
        if (!st.terminal && st.actions.empty()) add(st.name, "non-terminal state has no actions");

        for (const Action& act : st.actions) {
            const std::string where = fmt::format("({}, {})", st.name, act.name);
            double mass = 0.0;
            for (const Branch& b : act.branches) {
                if (b.to >= n) {
                    add(where, fmt::format("successor index {} out of range", b.to));
                    structural_ok = false;
                    continue;
                }
                const std::string bwhere = fmt::format("({}, {}, {})", st.name, act.name, m.states[b.to].name);
                if (!(b.prob >= 0.0 && b.prob <= 1.0))
                    add(bwhere, fmt::format("transition probability {} outside [0, 1]", b.prob));
                mass += b.prob;

                if (b.outcomes.empty()) {
                    add(bwhere, "missing reward distribution");
                    continue;
                }
                double rmass = 0.0;
                for (const RewardOutcome& o : b.outcomes) {
                    if (!(o.prob >= 0.0 && o.prob <= 1.0))
                        add(bwhere, fmt::format("reward probability {} outside [0, 1]", o.prob));
                    rmass += o.prob;
                    if (o.vector.size() != m.d)
                        add(bwhere, fmt::format("reward dimension {} ≠ {}", o.vector.size(), m.d));
                    else if (!all_finite(o.vector))
                        add(bwhere, "reward vector has non-finite components");
                }
                if (!mass_ok(rmass)) add(bwhere, fmt::format("reward mass {} ≠ 1", rmass));
            }
            if (!mass_ok(mass)) add(where, fmt::format("transition mass {} ≠ 1", mass));
        }
    }

    if (m.mu.size() != n) {
        add("mu", fmt::format("mu has {} entries for {} states", m.mu.size(), n));
        structural_ok = false;
    } else {
        double mass = 0.0;
        for (StateId s = 0; s < n; ++s) {
            if (m.mu[s] < 0.0) add("mu", fmt::format("negative initial mass on {}", m.states[s].name));
            if (m.mu[s] > 0.0 && m.states[s].terminal)
                add("mu", fmt::format("initial mass {} on terminal state {}", m.mu[s], m.states[s].name));
            mass += m.mu[s];
        }
        if (!mass_ok(mass)) add("mu", fmt::format("initial mass {} ≠ 1", mass));
    }

    // Every trajectory must hit a terminal state within `horizon` steps:
    // after `horizon` layers of expansion no non-terminal state may remain.
    if (structural_ok && m.horizon > 0 && n > 0) {
        std::set<StateId> frontier;
        for (StateId s = 0; s < n; ++s)
            if (m.mu[s] > 0.0 && !m.states[s].terminal) frontier.insert(s);
        for (int t = 0; t < m.horizon && !frontier.empty(); ++t) {
            std::set<StateId> next;
            for (StateId s : frontier)
                for (const Action& act : m.states[s].actions)
                    for (const Branch& b : act.branches)
                        if (b.prob > 0.0 && !m.states[b.to].terminal) next.insert(b.to);
            frontier = std::move(next);
        }
        for (StateId s : frontier)
            add(m.states[s].name,
                fmt::format("non-terminal state still reachable after horizon {} steps", m.horizon));
    }
    return out;
}

void require_valid(const Momdp& momdp) {
    const auto violations = validate(momdp);
    if (violations.empty()) return;
    std::string msg = "invalid MOMDP:";
    for (const auto& v : violations) msg += fmt::format("\n  {}: {}", v.where, v.message);
    throw InvalidInput(msg);
}

RewardVector accumulate(const RewardVector& acc, const RewardVector& r, double gamma, int t) {
    if (t < 0) throw InvalidInput(fmt::format("negative step index {}", t));
    if (acc.size() != r.size())
        throw InvalidInput(fmt::format("dimension mismatch: acc has {}, reward has {}", acc.size(), r.size()));
    const double scale = std::pow(gamma, t);
    RewardVector out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i] + scale * r[i];
    return out;
}

RewardVector discounted_sum(const std::vector<RewardVector>& rewards, double gamma, std::size_t d) {
    RewardVector acc(d, 0.0);
    for (std::size_t t = 0; t < rewards.size(); ++t) acc = accumulate(acc, rewards[t], gamma, static_cast<int>(t));
    return acc;
}

AugmentedState augment(const Momdp& momdp, StateId state, RewardVector acc, int step) {
    if (state >= momdp.num_states()) throw InvalidInput(fmt::format("unknown state id {}", state));
    if (acc.size() != momdp.d)
        throw InvalidInput(fmt::format("accumulated reward has dimension {}, model has {}", acc.size(), momdp.d));
    if (!all_finite(acc)) throw InvalidInput("accumulated reward has non-finite components");
    if (step < 0 || step > momdp.horizon)
        throw InvalidInput(fmt::format("step {} outside [0, {}]", step, momdp.horizon));
    return AugmentedState{state, std::move(acc), step};
}

std::vector<std::int64_t> quantize(const RewardVector& acc, double grid) {
    std::vector<std::int64_t> q(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) q[i] = std::llround(acc[i] / grid);
    return q;
}

RewardVector dequantize(const std::vector<std::int64_t>& acc, double grid) {
    RewardVector v(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) v[i] = static_cast<double>(acc[i]) * grid;
    return v;
}

ObservationKey make_key(const AugmentedState& obs, double grid) {
    return ObservationKey{obs.state, obs.step, quantize(obs.acc, grid)};
}

ObservationKey markov_key(StateId state) { return ObservationKey{state, 0, {}}; }

}  // namespace morl
