#include "morl/envs.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "morl/rng.hpp"

namespace morl::envs {

namespace {

Branch branch(StateId to, double prob, std::vector<RewardOutcome> outcomes) {
    return Branch{to, prob, std::move(outcomes)};
}

}  // namespace

Momdp fig1() {
    Momdp m;
    m.d = 2;
    m.gamma = 1.0;
    m.horizon = 2;
    constexpr StateId s1 = 1, end = 2;
    m.states = {
        State{"s0", false, {Action{"a1", {branch(s1, 1.0, {{{4, 0}, 0.5}, {{0, 4}, 0.5}})}}}},
        State{"s1",
              false,
              {Action{"aL", {branch(end, 1.0, {{{0, 4}, 1.0}})}}, Action{"aR", {branch(end, 1.0, {{{4, 0}, 1.0}})}}}},
        State{"end", true, {}},
    };
    m.mu = {1.0, 0.0, 0.0};
    return m;
}

Momdp fig2() {
    Momdp m = fig1();
    constexpr StateId s2 = 2, end = 3;
    // Insert s2 ahead of the terminal state and renumber references to it.
    for (auto& st : m.states)
        for (auto& act : st.actions)
            for (auto& b : act.branches)
                if (b.to == 2) b.to = end;
    m.states.insert(m.states.begin() + 2, State{"s2", false, {Action{"a1", {branch(end, 1.0, {{{3, 3}, 1.0}})}}}});
    m.states[0].actions.push_back(Action{"a2", {branch(s2, 1.0, {{{0, 0}, 1.0}})}});
    m.mu = {1.0, 0.0, 0.0, 0.0};
    return m;
}

void GeneratorConfig::check() const {
    if (min_states == 0 || min_states > max_states) throw InvalidInput("generator: bad state count range");
    if (min_actions == 0 || min_actions > max_actions) throw InvalidInput("generator: bad action count range");
    if (min_outcomes == 0 || min_outcomes > max_outcomes) throw InvalidInput("generator: bad outcome count range");
    if (max_successors == 0) throw InvalidInput("generator: max_successors must be positive");
    if (d == 0) throw InvalidInput("generator: d must be positive");
    if (min_reward > max_reward) throw InvalidInput("generator: bad reward range");
    if (horizon <= 0) throw InvalidInput("generator: horizon must be positive");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidInput("generator: gamma outside [0, 1]");
}

Momdp generate(const GeneratorConfig& cfg) {
    cfg.check();
    Rng rng(derive_seed(cfg.seed, 0x9e11));
    auto pick = [&rng](std::size_t lo, std::size_t hi) { return lo + rng.index(hi - lo + 1); };
    auto weights = [&](std::size_t n) {
        std::vector<double> w(n);
        for (auto& x : w) x = static_cast<double>(pick(1, 4));
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        for (auto& x : w) x /= total;
        return w;
    };
    auto reward = [&] {
        RewardVector r(cfg.d);
        for (auto& x : r)
            x = static_cast<double>(cfg.min_reward +
                                    static_cast<int>(rng.index(static_cast<std::size_t>(cfg.max_reward - cfg.min_reward) + 1)));
        return r;
    };

    const std::size_t n = pick(cfg.min_states, cfg.max_states);
    const std::size_t layers = std::min<std::size_t>(n, static_cast<std::size_t>(cfg.horizon));
    std::vector<std::size_t> layer_of(n);
    for (std::size_t i = 0; i < n; ++i) layer_of[i] = i < layers ? i : rng.index(layers);
    std::sort(layer_of.begin(), layer_of.end());

    Momdp m;
    m.d = cfg.d;
    m.gamma = cfg.gamma;
    m.horizon = cfg.horizon;
    const StateId end = n;
    for (std::size_t i = 0; i < n; ++i) m.states.push_back(State{fmt::format("s{}", i), false, {}});
    m.states.push_back(State{"end", true, {}});

    std::vector<std::vector<StateId>> by_layer(layers);
    for (StateId s = 0; s < n; ++s) by_layer[layer_of[s]].push_back(s);

    m.mu.assign(n + 1, 0.0);
    if (cfg.deterministic) {
        m.mu[0] = 1.0;
    } else {
        const auto w = weights(by_layer[0].size());
        for (std::size_t i = 0; i < w.size(); ++i) m.mu[by_layer[0][i]] = w[i];
    }

    for (StateId s = 0; s < n; ++s) {
        std::vector<StateId> candidates;
        if (layer_of[s] + 1 < layers) candidates = by_layer[layer_of[s] + 1];
        candidates.push_back(end);

        const std::size_t action_count = pick(cfg.min_actions, cfg.max_actions);
        for (std::size_t a = 0; a < action_count; ++a) {
            Action act{fmt::format("a{}", a), {}};
            const std::size_t succ =
                cfg.deterministic ? 1 : pick(1, std::min(cfg.max_successors, candidates.size()));
            std::vector<StateId> pool = candidates;
            std::vector<StateId> chosen;
            for (std::size_t k = 0; k < succ; ++k) {
                const std::size_t j = rng.index(pool.size());
                chosen.push_back(pool[j]);
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
            }
            std::sort(chosen.begin(), chosen.end());
            const auto probs = weights(chosen.size());
            for (std::size_t k = 0; k < chosen.size(); ++k) {
                std::vector<RewardOutcome> outcomes;
                if (cfg.terminal_only_rewards && chosen[k] != end) {
                    outcomes.push_back({RewardVector(cfg.d, 0.0), 1.0});
                } else {
                    const std::size_t count = cfg.deterministic ? 1 : pick(cfg.min_outcomes, cfg.max_outcomes);
                    const auto rprobs = weights(count);
                    for (std::size_t o = 0; o < count; ++o) outcomes.push_back({reward(), rprobs[o]});
                }
                act.branches.push_back(Branch{chosen[k], probs[k], std::move(outcomes)});
            }
            m.states[s].actions.push_back(std::move(act));
        }
    }
    return m;
}

}  // namespace morl::envs
