#pragma once

#include <cstdint>

#include "morl/momdp.hpp"

namespace morl::envs {

/// Two-step problem where the best action at s1 depends on the reward
/// received on the way in. s0 --a1--> s1 pays (4,0) or (0,4) with equal
/// probability; at s1, aL pays (0,4) and aR pays (4,0), then the episode ends.
Momdp fig1();

/// fig1 plus a safe route: s0 --a2--> s2 pays (0,0), then s2 --a1--> end
/// pays (3,3).
Momdp fig2();

struct GeneratorConfig {
    std::size_t min_states = 1;  // non-terminal states
    std::size_t max_states = 3;
    std::size_t min_actions = 1;
    std::size_t max_actions = 3;
    std::size_t min_outcomes = 1;
    std::size_t max_outcomes = 2;
    std::size_t max_successors = 2;
    std::size_t d = 2;
    int min_reward = 0;
    int max_reward = 4;
    int horizon = 3;
    double gamma = 1.0;
    /// Single initial state, single successor and single reward per action.
    bool deterministic = false;
    /// Non-zero rewards only on transitions that enter the terminal state.
    bool terminal_only_rewards = false;
    std::uint64_t seed = 0;

    /// Throws InvalidInput when a range is empty or out of bounds.
    void check() const;
};

/// Random episodic MOMDP built as a layered DAG: non-terminal states are
/// split into at most `horizon` layers and every action moves to the next
/// layer or to the single terminal state, so each state is only ever visited
/// at one step and every episode ends within the horizon. Deterministic
/// given the seed; the result always passes validate().
Momdp generate(const GeneratorConfig& config);

}  // namespace morl::envs
