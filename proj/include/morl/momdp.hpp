#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "morl/types.hpp"

namespace morl {

struct RewardOutcome {
    RewardVector vector;
    double prob = 0.0;
};

/// One possible successor of a (state, action) pair together with the reward
/// distribution paid on that transition.
struct Branch {
    StateId to = 0;
    double prob = 0.0;
    std::vector<RewardOutcome> outcomes;
};

struct Action {
    std::string name;
    std::vector<Branch> branches;
};

struct State {
    std::string name;
    bool terminal = false;
    std::vector<Action> actions;
};

/// Finite, episodic multi-objective MDP.
///
/// Plain data: nothing is checked on construction, so a model can hold
/// violations that validate() reports. Every consumer outside validate()
/// assumes a valid model.
struct Momdp {
    std::size_t d = 0;
    double gamma = 1.0;
    int horizon = 1;
    std::vector<State> states;
    std::vector<double> mu;  // indexed by StateId

    std::size_t num_states() const { return states.size(); }
    std::size_t num_actions(StateId s) const { return states.at(s).actions.size(); }
    bool is_terminal(StateId s) const { return states.at(s).terminal; }

    std::optional<StateId> find_state(const std::string& name) const;
    std::optional<ActionIndex> find_action(StateId s, const std::string& name) const;

    /// Branch for (s, a, s'), or nullptr if s' is not a successor.
    const Branch* find_branch(StateId s, ActionIndex a, StateId next) const;

    /// Probability-weighted mean of the reward distribution on (s, a, s').
    RewardVector expected_reward(StateId s, ActionIndex a, StateId next) const;
};

struct Violation {
    std::string where;
    std::string message;
};

/// Lists every broken model invariant; an empty list means the model is valid.
std::vector<Violation> validate(const Momdp& momdp);

/// Throws InvalidInput summarising the violations, if any.
void require_valid(const Momdp& momdp);

/// acc + gamma^t * r, componentwise.
RewardVector accumulate(const RewardVector& acc, const RewardVector& r, double gamma, int t);

/// Discounted return of a sequence of per-step rewards.
RewardVector discounted_sum(const std::vector<RewardVector>& rewards, double gamma, std::size_t d);

/// Environment state paired with the reward accumulated so far.
struct AugmentedState {
    StateId state = 0;
    RewardVector acc;
    int step = 0;

    friend bool operator==(const AugmentedState&, const AugmentedState&) = default;
};

AugmentedState augment(const Momdp& momdp, StateId state, RewardVector acc, int step);

inline constexpr double kDefaultGrid = 1e-9;

/// Hashable, totally ordered form of an observation. Accumulated-reward
/// components are snapped to an integer grid.
struct ObservationKey {
    StateId state = 0;
    int step = 0;
    std::vector<std::int64_t> acc;

    friend auto operator<=>(const ObservationKey&, const ObservationKey&) = default;
    friend bool operator==(const ObservationKey&, const ObservationKey&) = default;
};

std::vector<std::int64_t> quantize(const RewardVector& acc, double grid);
RewardVector dequantize(const std::vector<std::int64_t>& acc, double grid);

ObservationKey make_key(const AugmentedState& obs, double grid);
ObservationKey markov_key(StateId state);

}  // namespace morl
