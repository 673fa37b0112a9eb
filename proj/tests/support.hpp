#pragma once

#include <cmath>
#include <map>
#include <string>

#include "morl/momdp.hpp"
#include "morl/policy.hpp"

namespace morl::testing {

/// Markov policy from state name -> action name.
inline Policy markov_policy(const Momdp& m, const std::map<std::string, std::string>& choice) {
    Policy p(ObservationKind::Markov);
    for (const auto& [state, action] : choice) {
        const StateId s = *m.find_state(state);
        p.set(markov_key(s), *m.find_action(s, action));
    }
    return p;
}

inline bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

inline bool near(const RewardVector& a, const RewardVector& b, double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!near(a[i], b[i], tol)) return false;
    return true;
}

}  // namespace morl::testing

#include "morl/reward_model.hpp"

namespace morl::testing {

/// Reward model holding the true expected reward of every transition.
inline RewardModel exact_model(const Momdp& m) {
    RewardModel model(m.d, true);
    for (StateId s = 0; s < m.num_states(); ++s)
        for (ActionIndex a = 0; a < m.num_actions(s); ++a)
            for (const auto& b : m.states[s].actions[a].branches)
                model.set_entry({s, a, b.to}, RewardModel::Entry{m.expected_reward(s, a, b.to), 1});
    return model;
}

}  // namespace morl::testing
