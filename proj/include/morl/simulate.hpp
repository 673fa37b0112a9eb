#pragma once

#include <cstdint>

#include "morl/momdp.hpp"

namespace morl {

class Policy;
class RewardModel;

struct TrajectoryStep {
    StateId state = 0;
    int step = 0;
    RewardVector observed_acc;  // accumulated reward the policy was shown
    ActionIndex action = 0;
    StateId next = 0;
    RewardVector reward;  // true sampled reward

    friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct Trajectory {
    StateId initial_state = 0;
    std::uint64_t seed = 0;
    std::vector<TrajectoryStep> steps;
    RewardVector true_return;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct SimulationOptions {
    /// Reject the `none` regime instead of freezing the accumulator at zero.
    bool strict_none = false;
};

/// Tracks the accumulated reward a policy observes under a regime.
class ObservedAccumulator {
public:
    ObservedAccumulator(const Momdp& momdp, Regime regime, const RewardModel* model);

    const RewardVector& value() const { return acc_; }
    void advance(StateId s, ActionIndex a, StateId next, const RewardVector& true_reward, int t);

private:
    const Momdp* momdp_;
    Regime regime_;
    const RewardModel* model_;
    RewardVector acc_;
};

/// Samples one episode. True rewards are recorded whatever the regime; the
/// regime only decides what the policy sees.
Trajectory simulate_episode(const Momdp& momdp, const Policy& policy, Regime regime, const RewardModel* model,
                            std::uint64_t seed, const SimulationOptions& options = {});

}  // namespace morl
