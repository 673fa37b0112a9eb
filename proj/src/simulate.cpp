#include "morl/simulate.hpp"

#include <fmt/format.h>

#include "morl/policy.hpp"
#include "morl/reward_model.hpp"
#include "morl/rng.hpp"

namespace morl {

ObservedAccumulator::ObservedAccumulator(const Momdp& momdp, Regime regime, const RewardModel* model)
    : momdp_(&momdp), regime_(regime), model_(model), acc_(momdp.d, 0.0) {
    if (regime == Regime::Proxy && model == nullptr)
        throw InvalidInput("proxy regime requires a reward model");
}

void ObservedAccumulator::advance(StateId s, ActionIndex a, StateId next, const RewardVector& true_reward, int t) {
    switch (regime_) {
        case Regime::True: acc_ = accumulate(acc_, true_reward, momdp_->gamma, t); break;
        case Regime::Proxy: acc_ = accumulate(acc_, model_->predict(s, a, next), momdp_->gamma, t); break;
        case Regime::None: break;
    }
}

Trajectory simulate_episode(const Momdp& momdp, const Policy& policy, Regime regime, const RewardModel* model,
                            std::uint64_t seed, const SimulationOptions& options) {
    if (regime == Regime::None && options.strict_none)
        throw InvalidInput("rewards are unobservable (regime none) and strict mode is on");

    Rng rng(seed);
    ObservedAccumulator observed(momdp, regime, model);
    Trajectory traj;
    traj.seed = seed;
    traj.initial_state = rng.categorical(momdp.mu);
    traj.true_return.assign(momdp.d, 0.0);

    std::vector<double> probs;
    StateId s = traj.initial_state;
    for (int t = 0; !momdp.is_terminal(s); ++t) {
        if (t >= momdp.horizon)
            throw InvalidInput(fmt::format("episode exceeded horizon {} at state {}", momdp.horizon,
                                           momdp.states[s].name));
        const ActionIndex a = policy.act(momdp, s, t, observed.value());
        const auto& branches = momdp.states[s].actions[a].branches;
        probs.clear();
        for (const auto& b : branches) probs.push_back(b.prob);
        const Branch& b = branches[rng.categorical(probs)];
        probs.clear();
        for (const auto& o : b.outcomes) probs.push_back(o.prob);
        const RewardVector& r = b.outcomes[rng.categorical(probs)].vector;

        traj.steps.push_back(TrajectoryStep{s, t, observed.value(), a, b.to, r});
        traj.true_return = accumulate(traj.true_return, r, momdp.gamma, t);
        observed.advance(s, a, b.to, r, t);
        s = b.to;
    }
    return traj;
}

}  // namespace morl
