#include "morl/qlearning.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "morl/exact.hpp"
#include "morl/reward_model.hpp"
#include "morl/rng.hpp"

namespace morl {

std::string to_string(TrainingMode mode) {
    switch (mode) {
        case TrainingMode::TrueRewards: return "true-rewards";
        case TrainingMode::FullProxy: return "full-proxy";
        case TrainingMode::AsymmetricProxy: return "asymmetric-proxy";
    }
    return "?";
}

TrainingMode parse_training_mode(const std::string& text) {
    if (text == "true-rewards") return TrainingMode::TrueRewards;
    if (text == "full-proxy") return TrainingMode::FullProxy;
    if (text == "asymmetric-proxy") return TrainingMode::AsymmetricProxy;
    throw InvalidInput(
        fmt::format("unknown training mode '{}' (expected true-rewards, full-proxy or asymmetric-proxy)", text));
}

ObservationKind observation_kind(TrainingMode mode) {
    return mode == TrainingMode::TrueRewards ? ObservationKind::TrueAugmented : ObservationKind::ProxyAugmented;
}

void TrainConfig::check() const {
    if (episodes == 0) throw InvalidInput("episodes must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidInput(fmt::format("alpha {} outside (0, 1]", alpha));
    for (double e : {epsilon_start, epsilon_end})
        if (!(e >= 0.0 && e <= 1.0)) throw InvalidInput(fmt::format("epsilon {} outside [0, 1]", e));
    if (curve_every == 0) throw InvalidInput("curve interval must be positive");
    if (!(grid > 0.0)) throw InvalidInput("quantization grid must be positive");
}

double TrainConfig::epsilon_at(std::size_t episode) const {
    const std::size_t span = epsilon_decay_episodes == 0 ? episodes : epsilon_decay_episodes;
    if (span <= 1) return episode == 0 ? epsilon_start : epsilon_end;
    if (episode >= span - 1) return epsilon_end;
    const double frac = static_cast<double>(episode) / static_cast<double>(span - 1);
    return epsilon_start + (epsilon_end - epsilon_start) * frac;
}

QLearner::QLearner(const Momdp& momdp, const UtilityFunction& u, TrainingMode mode, const RewardModel* model,
                   double alpha, std::uint64_t seed, double grid)
    : momdp_(momdp), u_(u), mode_(mode), model_(model), alpha_(alpha), seed_(seed) {
    if (mode != TrainingMode::TrueRewards && model == nullptr)
        throw InvalidInput(fmt::format("training mode {} requires a reward model", to_string(mode)));
    table_.grid = grid;
}

QEntry& QLearner::entry(const ObservationKey& key, StateId s) {
    auto [it, inserted] = table_.entries.try_emplace(key);
    if (inserted) {
        const std::size_t n = momdp_.num_actions(s);
        it->second.q.assign(n, 0.0);
        it->second.visits.assign(n, 0);
    }
    return it->second;
}

namespace {

ActionIndex argmax(const std::vector<double>& q) {
    ActionIndex best = 0;
    for (ActionIndex a = 1; a < q.size(); ++a)
        if (q[a] > q[best]) best = a;
    return best;
}

}  // namespace

void QLearner::run_episode(double epsilon) {
    Rng rng(derive_seed(seed_, episode_++));
    const double gamma = momdp_.gamma;
    StateId s = rng.categorical(momdp_.mu);
    RewardVector true_acc(momdp_.d, 0.0);
    RewardVector obs_acc(momdp_.d, 0.0);
    std::vector<double> probs;

    for (int t = 0; !momdp_.is_terminal(s); ++t) {
        if (t >= momdp_.horizon) throw InvalidInput("episode exceeded horizon during training");
        const ObservationKey key{s, t, quantize(obs_acc, table_.grid)};
        QEntry& current = entry(key, s);
        const ActionIndex a = rng.uniform() < epsilon ? rng.index(current.q.size()) : argmax(current.q);

        const auto& branches = momdp_.states[s].actions[a].branches;
        probs.clear();
        for (const auto& b : branches) probs.push_back(b.prob);
        const Branch& b = branches[rng.categorical(probs)];
        probs.clear();
        for (const auto& o : b.outcomes) probs.push_back(o.prob);
        const RewardVector& r = b.outcomes[rng.categorical(probs)].vector;

        true_acc = accumulate(true_acc, r, gamma, t);
        obs_acc = mode_ == TrainingMode::TrueRewards ? true_acc
                                                     : accumulate(obs_acc, model_->predict(s, a, b.to), gamma, t);

        double target;
        if (momdp_.is_terminal(b.to)) {
            target = u_(mode_ == TrainingMode::FullProxy ? obs_acc : true_acc);
        } else {
            const QEntry& next = entry(ObservationKey{b.to, t + 1, quantize(obs_acc, table_.grid)}, b.to);
            target = *std::max_element(next.q.begin(), next.q.end());
        }
        // std::map references survive the insertion above.
        current.q[a] += alpha_ * (target - current.q[a]);
        ++current.visits[a];
        s = b.to;
    }
}

Policy QLearner::greedy_policy() const {
    Policy p(observation_kind(mode_), table_.grid);
    for (const auto& [key, e] : table_.entries) p.set(key, argmax(e.q));
    p.set_fallback(0);
    return p;
}

TrainResult train_q(const Momdp& momdp, const UtilityFunction& u, const TrainConfig& config,
                    const RewardModel* model) {
    config.check();
    QLearner learner(momdp, u, config.mode, model, config.alpha, config.seed, config.grid);
    const Regime regime = native_regime(observation_kind(config.mode));

    TrainResult result{{}, Policy(observation_kind(config.mode), config.grid), {}};
    for (std::size_t ep = 0; ep < config.episodes; ++ep) {
        const double eps = config.epsilon_at(ep);
        learner.run_episode(eps);
        const bool last = ep + 1 == config.episodes;
        if ((ep + 1) % config.curve_every == 0 || last) {
            const double v = esr_evaluate(momdp, learner.greedy_policy(), u, regime, model).value;
            result.curve.push_back(CurvePoint{ep + 1, v, eps});
        }
    }
    result.table = learner.table();
    result.policy = learner.greedy_policy();
    return result;
}

}  // namespace morl
