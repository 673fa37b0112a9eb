#include "morl/reward_model.hpp"

#include <iostream>

#include <fmt/format.h>

#include "morl/policy.hpp"
#include "morl/rng.hpp"

namespace morl {

RewardModel::RewardModel(std::size_t d, bool strict) : d_(d), strict_(strict) {}

void RewardModel::observe(StateId s, ActionIndex a, StateId next, const RewardVector& reward) {
    if (reward.size() != d_)
        throw InvalidInput(fmt::format("reward dimension {} ≠ {}", reward.size(), d_));
    auto& e = entries_[{s, a, next}];
    if (e.mean.empty()) e.mean.assign(d_, 0.0);
    ++e.count;
    const double n = static_cast<double>(e.count);
    for (std::size_t i = 0; i < d_; ++i) e.mean[i] += (reward[i] - e.mean[i]) / n;
}

void RewardModel::merge(const RewardModel& other) {
    if (other.d_ != d_) throw InvalidInput("cannot merge reward models of different dimension");
    for (const auto& [key, theirs] : other.entries_) {
        if (theirs.count == 0) continue;
        auto& e = entries_[key];
        if (e.mean.empty()) e.mean.assign(d_, 0.0);
        const double total = static_cast<double>(e.count + theirs.count);
        const double w = static_cast<double>(theirs.count) / total;
        for (std::size_t i = 0; i < d_; ++i) e.mean[i] += (theirs.mean[i] - e.mean[i]) * w;
        e.count += theirs.count;
    }
}

bool RewardModel::contains(StateId s, ActionIndex a, StateId next) const {
    return entries_.contains({s, a, next});
}

RewardVector RewardModel::predict(StateId s, ActionIndex a, StateId next) const {
    auto it = entries_.find({s, a, next});
    if (it != entries_.end()) return it->second.mean;
    if (strict_)
        throw InvalidInput(fmt::format("reward model has no data for transition ({}, {}, {})", s, a, next));
    {
        std::lock_guard lock(warn_->mutex);
        if (warn_->warned.insert({s, a, next}).second)
            std::clog << fmt::format("warning: reward model has no data for transition ({}, {}, {}); "
                                     "predicting zero\n",
                                     s, a, next);
    }
    return RewardVector(d_, 0.0);
}

void RewardModel::set_entry(const TransitionKey& key, Entry entry) {
    if (entry.mean.size() != d_) throw InvalidInput("reward model entry has wrong dimension");
    entries_[key] = std::move(entry);
}

std::size_t RewardModel::total_samples() const {
    std::size_t n = 0;
    for (const auto& [k, e] : entries_) n += e.count;
    return n;
}

RewardModel fit_reward_model(const Momdp& momdp, const Policy* behavior, std::size_t samples,
                             std::uint64_t seed, bool strict) {
    if (samples == 0) throw InvalidInput("reward model needs at least one sample");
    RewardModel model(momdp.d, strict);
    std::size_t collected = 0;
    for (std::uint64_t episode = 0; collected < samples; ++episode) {
        Rng rng(derive_seed(seed, episode));
        StateId s = rng.categorical(momdp.mu);
        RewardVector acc(momdp.d, 0.0);
        for (int t = 0; !momdp.is_terminal(s) && collected < samples; ++t) {
            const ActionIndex a = behavior ? behavior->act(momdp, s, t, acc) : rng.index(momdp.num_actions(s));
            const auto& branches = momdp.states[s].actions[a].branches;
            std::vector<double> probs;
            for (const auto& b : branches) probs.push_back(b.prob);
            const Branch& b = branches[rng.categorical(probs)];
            probs.clear();
            for (const auto& o : b.outcomes) probs.push_back(o.prob);
            const RewardVector& r = b.outcomes[rng.categorical(probs)].vector;
            model.observe(s, a, b.to, r);
            ++collected;
            acc = accumulate(acc, r, momdp.gamma, t);
            s = b.to;
        }
    }
    return model;
}

}  // namespace morl
