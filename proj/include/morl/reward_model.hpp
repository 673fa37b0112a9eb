#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include "morl/momdp.hpp"

namespace morl {

class Policy;

using TransitionKey = std::tuple<StateId, ActionIndex, StateId>;

/// Supervised estimate of the expected reward vector of each
/// (state, action, next-state) transition: a running mean of observed samples.
class RewardModel {
public:
    struct Entry {
        RewardVector mean;
        std::size_t count = 0;
    };

    /// In strict mode predicting an unseen transition throws; otherwise it
    /// returns the zero vector and logs one warning per transition.
    explicit RewardModel(std::size_t d, bool strict = false);

    std::size_t dimension() const { return d_; }
    bool strict() const { return strict_; }
    void set_strict(bool strict) { strict_ = strict; }

    void observe(StateId s, ActionIndex a, StateId next, const RewardVector& reward);

    /// Folds another model's statistics in, as if its samples had been
    /// observed here.
    void merge(const RewardModel& other);

    bool contains(StateId s, ActionIndex a, StateId next) const;
    RewardVector predict(StateId s, ActionIndex a, StateId next) const;

    const std::map<TransitionKey, Entry>& entries() const { return entries_; }
    void set_entry(const TransitionKey& key, Entry entry);

    std::size_t total_samples() const;

private:
    std::size_t d_;
    bool strict_;
    std::map<TransitionKey, Entry> entries_;

    struct WarnState {
        std::mutex mutex;
        std::set<TransitionKey> warned;
    };
    std::shared_ptr<WarnState> warn_ = std::make_shared<WarnState>();
};

/// Rolls out episodes under `behavior` (uniform-random actions when null) with
/// true rewards visible and records `samples` transitions. Deterministic
/// given the seed.
RewardModel fit_reward_model(const Momdp& momdp, const Policy* behavior, std::size_t samples,
                             std::uint64_t seed, bool strict = false);

}  // namespace morl
