#pragma once

#include <map>
#include <optional>

#include "morl/momdp.hpp"

namespace morl {

/// Deterministic policy keyed by observation.
///
/// Markov policies key on the state alone. Augmented policies key on
/// (state, step, quantized accumulated reward); which accumulated reward is
/// fed in at run time is decided by the observation regime, not the policy.
class Policy {
public:
    explicit Policy(ObservationKind kind, double grid = kDefaultGrid) : kind_(kind), grid_(grid) {}

    ObservationKind kind() const { return kind_; }
    double grid() const { return grid_; }

    const std::map<ObservationKey, ActionIndex>& table() const { return table_; }
    std::optional<ActionIndex> fallback() const { return fallback_; }
    void set_fallback(std::optional<ActionIndex> a) { fallback_ = a; }

    ObservationKey key(StateId s, int step, const RewardVector& acc) const;

    void set(const ObservationKey& key, ActionIndex a) { table_[key] = a; }
    void erase(const ObservationKey& key) { table_.erase(key); }

    std::optional<ActionIndex> lookup(StateId s, int step, const RewardVector& acc) const;

    /// Table action, else the fallback if it is legal in `s`; otherwise
    /// throws MissingObservation.
    ActionIndex act(const Momdp& momdp, StateId s, int step, const RewardVector& acc) const;

    /// Checks every mapped action is legal in its state.
    void check_legal(const Momdp& momdp) const;

    friend bool operator==(const Policy&, const Policy&) = default;

private:
    ObservationKind kind_;
    double grid_;
    std::map<ObservationKey, ActionIndex> table_;
    std::optional<ActionIndex> fallback_;
};

/// Regime under which a policy of the given kind observes its own training
/// signal: proxy for proxy-augmented policies, true otherwise.
inline Regime native_regime(ObservationKind kind) {
    return kind == ObservationKind::ProxyAugmented ? Regime::Proxy : Regime::True;
}

}  // namespace morl
