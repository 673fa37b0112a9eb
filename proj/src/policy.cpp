#include "morl/policy.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace morl {

ObservationKey Policy::key(StateId s, int step, const RewardVector& acc) const {
    if (kind_ == ObservationKind::Markov) return markov_key(s);
    return ObservationKey{s, step, quantize(acc, grid_)};
}

std::optional<ActionIndex> Policy::lookup(StateId s, int step, const RewardVector& acc) const {
    auto it = table_.find(key(s, step, acc));
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

ActionIndex Policy::act(const Momdp& momdp, StateId s, int step, const RewardVector& acc) const {
    if (auto a = lookup(s, step, acc)) return *a;
    if (fallback_ && *fallback_ < momdp.num_actions(s)) return *fallback_;
    throw MissingObservation(fmt::format("policy has no action for observation ({}, step {}, acc ({}))",
                                         momdp.states.at(s).name, step, fmt::join(acc, ",")));
}

void Policy::check_legal(const Momdp& momdp) const {
    for (const auto& [k, a] : table_) {
        if (k.state >= momdp.num_states())
            throw InvalidInput(fmt::format("policy refers to unknown state id {}", k.state));
        if (a >= momdp.num_actions(k.state))
            throw InvalidInput(fmt::format("policy action {} is not legal in state {}", a,
                                           momdp.states[k.state].name));
    }
}

}  // namespace morl
