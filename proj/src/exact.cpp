#include "morl/exact.hpp"

#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "morl/reward_model.hpp"

namespace morl {

std::string to_string(Criterion c) { return c == Criterion::Esr ? "esr" : "ser"; }

Criterion parse_criterion(const std::string& text) {
    if (text == "esr" || text == "ESR") return Criterion::Esr;
    if (text == "ser" || text == "SER") return Criterion::Ser;
    throw InvalidInput(fmt::format("unknown criterion '{}' (expected esr or ser)", text));
}

namespace {

void require_model(Regime regime, const RewardModel* model) {
    if (regime == Regime::Proxy && model == nullptr) throw InvalidInput("proxy regime requires a reward model");
}

class OutcomeWalker {
public:
    OutcomeWalker(const Momdp& m, const Policy& policy, Regime regime, const RewardModel* model, std::size_t cap,
                  std::vector<OutcomeBranch>& out)
        : m_(m), policy_(policy), regime_(regime), model_(model), cap_(cap), out_(out) {}

    void walk(StateId s, int t, const RewardVector& true_acc, const RewardVector& obs_acc, double p) {
        if (m_.is_terminal(s)) {
            if (out_.size() >= cap_)
                throw CapExceeded(fmt::format("more than {} outcome branches: too large for exact enumeration", cap_));
            out_.push_back({p, true_acc});
            return;
        }
        if (t >= m_.horizon)
            throw InvalidInput(fmt::format("state {} still non-terminal at horizon {}", m_.states[s].name, m_.horizon));

        const ActionIndex a = policy_.act(m_, s, t, obs_acc);
        for (const Branch& b : m_.states[s].actions[a].branches) {
            if (b.prob <= 0.0) continue;
            RewardVector proxy_next;
            if (regime_ == Regime::Proxy) proxy_next = accumulate(obs_acc, model_->predict(s, a, b.to), m_.gamma, t);
            for (const RewardOutcome& o : b.outcomes) {
                if (o.prob <= 0.0) continue;
                RewardVector true_next = accumulate(true_acc, o.vector, m_.gamma, t);
                const RewardVector& obs_next = regime_ == Regime::True    ? true_next
                                               : regime_ == Regime::Proxy ? proxy_next
                                                                          : obs_acc;
                walk(b.to, t + 1, true_next, obs_next, p * b.prob * o.prob);
            }
        }
    }

private:
    const Momdp& m_;
    const Policy& policy_;
    Regime regime_;
    const RewardModel* model_;
    std::size_t cap_;
    std::vector<OutcomeBranch>& out_;
};

class BackwardSolver {
public:
    BackwardSolver(const Momdp& m, const UtilityFunction& u, std::size_t cap)
        : m_(m), u_(u), cap_(cap), policy_(ObservationKind::TrueAugmented) {}

    double value(StateId s, int t, const RewardVector& acc) {
        if (m_.is_terminal(s)) return u_(acc);
        if (t >= m_.horizon)
            throw InvalidInput(fmt::format("state {} still non-terminal at horizon {}", m_.states[s].name, m_.horizon));
        const ObservationKey key = policy_.key(s, t, acc);
        if (auto it = values_.find(key); it != values_.end()) return it->second;
        if (values_.size() >= cap_)
            throw CapExceeded(fmt::format("more than {} reachable augmented states: too large for backward induction",
                                          cap_));

        double best = -std::numeric_limits<double>::infinity();
        ActionIndex best_a = 0;
        const auto& actions = m_.states[s].actions;
        for (ActionIndex a = 0; a < actions.size(); ++a) {
            double q = 0.0;
            for (const Branch& b : actions[a].branches) {
                if (b.prob <= 0.0) continue;
                for (const RewardOutcome& o : b.outcomes) {
                    if (o.prob <= 0.0) continue;
                    q += b.prob * o.prob * value(b.to, t + 1, accumulate(acc, o.vector, m_.gamma, t));
                }
            }
            if (a == 0 || q > best + kTieTolerance) {
                best = q;
                best_a = a;
            }
        }
        values_.emplace(key, best);
        policy_.set(key, best_a);
        return best;
    }

    Policy take_policy() { return std::move(policy_); }
    std::size_t state_count() const { return values_.size(); }

private:
    const Momdp& m_;
    const UtilityFunction& u_;
    std::size_t cap_;
    Policy policy_;
    std::map<ObservationKey, double> values_;
};

/// Brute-force search over deterministic policies.
class PolicySearch {
public:
    PolicySearch(const Momdp& m, const UtilityFunction& u, ObservationKind kind, Criterion criterion,
                 const RewardModel* model, const ExactOptions& options)
        : m_(m),
          u_(u),
          kind_(kind),
          criterion_(criterion),
          regime_(native_regime(kind)),
          model_(model),
          options_(options),
          working_(kind),
          best_(kind) {}

    Solution run() {
        require_model(regime_, model_);
        if (kind_ == ObservationKind::Markov)
            search_markov();
        else
            search_layer(initial_frontier());
        best_.set_fallback(0);
        return Solution{std::move(best_), best_value_, candidates_};
    }

private:
    using Frontier = std::map<ObservationKey, RewardVector>;

    void check_product(const std::vector<std::size_t>& sizes) const {
        double product = 1.0;
        for (auto n : sizes) product *= static_cast<double>(n);
        if (product + static_cast<double>(candidates_) > static_cast<double>(options_.policy_cap))
            throw CapExceeded(fmt::format("more than {} candidate policies: too large for exact enumeration",
                                          options_.policy_cap));
    }

    void score_candidate() {
        if (++candidates_ > options_.policy_cap)
            throw CapExceeded(fmt::format("more than {} candidate policies: too large for exact enumeration",
                                          options_.policy_cap));
        ExactValue v = evaluate(criterion_, m_, working_, u_, regime_, model_, options_.branch_cap);
        if (!have_best_ || v.value > best_value_.value + kTieTolerance) {
            have_best_ = true;
            best_value_ = std::move(v);
            best_ = working_;
        }
    }

    /// Calls `body` once per joint assignment of actions to `keys`, the last
    /// key varying fastest.
    template <typename Body>
    void for_each_assignment(const std::vector<ObservationKey>& keys, const std::vector<std::size_t>& sizes,
                             Body&& body) {
        std::vector<ActionIndex> choice(keys.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < keys.size(); ++i) working_.set(keys[i], choice[i]);
            body();
            std::size_t i = keys.size();
            while (i > 0) {
                --i;
                if (++choice[i] < sizes[i]) break;
                choice[i] = 0;
                if (i == 0) {
                    for (const auto& k : keys) working_.erase(k);
                    return;
                }
            }
            if (keys.empty()) return;
        }
    }

    void search_markov() {
        std::set<StateId> reachable;
        std::vector<StateId> stack;
        for (StateId s = 0; s < m_.num_states(); ++s)
            if (m_.mu[s] > 0.0 && !m_.is_terminal(s) && reachable.insert(s).second) stack.push_back(s);
        while (!stack.empty()) {
            const StateId s = stack.back();
            stack.pop_back();
            for (const Action& act : m_.states[s].actions)
                for (const Branch& b : act.branches)
                    if (b.prob > 0.0 && !m_.is_terminal(b.to) && reachable.insert(b.to).second) stack.push_back(b.to);
        }
        std::vector<ObservationKey> keys;
        std::vector<std::size_t> sizes;
        for (StateId s : reachable) {
            keys.push_back(markov_key(s));
            sizes.push_back(m_.num_actions(s));
        }
        check_product(sizes);
        for_each_assignment(keys, sizes, [this] { score_candidate(); });
    }

    Frontier initial_frontier() const {
        Frontier f;
        for (StateId s = 0; s < m_.num_states(); ++s)
            if (m_.mu[s] > 0.0 && !m_.is_terminal(s)) {
                RewardVector zero(m_.d, 0.0);
                f.emplace(working_.key(s, 0, zero), zero);
            }
        return f;
    }

    Frontier successors(const Frontier& frontier) const {
        Frontier next;
        for (const auto& [key, acc] : frontier) {
            const StateId s = key.state;
            const int t = key.step;
            const ActionIndex a = working_.table().at(key);
            for (const Branch& b : m_.states[s].actions[a].branches) {
                if (b.prob <= 0.0 || m_.is_terminal(b.to)) continue;
                if (t + 1 >= m_.horizon)
                    throw InvalidInput(fmt::format("state {} still non-terminal at horizon {}",
                                                   m_.states[b.to].name, m_.horizon));
                if (regime_ == Regime::Proxy) {
                    RewardVector acc2 = accumulate(acc, model_->predict(s, a, b.to), m_.gamma, t);
                    next.emplace(working_.key(b.to, t + 1, acc2), std::move(acc2));
                } else {
                    for (const RewardOutcome& o : b.outcomes) {
                        if (o.prob <= 0.0) continue;
                        RewardVector acc2 = accumulate(acc, o.vector, m_.gamma, t);
                        next.emplace(working_.key(b.to, t + 1, acc2), std::move(acc2));
                    }
                }
            }
        }
        return next;
    }

    // Observation keys carry the step, so each layer's observations are
    // disjoint from every earlier layer's; choosing actions layer by layer
    // enumerates exactly the policies restricted to their own reachable set.
    void search_layer(const Frontier& frontier) {
        if (frontier.empty()) {
            score_candidate();
            return;
        }
        std::vector<ObservationKey> keys;
        std::vector<std::size_t> sizes;
        for (const auto& [key, acc] : frontier) {
            keys.push_back(key);
            sizes.push_back(m_.num_actions(key.state));
        }
        check_product(sizes);
        for_each_assignment(keys, sizes, [&] { search_layer(successors(frontier)); });
    }

    const Momdp& m_;
    const UtilityFunction& u_;
    ObservationKind kind_;
    Criterion criterion_;
    Regime regime_;
    const RewardModel* model_;
    ExactOptions options_;

    Policy working_;
    Policy best_;
    ExactValue best_value_;
    bool have_best_ = false;
    std::size_t candidates_ = 0;
};

}  // namespace

std::vector<OutcomeBranch> enumerate_outcomes(const Momdp& momdp, const Policy& policy, Regime regime,
                                              const RewardModel* model, std::size_t branch_cap) {
    require_model(regime, model);
    std::vector<OutcomeBranch> out;
    OutcomeWalker walker(momdp, policy, regime, model, branch_cap, out);
    const RewardVector zero(momdp.d, 0.0);
    for (StateId s = 0; s < momdp.num_states(); ++s)
        if (momdp.mu[s] > 0.0) walker.walk(s, 0, zero, zero, momdp.mu[s]);
    return out;
}

ExactValue esr_evaluate(const Momdp& momdp, const Policy& policy, const UtilityFunction& u, Regime regime,
                        const RewardModel* model, std::size_t branch_cap) {
    const auto branches = enumerate_outcomes(momdp, policy, regime, model, branch_cap);
    ExactValue v;
    v.expected_return.assign(momdp.d, 0.0);
    v.trajectory_count = branches.size();
    for (const auto& b : branches) {
        v.value += b.prob * u(b.ret);
        for (std::size_t i = 0; i < momdp.d; ++i) v.expected_return[i] += b.prob * b.ret[i];
    }
    return v;
}

ExactValue ser_evaluate(const Momdp& momdp, const Policy& policy, const UtilityFunction& u, Regime regime,
                        const RewardModel* model, std::size_t branch_cap) {
    const auto branches = enumerate_outcomes(momdp, policy, regime, model, branch_cap);
    ExactValue v;
    v.expected_return.assign(momdp.d, 0.0);
    v.trajectory_count = branches.size();
    for (const auto& b : branches)
        for (std::size_t i = 0; i < momdp.d; ++i) v.expected_return[i] += b.prob * b.ret[i];
    v.value = u(v.expected_return);
    return v;
}

ExactValue evaluate(Criterion criterion, const Momdp& momdp, const Policy& policy, const UtilityFunction& u,
                    Regime regime, const RewardModel* model, std::size_t branch_cap) {
    return criterion == Criterion::Esr ? esr_evaluate(momdp, policy, u, regime, model, branch_cap)
                                       : ser_evaluate(momdp, policy, u, regime, model, branch_cap);
}

Solution solve_esr_backward(const Momdp& momdp, const UtilityFunction& u, const ExactOptions& options) {
    BackwardSolver solver(momdp, u, options.state_cap);
    ExactValue v;
    v.expected_return.assign(momdp.d, 0.0);
    const RewardVector zero(momdp.d, 0.0);
    for (StateId s = 0; s < momdp.num_states(); ++s)
        if (momdp.mu[s] > 0.0) v.value += momdp.mu[s] * solver.value(s, 0, zero);

    const std::size_t states = solver.state_count();
    Policy policy = solver.take_policy();
    policy.set_fallback(0);

    // Expected return and branch count of the greedy policy itself.
    const auto branches = enumerate_outcomes(momdp, policy, Regime::True, nullptr, options.branch_cap);
    v.trajectory_count = branches.size();
    for (const auto& b : branches)
        for (std::size_t i = 0; i < momdp.d; ++i) v.expected_return[i] += b.prob * b.ret[i];
    return Solution{std::move(policy), std::move(v), states};
}

Solution solve_by_enumeration(const Momdp& momdp, const UtilityFunction& u, ObservationKind kind,
                              Criterion criterion, const RewardModel* model, const ExactOptions& options) {
    return PolicySearch(momdp, u, kind, criterion, model, options).run();
}

}  // namespace morl
