#pragma once

#include "morl/momdp.hpp"
#include "morl/policy.hpp"
#include "morl/utility.hpp"

namespace morl {

class RewardModel;

enum class Criterion { Esr, Ser };

std::string to_string(Criterion c);
Criterion parse_criterion(const std::string& text);

inline constexpr std::size_t kDefaultBranchCap = 10'000'000;
inline constexpr std::size_t kDefaultPolicyCap = 1'000'000;

/// Two action values closer than this are a tie; ties go to the lower index.
inline constexpr double kTieTolerance = 1e-9;

/// One leaf of the outcome tree: its probability and the true discounted
/// return collected along it.
struct OutcomeBranch {
    double prob = 0.0;
    RewardVector ret;
};

struct ExactValue {
    double value = 0.0;
    RewardVector expected_return;
    std::size_t trajectory_count = 0;
};

struct ExactOptions {
    std::size_t branch_cap = kDefaultBranchCap;
    std::size_t policy_cap = kDefaultPolicyCap;
    std::size_t state_cap = kDefaultBranchCap;
};

/// Every (initial state, transition, reward outcome) path the policy can take
/// under `regime`. The observed accumulator evolves per the regime while the
/// returned returns always use the true sampled rewards.
std::vector<OutcomeBranch> enumerate_outcomes(const Momdp& momdp, const Policy& policy, Regime regime,
                                              const RewardModel* model,
                                              std::size_t branch_cap = kDefaultBranchCap);

/// Expected utility of the return: utility applied inside the expectation.
ExactValue esr_evaluate(const Momdp& momdp, const Policy& policy, const UtilityFunction& u, Regime regime,
                        const RewardModel* model = nullptr, std::size_t branch_cap = kDefaultBranchCap);

/// Utility of the expected return: utility applied outside the expectation.
ExactValue ser_evaluate(const Momdp& momdp, const Policy& policy, const UtilityFunction& u, Regime regime,
                        const RewardModel* model = nullptr, std::size_t branch_cap = kDefaultBranchCap);

ExactValue evaluate(Criterion criterion, const Momdp& momdp, const Policy& policy, const UtilityFunction& u,
                    Regime regime, const RewardModel* model = nullptr,
                    std::size_t branch_cap = kDefaultBranchCap);

struct Solution {
    Policy policy;
    ExactValue value;
    std::size_t candidates = 0;  // policies or augmented states examined
};

/// ESR-optimal deterministic policy over true-augmented observations, by
/// backward induction over the reachable (state, step, accumulated reward)
/// set. Ties go to the lowest action index.
Solution solve_esr_backward(const Momdp& momdp, const UtilityFunction& u, const ExactOptions& options = {});

/// Brute force: scores every deterministic policy of the given observation
/// kind and returns the best, ties going to the lexicographically smallest
/// table. Only observations reachable under the candidate itself are
/// assigned, so policies that differ only on unreachable observations are
/// counted once.
Solution solve_by_enumeration(const Momdp& momdp, const UtilityFunction& u, ObservationKind kind,
                              Criterion criterion, const RewardModel* model = nullptr,
                              const ExactOptions& options = {});

}  // namespace morl
