#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "morl/exact.hpp"
#include "morl/simulate.hpp"

namespace morl {

struct DeployOptions {
    std::size_t episodes = 10'000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool strict_none = false;
    std::size_t branch_cap = kDefaultBranchCap;
    double histogram_grid = 1e-9;
};

/// Outcome of running a frozen policy under one observation regime.
struct DeploymentReport {
    std::string label;  // policy name, e.g. "true-trained"
    Regime regime = Regime::True;
    std::size_t episodes = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double std_error = 0.0;
    std::optional<double> exact;
    /// Episode utility (snapped to histogram_grid) -> episode count.
    std::map<double, std::size_t> histogram;
    std::uint64_t policy_hash = 0;
    std::uint64_t momdp_hash = 0;
    std::string utility;
    /// Monte-Carlo mean more than three standard errors from the exact value.
    bool flagged = false;
};

/// Runs `options.episodes` seeded rollouts of a frozen policy. Episode
/// utility is always computed from the true rewards the environment paid,
/// whatever the agent could observe. The exact value is attached when
/// enumeration fits within the branch cap.
DeploymentReport deploy(const Momdp& momdp, const Policy& policy, const UtilityFunction& u, Regime regime,
                        const RewardModel* model, const DeployOptions& options, std::string label = {});

struct GapRow {
    std::string label;
    Regime regime = Regime::True;
    std::optional<double> exact;
    double monte_carlo = 0.0;
    double gap = 0.0;  // best value minus this row's value (exact when known)
};

/// Comparison table over reports for one model and utility, best first.
/// Throws InvalidInput for fewer than two reports or mismatched identities.
std::vector<GapRow> gap_report(const Momdp& momdp, const UtilityFunction& u,
                               const std::vector<DeploymentReport>& reports);

}  // namespace morl
