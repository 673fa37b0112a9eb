#include "morl/deploy.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

#include "morl/io.hpp"
#include "morl/rng.hpp"

namespace morl {

DeploymentReport deploy(const Momdp& momdp, const Policy& policy, const UtilityFunction& u, Regime regime,
                        const RewardModel* model, const DeployOptions& options, std::string label) {
    if (options.episodes == 0) throw InvalidInput("deployment needs at least one episode");
    if (regime == Regime::Proxy && model == nullptr) throw InvalidInput("proxy regime requires a reward model");
    if (regime == Regime::None && options.strict_none)
        throw InvalidInput("rewards are unobservable (regime none) and strict mode is on");

    DeploymentReport report;
    report.label = std::move(label);
    report.regime = regime;
    report.episodes = options.episodes;
    report.seed = options.seed;
    report.policy_hash = io::fingerprint(policy, momdp);
    report.momdp_hash = io::fingerprint(momdp);
    report.utility = u.spec();

    try {
        report.exact = esr_evaluate(momdp, policy, u, regime, model, options.branch_cap).value;
    } catch (const CapExceeded&) {
        report.exact.reset();
    }

    // Per-episode utilities land in fixed slots, so the reduction below is
    // independent of how episodes were split across threads.
    std::vector<double> utilities(options.episodes);
    const SimulationOptions sim{options.strict_none};
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Trajectory traj =
                simulate_episode(momdp, policy, regime, model, derive_seed(options.seed, i), sim);
            utilities[i] = u(traj.true_return);
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(options.episodes)));
    if (threads == 1) {
        run_range(0, options.episodes);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        const std::size_t chunk = (options.episodes + threads - 1) / threads;
        for (unsigned k = 0; k < threads; ++k) {
            const std::size_t begin = k * chunk;
            const std::size_t end = std::min(options.episodes, begin + chunk);
            pool.emplace_back([&, k, begin, end] {
                try {
                    run_range(begin, end);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    double sum = 0.0;
    for (double x : utilities) sum += x;
    const double n = static_cast<double>(options.episodes);
    report.mean = sum / n;
    if (options.episodes > 1) {
        double ss = 0.0;
        for (double x : utilities) ss += (x - report.mean) * (x - report.mean);
        report.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    for (double x : utilities)
        ++report.histogram[std::round(x / options.histogram_grid) * options.histogram_grid];

    if (report.exact) {
        const double diff = std::abs(report.mean - *report.exact);
        report.flagged = report.std_error > 0.0 ? diff > 3.0 * report.std_error : diff > 1e-9;
    }
    return report;
}

std::vector<GapRow> gap_report(const Momdp& momdp, const UtilityFunction& u,
                               const std::vector<DeploymentReport>& reports) {
    if (reports.size() < 2) throw InvalidInput("gap report needs at least two deployment reports");
    const std::uint64_t momdp_hash = io::fingerprint(momdp);
    const std::string utility = u.spec();
    for (const auto& r : reports) {
        if (r.momdp_hash != momdp_hash)
            throw InvalidInput(fmt::format("report '{}' was produced on a different MOMDP ({} vs {})", r.label,
                                           io::hex(r.momdp_hash), io::hex(momdp_hash)));
        if (r.utility != utility)
            throw InvalidInput(
                fmt::format("report '{}' used utility '{}', expected '{}'", r.label, r.utility, utility));
    }

    std::vector<GapRow> rows;
    for (const auto& r : reports) rows.push_back(GapRow{r.label, r.regime, r.exact, r.mean, 0.0});
    auto score = [](const GapRow& row) { return row.exact.value_or(row.monte_carlo); };
    std::stable_sort(rows.begin(), rows.end(), [&](const GapRow& a, const GapRow& b) { return score(a) > score(b); });
    const double best = score(rows.front());
    for (auto& row : rows) row.gap = best - score(row);
    return rows;
}

}  // namespace morl
