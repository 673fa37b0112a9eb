// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <fmt/core.h>

#include "morl/cli.hpp"
#include "morl/deploy.hpp"
#include "morl/envs.hpp"
#include "morl/exact.hpp"
#include "morl/io.hpp"
#include "morl/qlearning.hpp"
#include "morl/reward_model.hpp"

using namespace morl;

namespace {

const UtilityFunction kMin = UtilityFunction::min();
constexpr double kExactTol = 1e-9;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << fmt::format("{} criterion {}: {} | {} [{:.2f}s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail,
                             secs)
              << std::flush;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

RewardModel fig2_model() { return fit_reward_model(envs::fig2(), nullptr, 10'000, 1); }

TrainConfig reference_train(TrainingMode mode) {
    TrainConfig cfg;
    cfg.episodes = 50'000;
    cfg.alpha = 0.1;
    cfg.epsilon_start = 1.0;
    cfg.epsilon_end = 0.01;
    cfg.seed = 1;
    cfg.mode = mode;
    cfg.curve_every = 1000;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Default ranges, or every range pinned at its upper bound (3 non-terminal
/// states, 2-3 actions, 2 outcomes).
envs::GeneratorConfig oracle_config(std::uint64_t seed, bool full) {
    envs::GeneratorConfig cfg;
    cfg.seed = seed;
    if (full) {
        cfg.min_states = cfg.max_states;
        cfg.min_actions = 2;
        cfg.min_outcomes = cfg.max_outcomes;
    }
    return cfg;
}

struct Deployment {
    std::string name;
    const Momdp* momdp;
    Policy policy;
    Regime regime;
    double expected;
};

}  // namespace

int main() {
    const Momdp fig1 = envs::fig1();
    const Momdp fig2 = envs::fig2();
    const RewardModel model = fig2_model();

    report(1, "fig1 optimal ESR = 4", [&] {
        const double v = solve_esr_backward(fig1, kMin).value.value;
        return Outcome{close(v, 4.0, kExactTol), fmt::format("value {}", v)};
    });

    report(2, "fig1 best Markov ESR = 2", [&] {
        const double v = solve_by_enumeration(fig1, kMin, ObservationKind::Markov, Criterion::Esr).value.value;
        return Outcome{close(v, 2.0, kExactTol), fmt::format("value {}", v)};
    });

    report(3, "fig2 reward model predicts (2,2) within 0.05", [&] {
        const StateId s0 = *fig2.find_state("s0");
        const auto p = model.predict(s0, *fig2.find_action(s0, "a1"), *fig2.find_state("s1"));
        const double err = std::max(std::abs(p[0] - 2.0), std::abs(p[1] - 2.0));
        return Outcome{err <= 0.05, fmt::format("predict ({}, {}), L-inf error {:.4f}", p[0], p[1], err)};
    });

    const Policy true_trained = solve_esr_backward(fig2, kMin).policy;
    const Policy proxy_trained =
        solve_by_enumeration(fig2, kMin, ObservationKind::ProxyAugmented, Criterion::Esr, &model).policy;
    std::vector<Deployment> trio = {
        {"true-trained/true", &fig2, true_trained, Regime::True, 4.0},
        {"true-trained/proxy", &fig2, true_trained, Regime::Proxy, 2.0},
        {"proxy-trained/proxy", &fig2, proxy_trained, Regime::Proxy, 3.0},
    };

    report(4, "fig2 deployment trio 4 / 2 / 3", [&] {
        bool ok = true;
        std::string detail;
        for (const auto& d : trio) {
            const double v = esr_evaluate(*d.momdp, d.policy, kMin, d.regime, &model).value;
            ok = ok && close(v, d.expected, kExactTol);
            detail += fmt::format("{} = {}; ", d.name, v);
        }
        return Outcome{ok, detail};
    });

    report(5, "Q-learning converges (fig1 -> 4, fig2 full-proxy -> 3), < 30 s each", [&] {
        auto timed = [&](const Momdp& m, TrainingMode mode, const RewardModel* rm) {
            const auto start = std::chrono::steady_clock::now();
            const auto r = train_q(m, kMin, reference_train(mode), rm);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return std::pair{esr_evaluate(m, r.policy, kMin, native_regime(r.policy.kind()), rm).value, secs};
        };
        const auto [v1, t1] = timed(fig1, TrainingMode::TrueRewards, nullptr);
        const auto [v2, t2] = timed(fig2, TrainingMode::FullProxy, &model);
        const bool ok = close(v1, 4.0, 0.05) && close(v2, 3.0, 0.05) && t1 < 30.0 && t2 < 30.0;
        return Outcome{ok, fmt::format("fig1 {} in {:.2f}s; fig2 {} in {:.2f}s", v1, t1, v2, t2)};
    });

    report(6, "backward induction = enumeration on 100 generated MOMDPs per batch", [&] {
        int bad = 0, gaps = 0;
        for (bool full : {false, true}) {
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const Momdp m = envs::generate(oracle_config(seed, full));
                const double a = solve_esr_backward(m, kMin).value.value;
                const double b =
                    solve_by_enumeration(m, kMin, ObservationKind::TrueAugmented, Criterion::Esr).value.value;
                if (!close(a, b, kExactTol)) ++bad;
                if (a > solve_by_enumeration(m, kMin, ObservationKind::Markov, Criterion::Esr).value.value + kExactTol)
                    ++gaps;
            }
        }
        return Outcome{bad == 0, fmt::format("{} of 200 mismatched; {} instances where history helps", bad, gaps)};
    });

    report(7, "augmented >= Markov, special-case equality, linear collapse", [&] {
        const auto lin = UtilityFunction::linear({0.5, 0.5});
        int dominance = 0, deterministic = 0, terminal_only = 0, collapse = 0;
        auto markov = [&](const Momdp& m, const UtilityFunction& u) {
            return solve_by_enumeration(m, u, ObservationKind::Markov, Criterion::Esr).value.value;
        };
        for (std::uint64_t i = 0; i < 200; ++i) {
            envs::GeneratorConfig cfg = oracle_config(i % 100, i >= 100);
            const Momdp m = envs::generate(cfg);
            if (solve_esr_backward(m, kMin).value.value < markov(m, kMin) - kExactTol) ++dominance;
            if (!close(solve_esr_backward(m, lin).value.value, markov(m, lin), kExactTol)) ++collapse;

            cfg.deterministic = true;
            const Momdp md = envs::generate(cfg);
            if (!close(solve_esr_backward(md, kMin).value.value, markov(md, kMin), kExactTol)) ++deterministic;

            cfg.deterministic = false;
            cfg.terminal_only_rewards = true;
            const Momdp mt = envs::generate(cfg);
            if (!close(solve_esr_backward(mt, kMin).value.value, markov(mt, kMin), kExactTol)) ++terminal_only;
        }
        const bool ok = dominance + deterministic + terminal_only + collapse == 0;
        return Outcome{ok, fmt::format("failures: dominance {}, deterministic {}, terminal-only {}, linear {}",
                                       dominance, deterministic, terminal_only, collapse)};
    });

    report(8, "identical seeds reproduce trajectories, Q-tables and reports", [&] {
        bool traj = true;
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            traj = traj && simulate_episode(fig2, true_trained, Regime::Proxy, &model, seed) ==
                               simulate_episode(fig2, true_trained, Regime::Proxy, &model, seed);

        TrainConfig cfg = reference_train(TrainingMode::AsymmetricProxy);
        cfg.episodes = 10'000;
        const auto q1 = train_q(fig2, kMin, cfg, &model);
        const auto q2 = train_q(fig2, kMin, cfg, &model);
        const bool tables = q1.table == q2.table && q1.policy == q2.policy &&
                            fit_reward_model(fig2, nullptr, 10'000, 1).entries().size() == model.entries().size();

        const auto dir = std::filesystem::temp_directory_path() / "morl_acceptance_determinism";
        std::filesystem::remove_all(dir);
        const std::vector<std::string> args = {"compare", "--env", "builtin:fig2", "--episodes", "5000",
                                               "--seed",  "11",    "--threads",    "4",          "--out",
                                               dir.string()};
        std::ostringstream sink;
        bool reports = true;
        std::string first_csv, first_json;
        for (int run = 0; run < 2; ++run) {
            reports = reports && cli::run(args, sink, sink) == cli::kOk;
            const std::string csv = slurp(dir / "gap_table.csv");
            const std::string js = slurp(dir / "compare_report.json");
            if (run == 0) {
                first_csv = csv;
                first_json = js;
            } else {
                reports = reports && !csv.empty() && csv == first_csv && js == first_json;
            }
        }
        std::filesystem::remove_all(dir);
        return Outcome{traj && tables && reports,
                       fmt::format("trajectories {}, Q-tables {}, reports {}", traj ? "identical" : "DIFFER",
                                   tables ? "identical" : "DIFFER", reports ? "identical" : "DIFFER")};
    });

    report(9, "Monte-Carlo means (100,000 episodes) within 0.05 of exact", [&] {
        std::vector<Deployment> all = trio;
        all.push_back({"fig1 optimal/true", &fig1, solve_esr_backward(fig1, kMin).policy, Regime::True, 4.0});
        all.push_back({"fig1 markov/true", &fig1,
                       solve_by_enumeration(fig1, kMin, ObservationKind::Markov, Criterion::Esr).policy,
                       Regime::True, 2.0});
        DeployOptions opts;
        opts.episodes = 100'000;
        opts.threads = 4;
        bool ok = true;
        std::string detail;
        for (const auto& d : all) {
            const auto r = deploy(*d.momdp, d.policy, kMin, d.regime, &model, opts, d.name);
            const bool good = r.exact && close(r.mean, *r.exact, 0.05);
            ok = ok && good;
            detail += fmt::format("{} {:.4f} vs {}; ", d.name, r.mean, r.exact ? fmt::format("{}", *r.exact) : "n/a");
        }
        return Outcome{ok, detail};
    });

    std::cout << (failures == 0 ? "all criteria passed\n" : fmt::format("{} criteria failed\n", failures));
    return failures == 0 ? 0 : 1;
}
