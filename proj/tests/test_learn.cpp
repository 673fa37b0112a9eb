#include <doctest.h>

#include "morl/envs.hpp"
#include "morl/exact.hpp"
#include "morl/qlearning.hpp"
#include "morl/reward_model.hpp"
#include "morl/rng.hpp"
#include "support.hpp"

using namespace morl;
using morl::testing::exact_model;
using morl::testing::near;

namespace {

const UtilityFunction kMin = UtilityFunction::min();

TrainConfig quick(TrainingMode mode, std::size_t episodes = 5000, std::uint64_t seed = 1) {
    TrainConfig cfg;
    cfg.mode = mode;
    cfg.episodes = episodes;
    cfg.seed = seed;
    cfg.curve_every = 1000;
    return cfg;
}

}  // namespace

TEST_CASE("reward model learns expected transition rewards") {
    const Momdp f2 = envs::fig2();
    const RewardModel model = fit_reward_model(f2, nullptr, 10000, 1);
    const StateId s0 = *f2.find_state("s0"), s1 = *f2.find_state("s1");
    const auto pred = model.predict(s0, *f2.find_action(s0, "a1"), s1);
    CHECK(std::abs(pred[0] - 2.0) <= 0.05);
    CHECK(std::abs(pred[1] - 2.0) <= 0.05);

    const Momdp f1 = envs::fig1();
    const RewardModel m1 = fit_reward_model(f1, nullptr, 1000, 3);
    const StateId t1 = *f1.find_state("s1");
    CHECK(m1.predict(t1, *f1.find_action(t1, "aR"), *f1.find_state("end")) == RewardVector{4, 0});
}

TEST_CASE("reward model strict and lenient modes") {
    RewardModel strict(2, true);
    CHECK_THROWS_AS(strict.predict(0, 0, 1), InvalidInput);
    RewardModel lenient(2, false);
    CHECK(lenient.predict(0, 0, 1) == RewardVector{0, 0});
    CHECK(lenient.predict(0, 0, 1) == RewardVector{0, 0});
    CHECK_THROWS_AS(lenient.observe(0, 0, 1, {1, 2, 3}), InvalidInput);
}

TEST_CASE("incremental updates match the batch mean and merge is consistent") {
    Rng rng(11);
    RewardModel all(2), left(2), right(2);
    RewardVector sum{0, 0};
    const int n = 500;
    for (int i = 0; i < n; ++i) {
        const RewardVector r = {rng.uniform() * 4, rng.uniform() * 4};
        sum[0] += r[0];
        sum[1] += r[1];
        all.observe(0, 1, 2, r);
        (i % 3 == 0 ? left : right).observe(0, 1, 2, r);
    }
    CHECK(near(all.predict(0, 1, 2), {sum[0] / n, sum[1] / n}));
    left.merge(right);
    CHECK(near(left.predict(0, 1, 2), all.predict(0, 1, 2)));
    CHECK(left.total_samples() == static_cast<std::size_t>(n));
}

TEST_CASE("epsilon schedule") {
    TrainConfig cfg;
    cfg.episodes = 101;
    CHECK(cfg.epsilon_at(0) == 1.0);
    CHECK(near(cfg.epsilon_at(100), 0.01));
    CHECK(near(cfg.epsilon_at(50), 0.505));
    cfg.epsilon_decay_episodes = 11;
    CHECK(near(cfg.epsilon_at(10), 0.01));
    CHECK(near(cfg.epsilon_at(90), 0.01));
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(cfg.check(), InvalidInput);
}

TEST_CASE("training is deterministic given the seed") {
    const Momdp m = envs::fig2();
    const auto a = train_q(m, kMin, quick(TrainingMode::TrueRewards, 2000, 7));
    const auto b = train_q(m, kMin, quick(TrainingMode::TrueRewards, 2000, 7));
    CHECK(a.table == b.table);
    CHECK(a.policy == b.policy);
    const auto c = train_q(m, kMin, quick(TrainingMode::TrueRewards, 2000, 8));
    CHECK_FALSE(a.table == c.table);
}

TEST_CASE("true-reward training recovers the optimal augmented policy") {
    const Momdp f1 = envs::fig1();
    const auto r1 = train_q(f1, kMin, quick(TrainingMode::TrueRewards));
    CHECK(near(esr_evaluate(f1, r1.policy, kMin, Regime::True).value, 4.0));
    REQUIRE_FALSE(r1.curve.empty());
    CHECK(r1.curve.back().episode == 5000);
    CHECK(near(r1.curve.back().greedy_value, 4.0));

    const Momdp f2 = envs::fig2();
    const auto r2 = train_q(f2, kMin, quick(TrainingMode::TrueRewards));
    CHECK(near(esr_evaluate(f2, r2.policy, kMin, Regime::True).value, 4.0));
    // The same policy shown proxy rewards loses the information it relies on.
    const RewardModel model = exact_model(f2);
    CHECK(near(esr_evaluate(f2, r2.policy, kMin, Regime::Proxy, &model).value, 2.0));
}

TEST_CASE("proxy training prefers the safe route") {
    const Momdp m = envs::fig2();
    const RewardModel model = fit_reward_model(m, nullptr, 10000, 1);
    const StateId s0 = *m.find_state("s0");
    for (auto mode : {TrainingMode::FullProxy, TrainingMode::AsymmetricProxy}) {
        CAPTURE(to_string(mode));
        const auto r = train_q(m, kMin, quick(mode), &model);
        CHECK(r.policy.kind() == ObservationKind::ProxyAugmented);
        CHECK(r.policy.lookup(s0, 0, {0, 0}) == *m.find_action(s0, "a2"));
        CHECK(near(esr_evaluate(m, r.policy, kMin, Regime::Proxy, &model).value, 3.0));
    }
}

TEST_CASE("proxy modes require a reward model") {
    const Momdp m = envs::fig2();
    CHECK_THROWS_AS(train_q(m, kMin, quick(TrainingMode::FullProxy, 10)), InvalidInput);
    CHECK_THROWS_AS(train_q(m, kMin, quick(TrainingMode::AsymmetricProxy, 10)), InvalidInput);
}

TEST_CASE("Q-table only holds observations the learner actually visited") {
    const Momdp m = envs::fig1();
    const auto r = train_q(m, kMin, quick(TrainingMode::TrueRewards, 500));
    // Reachable true-augmented observations: s0 at step 0 plus s1 after (4,0) or (0,4).
    CHECK(r.table.entries.size() == 3);
    for (const auto& [key, entry] : r.table.entries) {
        CHECK_FALSE(m.is_terminal(key.state));
        CHECK(entry.q.size() == m.num_actions(key.state));
    }
}

TEST_CASE("greedy policy is stationary once exploration stops") {
    const Momdp m = envs::fig2();
    QLearner learner(m, kMin, TrainingMode::TrueRewards, nullptr, 0.1, 3);
    for (int i = 0; i < 3000; ++i) learner.run_episode(0.3);
    const Policy before = learner.greedy_policy();
    for (int i = 0; i < 200; ++i) learner.run_episode(0.0);
    CHECK(learner.greedy_policy() == before);
}
