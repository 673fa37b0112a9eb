#include <doctest.h>

#include <random>

#include "morl/envs.hpp"
#include "morl/momdp.hpp"
#include "morl/utility.hpp"
#include "support.hpp"

using namespace morl;
using morl::testing::near;

TEST_CASE("built-in environments validate cleanly") {
    CHECK(validate(envs::fig1()).empty());
    CHECK(validate(envs::fig2()).empty());
}

TEST_CASE("validate reports a transition mass that does not sum to one") {
    Momdp m = envs::fig1();
    m.states[0].actions[0].branches[0].prob = 0.9;
    const auto v = validate(m);
    REQUIRE(v.size() == 1);
    CHECK(v[0].message == "transition mass 0.9 ≠ 1");
    CHECK(v[0].where == "(s0, a1)");
}

TEST_CASE("validate reports a reward vector of the wrong dimension") {
    Momdp m = envs::fig2();
    m.states[2].actions[0].branches[0].outcomes[0].vector = {3, 3, 3};
    const auto v = validate(m);
    REQUIRE(v.size() == 1);
    CHECK(v[0].message == "reward dimension 3 ≠ 2");
    CHECK(v[0].where == "(s2, a1, end)");
}

TEST_CASE("validate covers mu, terminal and horizon rules") {
    SUBCASE("initial mass on a terminal state") {
        Momdp m = envs::fig1();
        m.mu = {0.5, 0.0, 0.5};
        CHECK(validate(m).size() == 1);
    }
    SUBCASE("mu does not sum to one") {
        Momdp m = envs::fig1();
        m.mu = {0.7, 0.0, 0.0};
        const auto v = validate(m);
        REQUIRE(v.size() == 1);
        CHECK(v[0].message == "initial mass 0.7 ≠ 1");
    }
    SUBCASE("terminal state with actions") {
        Momdp m = envs::fig1();
        m.states[2].actions.push_back(m.states[1].actions[0]);
        CHECK(validate(m).size() == 1);
    }
    SUBCASE("horizon too short") {
        Momdp m = envs::fig1();
        m.horizon = 1;
        const auto v = validate(m);
        REQUIRE(v.size() == 1);
        CHECK(v[0].where == "s1");
    }
    SUBCASE("cycle never terminates") {
        Momdp m = envs::fig1();
        m.states[1].actions[0].branches[0].to = 0;
        CHECK_FALSE(validate(m).empty());
    }
    SUBCASE("gamma out of range") {
        Momdp m = envs::fig1();
        m.gamma = 1.5;
        CHECK(validate(m).size() == 1);
    }
    SUBCASE("missing reward distribution") {
        Momdp m = envs::fig1();
        m.states[1].actions[1].branches[0].outcomes.clear();
        const auto v = validate(m);
        REQUIRE(v.size() == 1);
        CHECK(v[0].message == "missing reward distribution");
    }
    SUBCASE("gamma of exactly one is allowed") {
        Momdp m = envs::fig1();
        m.gamma = 1.0;
        CHECK(validate(m).empty());
    }
}

TEST_CASE("require_valid throws with every violation listed") {
    Momdp m = envs::fig1();
    m.states[0].actions[0].branches[0].prob = 0.9;
    m.mu = {0.5, 0.0, 0.0};
    CHECK_THROWS_AS(require_valid(m), InvalidInput);
    CHECK_NOTHROW(require_valid(envs::fig2()));
}

TEST_CASE("accumulate discounts by gamma^t") {
    CHECK(accumulate({0, 0}, {4, 0}, 1.0, 0) == RewardVector{4, 0});
    CHECK(near(accumulate({1, 0}, {0, 1}, 0.9, 1), RewardVector{1, 0.9}));
    CHECK(accumulate({4, 0}, {0, 4}, 1.0, 1) == RewardVector{4, 4});
    CHECK_THROWS_AS(accumulate({0, 0}, {1, 2, 3}, 1.0, 0), InvalidInput);
    CHECK_THROWS_AS(accumulate({0, 0}, {1, 2}, 1.0, -1), InvalidInput);
}

TEST_CASE("accumulate with gamma 0 ignores every reward after step 0") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-10, 10);
    for (int trial = 0; trial < 200; ++trial) {
        RewardVector acc = {dist(gen), dist(gen)};
        const RewardVector start = acc;
        for (int t = 1; t < 6; ++t) acc = accumulate(acc, {dist(gen), dist(gen)}, 0.0, t);
        CHECK(acc == start);
    }
}

TEST_CASE("augment packs state, accumulated reward and step") {
    const Momdp m = envs::fig1();
    CHECK(augment(m, 1, {4, 0}, 1) == AugmentedState{1, {4, 0}, 1});
    CHECK(augment(m, 0, {0, 0}, 0) == AugmentedState{0, {0, 0}, 0});
    CHECK(augment(m, 1, {2, 2}, 1) == AugmentedState{1, {2, 2}, 1});
    CHECK_THROWS_AS(augment(m, 9, {0, 0}, 0), InvalidInput);
    CHECK_THROWS_AS(augment(m, 0, {0, 0, 0}, 0), InvalidInput);
    CHECK_THROWS_AS(augment(m, 0, {0, 0}, 3), InvalidInput);
}

TEST_CASE("observation keys snap accumulated rewards to the grid") {
    const AugmentedState a{1, {2.0, 2.0}, 1};
    const AugmentedState b{1, {2.0 + 1e-12, 2.0 - 1e-12}, 1};
    CHECK(make_key(a, kDefaultGrid) == make_key(b, kDefaultGrid));
    CHECK(make_key(a, kDefaultGrid) != make_key(AugmentedState{1, {2.0, 2.0}, 0}, kDefaultGrid));
    CHECK(dequantize(quantize({4, 0.5}, 1e-9), 1e-9) == RewardVector{4, 0.5});
}

TEST_CASE("utility examples") {
    const auto umin = UtilityFunction::min();
    CHECK(umin({4, 0}) == 0);
    CHECK(umin({4, 4}) == 4);
    CHECK(UtilityFunction::linear({0.5, 0.5})({4, 0}) == 2);
    CHECK_THROWS_AS(UtilityFunction::linear({0.5, 0.5})({1, 2, 3}), InvalidInput);
    CHECK_THROWS_AS(UtilityFunction::linear({0.7, 0.7}), InvalidInput);
    CHECK_THROWS_AS(UtilityFunction::linear({1.5, -0.5}), InvalidInput);
}

TEST_CASE("utility spec parsing") {
    CHECK(parse_utility("min").kind() == UtilityFunction::Kind::Min);
    const auto lin = parse_utility("linear:0.25,0.75");
    CHECK(lin.kind() == UtilityFunction::Kind::Linear);
    CHECK(lin.spec() == "linear:0.25,0.75");
    CHECK_THROWS_AS(parse_utility("max"), InvalidInput);
    CHECK_THROWS_AS(parse_utility("linear:a,b"), InvalidInput);
}

TEST_CASE("tabulated utility rejects non-monotone tables") {
    const auto ok = UtilityFunction::tabulated({{{0, 0}, 0.0}, {{1, 0}, 0.5}, {{1, 1}, 2.0}});
    CHECK(ok({1, 0}) == 0.5);
    CHECK_THROWS_AS(ok({5, 5}), InvalidInput);
    CHECK_THROWS_AS(UtilityFunction::tabulated({{{0, 0}, 1.0}, {{1, 1}, 0.5}}), InvalidInput);
}

TEST_CASE("min utility is monotone over random comparable pairs") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> base(-5, 5), bump(0, 3);
    const auto u = UtilityFunction::min();
    for (int i = 0; i < 1000; ++i) {
        const RewardVector v = {base(gen), base(gen), base(gen)};
        const RewardVector w = {v[0] + bump(gen), v[1] + bump(gen), v[2] + bump(gen)};
        CHECK(u(v) <= u(w));
    }
}
