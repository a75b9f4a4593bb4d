#include <catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using namespace eqtest;

TEST_CASE("punishment values on the robot fixtures") {
    SECTION("all-zero weights give all-zero punishment values") {
        ConcurrentGame g = make_game(
            {"p0", "p1"}, {}, {{"s0", {}, {Rational(0), Rational(0)}, {2, 2}}}, "s0",
            [](const std::string&, const std::vector<int>&) { return "s0"; });
        PunishmentTable t = punishment_table(g);
        CHECK(t.value(0, 0) == Rational(0));
        CHECK(t.value(1, 0) == Rational(0));
    }
    SECTION("unrewarded robot secures 1/2 from the start") {
        ConcurrentGame g = single_robot_game();
        PunishmentTable t = punishment_table(g);
        CHECK(t.value(0, g.arena.initial) == Rational(1, 2));
    }
    SECTION("rewarded robot secures 1") {
        ConcurrentGame g = apply_scheme(single_robot_game(), single_robot_scheme(single_robot_game()));
        PunishmentTable t = punishment_table(g);
        CHECK(t.value(0, g.arena.initial) == Rational(1));
    }
    SECTION("the co-robot cannot lower the solo optimum in the product") {
        ConcurrentGame g = robot_product_game();
        PunishmentTable t = punishment_table(g);
        oracle::SizeGuard wide;
        wide.max_states = 12;
        wide.max_edges = 30;
        for (PlayerIdx i = 0; i < 2; ++i) {
            auto brute = oracle::brute_pun_all(g, i, wide);
            for (StateIdx s = 0; s < g.arena.state_count(); ++s) {
                CHECK(t.value(i, s) == brute[s]);
                CHECK(t.value(i, s) == Rational(1, 2));
            }
        }
        ConcurrentGame rewarded = apply_scheme(g, robot_product_scheme(g));
        PunishmentTable tr = punishment_table(rewarded);
        for (PlayerIdx i = 0; i < 2; ++i)
            for (StateIdx s = 0; s < g.arena.state_count(); ++s)
                CHECK(tr.value(i, s) == Rational(1));
    }
}

TEST_CASE("punishment table agrees with coalition enumeration on random games") {
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 60; ++round) {
        oracle::RandomGameParams params;
        params.states = 2 + static_cast<int>(rng() % 4); // up to 5 states
        ConcurrentGame g = oracle::random_game(rng, params);
        PunishmentTable t = punishment_table(g);
        for (PlayerIdx i = 0; i < g.arena.player_count(); ++i) {
            auto brute = oracle::brute_pun_all(g, i);
            for (StateIdx s = 0; s < g.arena.state_count(); ++s)
                CHECK(t.value(i, s) == brute[s]);
            CHECK(t.turn_based_node_count(i) >= g.arena.state_count());
            for (StateIdx s = 0; s < g.arena.state_count(); ++s)
                CHECK(t.value(i, s).denominator() <= t.turn_based_node_count(i));
        }
    }
}

TEST_CASE("brute_pun is monotone in the protagonist's weights") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 20; ++round) {
        oracle::RandomGameParams params;
        params.states = 3;
        ConcurrentGame g = oracle::random_game(rng, params);
        ConcurrentGame raised = g;
        for (StateIdx s = 0; s < g.arena.state_count(); ++s)
            raised.weights[0][s] += Rational(static_cast<long long>(rng() % 3));
        for (StateIdx s = 0; s < g.arena.state_count(); ++s)
            CHECK(oracle::brute_pun(raised, 0, s) >= oracle::brute_pun(g, 0, s));
    }
}

TEST_CASE("stored coalition strategy achieves the stored value") {
    ConcurrentGame g = robot_product_game();
    PunishmentTable t = punishment_table(g);
    for (PlayerIdx i = 0; i < 2; ++i) {
        std::vector<int> strat = t.coalition_strategy(i);
        // fix the coalition to the stored strategy and let i best-respond
        std::vector<std::vector<int>> succ(g.arena.state_count());
        for (StateIdx s = 0; s < g.arena.state_count(); ++s)
            for (ActionIdx a = 0; a < g.arena.action_count(s, i); ++a)
                succ[s].push_back(g.arena.successor(s, combine_partial(g.arena, s, i, strat[s], a)));
        for (StateIdx s = 0; s < g.arena.state_count(); ++s)
            CHECK(max_mean_cycle(succ, g.weights[i], s) == t.value(i, s));
    }
}

TEST_CASE("z-security") {
    ConcurrentGame g = robot_product_game();
    ConcurrentGame rewarded = apply_scheme(g, robot_product_scheme(g));
    PunishmentTable t = punishment_table(rewarded);

    SECTION("non-strict at the boundary, false one notch below") {
        // all punishment values are exactly 1 in the rewarded product
        for (int p = 0; p < rewarded.arena.profile_count(0); ++p) {
            CHECK(is_z_secure(rewarded, t, 0, p, 0, Rational(1)));
            CHECK_FALSE(is_z_secure(rewarded, t, 0, p, 0, Rational(1, 2)));
        }
    }
    SECTION("monotone in z") {
        std::mt19937_64 rng(7);
        for (int round = 0; round < 20; ++round) {
            oracle::RandomGameParams params;
            params.states = 3;
            ConcurrentGame rg = oracle::random_game(rng, params);
            PunishmentTable rt = punishment_table(rg);
            for (StateIdx s = 0; s < rg.arena.state_count(); ++s)
                for (int p = 0; p < rg.arena.profile_count(s); ++p)
                    for (PlayerIdx i = 0; i < rg.arena.player_count(); ++i) {
                        Rational z(static_cast<long long>(rng() % 5) - 2);
                        if (is_z_secure(rg, rt, s, p, i, z))
                            CHECK(is_z_secure(rg, rt, s, p, i, z + Rational(1)));
                    }
        }
    }
}

TEST_CASE("pun value sets are sorted, deduplicated, and state-bounded") {
    ConcurrentGame g = robot_product_game();
    PunishmentTable t = punishment_table(g);
    auto vs = t.value_set(0);
    CHECK(vs == std::vector<Rational>{Rational(1, 2)});

    std::mt19937_64 rng(55);
    for (int round = 0; round < 20; ++round) {
        oracle::RandomGameParams params;
        params.states = 4;
        ConcurrentGame rg = oracle::random_game(rng, params);
        PunishmentTable rt = punishment_table(rg);
        for (PlayerIdx i = 0; i < rg.arena.player_count(); ++i) {
            auto set = rt.value_set(i);
            CHECK(set.size() <= static_cast<size_t>(rg.arena.state_count()));
            CHECK(std::is_sorted(set.begin(), set.end()));
            CHECK(std::adjacent_find(set.begin(), set.end()) == set.end());
        }
    }
}

TEST_CASE("secured arena construction") {
    ConcurrentGame g = robot_product_game();
    PunishmentTable t = punishment_table(g);

    SECTION("maximal z keeps every configuration") {
        std::vector<Rational> z = {Rational(1, 2), Rational(1, 2)};
        SecuredArena secured = build_secured(g, t, z);
        for (StateIdx s = 0; s < g.arena.state_count(); ++s) {
            CHECK(secured.state_kept[s]);
            for (int p = 0; p < g.arena.profile_count(s); ++p)
                CHECK(secured.config_kept[s][p]);
        }
        CHECK(scc_reachable(secured).size() == 1); // the product is one big SCC
    }
    SECTION("z below the minimum punishment value empties the arena") {
        std::vector<Rational> z = {Rational(0), Rational(0)};
        SecuredArena secured = build_secured(g, t, z);
        CHECK(secured.empty());
        CHECK_FALSE(secured.has_initial());
        CHECK(scc_reachable(secured).empty());
    }
    SECTION("kept configurations land on kept states with pun under z") {
        std::mt19937_64 rng(2024);
        for (int round = 0; round < 25; ++round) {
            oracle::RandomGameParams params;
            params.states = 4;
            ConcurrentGame rg = oracle::random_game(rng, params);
            PunishmentTable rt = punishment_table(rg);
            std::vector<Rational> z;
            for (PlayerIdx i = 0; i < rg.arena.player_count(); ++i) {
                auto vs = rt.value_set(i);
                z.push_back(vs[rng() % vs.size()]);
            }
            SecuredArena secured = build_secured(rg, rt, z);
            for (const auto& e : secured.edges()) {
                for (PlayerIdx i = 0; i < rg.arena.player_count(); ++i) {
                    CHECK(is_z_secure(rg, rt, e.src, e.profile, i, z[i]));
                    CHECK(rt.value(i, e.trg) <= z[i]); // soundness via a'_i = a_i
                }
                CHECK(secured.state_kept[e.trg]); // transition-closed
            }
        }
    }
}

TEST_CASE("paths inside a secured arena are z-secure throughout") {
    ConcurrentGame g = robot_product_game();
    PunishmentTable t = punishment_table(g);
    std::vector<Rational> z = {Rational(1, 2), Rational(1, 2)};
    SecuredArena secured = build_secured(g, t, z);
    // sample lassos by walking kept configurations deterministically
    std::mt19937_64 rng(5);
    for (int round = 0; round < 10; ++round) {
        std::vector<Config> walk;
        StateIdx s = g.arena.initial;
        for (int step = 0; step < 12; ++step) {
            std::vector<int> kept;
            for (int p = 0; p < g.arena.profile_count(s); ++p)
                if (secured.config_kept[s][p])
                    kept.push_back(p);
            REQUIRE(!kept.empty());
            int p = kept[rng() % kept.size()];
            walk.push_back({s, p});
            s = g.arena.successor(s, p);
        }
        for (const Config& c : walk)
            for (PlayerIdx i = 0; i < 2; ++i)
                CHECK(is_z_secure(g, t, c.state, c.profile, i, z[i]));
    }
}
