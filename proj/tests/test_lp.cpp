#include <catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using namespace eqtest;

namespace {

Subgraph full_subgraph(const ConcurrentGame& g) {
    std::vector<SecuredArena::Edge> edges;
    for (StateIdx s = 0; s < g.arena.state_count(); ++s)
        for (int p = 0; p < g.arena.profile_count(s); ++p)
            edges.push_back({s, p, g.arena.successor(s, p)});
    return Subgraph::from_edges(g, edges);
}

LPInstance raw_instance(int vars, std::vector<LPRow> rows) {
    LPInstance lp;
    lp.num_vars = vars;
    for (int v = 0; v < vars; ++v)
        lp.var_edge.push_back(v);
    lp.rows = std::move(rows);
    return lp;
}

} // namespace

TEST_CASE("simplex feasibility on hand instances") {
    SECTION("x >= 1 is feasible") {
        auto lp = raw_instance(1, {{{{0, Rational(1)}}, Rel::Ge, Rational(0)},
                                   {{{0, Rational(1)}}, Rel::Ge, Rational(1)}});
        auto p = lp_feasible(lp);
        REQUIRE(p);
        CHECK(p->x[0] >= Rational(1));
    }
    SECTION("-x >= 1 with x >= 0 is infeasible") {
        auto lp = raw_instance(1, {{{{0, Rational(1)}}, Rel::Ge, Rational(0)},
                                   {{{0, Rational(-1)}}, Rel::Ge, Rational(1)}});
        CHECK(!lp_feasible(lp));
    }
    SECTION("equalities and mixed systems") {
        // x + y = 2, x - y >= 1, both nonnegative
        auto lp = raw_instance(
            2, {{{{0, Rational(1)}, {1, Rational(1)}}, Rel::Eq, Rational(2)},
                {{{0, Rational(1)}, {1, Rational(-1)}}, Rel::Ge, Rational(1)}});
        auto p = lp_feasible(lp);
        REQUIRE(p);
        CHECK(p->x[0] + p->x[1] == Rational(2));
        CHECK(p->x[0] - p->x[1] >= Rational(1));
    }
    SECTION("deterministic: identical instances give identical points") {
        auto lp = raw_instance(
            3, {{{{0, Rational(1)}, {1, Rational(2)}, {2, Rational(1)}}, Rel::Ge, Rational(3)},
                {{{0, Rational(1)}, {1, Rational(-1)}}, Rel::Eq, Rational(0)}});
        auto a = lp_feasible(lp);
        auto b = lp_feasible(lp);
        REQUIRE(a);
        REQUIRE(b);
        CHECK(a->x == b->x);
    }
}

TEST_CASE("guarantee LP on hand graphs") {
    SECTION("self-loop with shifted weight 0 and a satisfied guarantee") {
        ConcurrentGame g = self_loop_game(Rational(0));
        Subgraph sg = full_subgraph(g);
        std::vector<std::vector<bool>> theta = {{true}};
        auto lp = build_guarantee_lp(sg, {Rational(0)}, theta);
        CHECK(lp_feasible(lp));
    }
    SECTION("self-loop below the shift is infeasible through Eq3") {
        ConcurrentGame g = self_loop_game(Rational(-1));
        Subgraph sg = full_subgraph(g);
        auto lp = build_guarantee_lp(sg, {Rational(0)}, {});
        CHECK(!lp_feasible(lp));
    }
    SECTION("a guarantee set disjoint from the component is infeasible") {
        ConcurrentGame g = self_loop_game(Rational(1));
        Subgraph sg = full_subgraph(g);
        std::vector<std::vector<bool>> theta = {{true}, {false}};
        CHECK(!lp_feasible(build_guarantee_lp(sg, {Rational(0)}, theta)));
    }
    SECTION("row and variable counts are |E| + 1 + |N| + n + |V| over |E|") {
        ConcurrentGame g = robot_product_game();
        Subgraph sg = full_subgraph(g);
        std::vector<std::vector<bool>> theta = {sat_states(g, parse_formula("collide")),
                                                sat_states(g, parse_formula("!collide"))};
        auto lp = build_guarantee_lp(sg, {Rational(0), Rational(0)}, theta);
        int E = static_cast<int>(sg.edges.size());
        int V = static_cast<int>(sg.nodes.size());
        CHECK(lp.num_vars == E);
        CHECK(static_cast<int>(lp.rows.size()) == E + 1 + 2 + 2 + V);
    }
}

TEST_CASE("assumption LP deletes the forbidden states") {
    ConcurrentGame g = robot_product_game();
    PunishmentTable t = punishment_table(g);
    SecuredArena secured = build_secured(g, t, {Rational(1, 2), Rational(1, 2)});
    Subgraph scc = make_scc_subgraph(secured, scc_reachable(secured).front());
    std::vector<Rational> shift = {Rational(1, 2), Rational(1, 2)};

    SECTION("psi false everywhere behaves like a plain cycle search") {
        auto parts = build_assumption_lp(scc, shift, sat_states(g, parse_formula("false")));
        bool feasible = false;
        for (const auto& [part, lp] : parts)
            feasible = feasible || lp_feasible(lp).has_value();
        CHECK(feasible == lp_feasible(build_existence_lp(scc, shift)).has_value());
    }
    SECTION("psi true everywhere leaves nothing") {
        auto parts = build_assumption_lp(scc, shift, sat_states(g, parse_formula("true")));
        CHECK(parts.empty());
    }
    SECTION("deleting collisions keeps the disjoint-route component feasible") {
        auto parts = build_assumption_lp(scc, shift, sat_states(g, parse_formula("collide")));
        REQUIRE(!parts.empty());
        bool feasible = false;
        for (const auto& [part, lp] : parts)
            feasible = feasible || lp_feasible(lp).has_value();
        CHECK(feasible);
    }
}

TEST_CASE("assumption LP can escape through a disjoint cycle in the same SCC") {
    // 2-cycle s0 <-> s1 where s1 satisfies psi, plus a nonnegative self-loop
    // at s0: deleting s1 leaves the self-loop
    ConcurrentGame g = make_game(
        {"p0"}, {"marked"},
        {{"s0", {}, {Rational(0)}, {2}}, {"s1", {"marked"}, {Rational(0)}, {1}}}, "s0",
        [](const std::string& s, const std::vector<int>& a) {
            if (s == "s0")
                return a[0] == 0 ? "s0" : "s1";
            return "s0";
        });
    Subgraph sg = full_subgraph(g);
    auto psi = sat_states(g, parse_formula("marked"));
    auto parts = build_assumption_lp(sg, {Rational(0)}, psi);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].first.nodes == std::vector<StateIdx>{0});
    CHECK(lp_feasible(parts[0].second));
    // the independent path: enumerate cycles of the deleted part
    CHECK(oracle::brute_cycle_feasible(g, parts[0].first.edges, {Rational(0)}, {}));
}

TEST_CASE("negated-spec LP") {
    SECTION("no assumptions: a p-free nonnegative cycle violates GF p") {
        ConcurrentGame g = make_game(
            {"p0"}, {"p"},
            {{"s0", {}, {Rational(1)}, {2}}, {"s1", {"p"}, {Rational(1)}, {1}}}, "s0",
            [](const std::string& s, const std::vector<int>& a) {
                if (s == "s0")
                    return a[0] == 0 ? "s0" : "s1";
                return "s0";
            });
        Subgraph sg = full_subgraph(g);
        auto theta_r = sat_states(g, parse_formula("p"));
        auto parts = build_negspec_lp(sg, {Rational(0)}, {}, theta_r);
        bool feasible = false;
        for (const auto& [part, lp] : parts)
            feasible = feasible || lp_feasible(lp).has_value();
        CHECK(feasible);
    }
    SECTION("an assumption inside the deleted guarantee set is unreachable") {
        // V(psi) subset of V(theta_r): deleting theta_r kills every psi visit
        ConcurrentGame g = make_game(
            {"p0"}, {"p", "q"},
            {{"s0", {}, {Rational(1)}, {2}}, {"s1", {"p", "q"}, {Rational(1)}, {1}}}, "s0",
            [](const std::string& s, const std::vector<int>& a) {
                if (s == "s0")
                    return a[0] == 0 ? "s0" : "s1";
                return "s0";
            });
        Subgraph sg = full_subgraph(g);
        std::vector<std::vector<bool>> psi = {sat_states(g, parse_formula("p"))};
        auto theta_r = sat_states(g, parse_formula("q"));
        bool feasible = false;
        for (const auto& [part, lp] : build_negspec_lp(sg, {Rational(0)}, psi, theta_r))
            feasible = feasible || lp_feasible(lp).has_value();
        CHECK_FALSE(feasible);
    }
}

TEST_CASE("LP dump is a plain matrix with p/q entries") {
    auto lp = raw_instance(2, {{{{0, Rational(1, 2)}, {1, Rational(-1)}}, Rel::Ge, Rational(1)},
                               {{{0, Rational(1)}, {1, Rational(1)}}, Rel::Eq, Rational(0)}});
    CHECK(lp.dump() == "1/2 -1 >= 1\n1 1 = 0\n");
}

TEST_CASE("simplex agrees with cycle enumeration plus Fourier-Motzkin") {
    std::mt19937_64 rng(77);
    int compared = 0;
    for (int round = 0; round < 60; ++round) {
        oracle::RandomGameParams params;
        params.states = 2 + static_cast<int>(rng() % 3);
        ConcurrentGame g = oracle::random_game(rng, params);
        PunishmentTable t = punishment_table(g);
        std::vector<Rational> z;
        for (PlayerIdx i = 0; i < g.arena.player_count(); ++i) {
            auto vs = t.value_set(i);
            z.push_back(vs[rng() % vs.size()]);
        }
        SecuredArena secured = build_secured(g, t, z);
        if (!secured.has_initial())
            continue;
        auto psi = sat_states(g, parse_formula("p"));
        auto theta = sat_states(g, parse_formula("q"));
        for (const auto& scc : scc_reachable(secured)) {
            Subgraph sg = make_scc_subgraph(secured, scc);
            if (sg.edges.size() > 10)
                continue;
            ++compared;
            CHECK(lp_feasible(build_guarantee_lp(sg, z, {theta})).has_value() ==
                  oracle::brute_cycle_feasible(g, sg.edges, z, {theta}));
            for (const auto& [part, lp] : build_assumption_lp(sg, z, psi))
                CHECK(lp_feasible(lp).has_value() ==
                      oracle::brute_cycle_feasible(g, part.edges, z, {}));
            for (const auto& [part, lp] : build_negspec_lp(sg, z, {psi}, theta))
                CHECK(lp_feasible(lp).has_value() ==
                      oracle::brute_cycle_feasible(g, part.edges, z, {psi}));
        }
    }
    CHECK(compared > 30);
}
