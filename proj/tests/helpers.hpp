#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "eqdesign/eqdesign.hpp"

namespace eqtest {

using namespace eqdesign;

struct StateSpec {
    std::string id;
    std::vector<std::string> labels;
    std::vector<Rational> weights;     // per player
    std::vector<int> action_counts;    // per player; actions named a0, a1, ...
};

/// Compact game builder for tests: transition is a function of the state id
/// and the decoded profile.
inline ConcurrentGame
make_game(std::vector<std::string> players, std::vector<std::string> atoms,
          const std::vector<StateSpec>& states, const std::string& initial,
          const std::function<std::string(const std::string&, const std::vector<int>&)>& tr) {
    ConcurrentGame g;
    Arena& arena = g.arena;
    arena.players = std::move(players);
    arena.atoms = std::move(atoms);
    g.weights.resize(arena.player_count());
    for (const StateSpec& st : states) {
        arena.states.push_back(st.id);
        std::vector<bool> bits(arena.atom_count(), false);
        for (const auto& l : st.labels)
            bits[arena.atom_index(l)] = true;
        arena.labels.push_back(std::move(bits));
        std::vector<std::vector<std::string>> acts(arena.player_count());
        for (PlayerIdx i = 0; i < arena.player_count(); ++i)
            for (int a = 0; a < st.action_counts[i]; ++a)
                acts[i].push_back("a" + std::to_string(a));
        arena.actions.push_back(std::move(acts));
        for (PlayerIdx i = 0; i < arena.player_count(); ++i)
            g.weights[i].push_back(st.weights[i]);
    }
    arena.initial = arena.state_index(initial);
    arena.transitions.resize(arena.state_count());
    for (StateIdx s = 0; s < arena.state_count(); ++s) {
        for (int p = 0; p < arena.profile_count(s); ++p) {
            auto decoded = arena.decode_profile(s, p);
            arena.transitions[s].push_back(arena.state_index(tr(arena.states[s], decoded)));
        }
    }
    g.validate();
    return g;
}

/// Single delivery robot on the two shortest routes between its target
/// corners, in state-weight form. Corner states are split by arrival route
/// so that per-route rewards are expressible as state rewards: reaching a
/// corner pays 2 (move cost -1 plus delivery bonus 3), every other move -1.
inline ConcurrentGame single_robot_game() {
    auto w = [](long long x) { return std::vector<Rational>{Rational(x)}; };
    std::vector<StateSpec> states = {
        {"c00_a", {"home"}, w(2), {2}},  // at (0,0), arrived via (1,0)
        {"c00_b", {"home"}, w(2), {2}},  // at (0,0), arrived via (1,1)
        {"m10_out", {}, w(-1), {1}},     // at (1,0), heading to (2,1)
        {"m11_out", {}, w(-1), {1}},     // at (1,1), heading to (2,1)
        {"c21_a", {"goal"}, w(2), {2}},  // at (2,1), arrived via (1,0)
        {"c21_b", {"goal"}, w(2), {2}},  // at (2,1), arrived via (1,1)
        {"m10_back", {}, w(-1), {1}},    // at (1,0), heading to (0,0)
        {"m11_back", {}, w(-1), {1}},    // at (1,1), heading to (0,0)
    };
    auto tr = [](const std::string& s, const std::vector<int>& a) -> std::string {
        if (s == "c00_a" || s == "c00_b")
            return a[0] == 0 ? "m10_out" : "m11_out";
        if (s == "m10_out")
            return "c21_a";
        if (s == "m11_out")
            return "c21_b";
        if (s == "c21_a" || s == "c21_b")
            return a[0] == 0 ? "m10_back" : "m11_back";
        if (s == "m10_back")
            return "c00_a";
        return "c00_b";
    };
    return make_game({"robot"}, {"home", "goal"}, states, "c00_a", tr);
}

/// Reward one unit on both corner arrivals of the (1,0) route, lifting that
/// route's mean payoff from 1/2 to 1.
inline RewardScheme single_robot_scheme(const ConcurrentGame& g) {
    RewardScheme k = RewardScheme::zero_for(g);
    k.set(0, g.arena.state_index("c21_a"), 1);
    k.set(0, g.arena.state_index("c00_a"), 1);
    return k;
}

/// Product of the two robots' route transition systems. Middle states track
/// both chosen routes; the robots collide exactly when they picked the same
/// middle cell. Phase alternates corner pair / middle pair, and both robots
/// deliver simultaneously, so the reachable product has 10 states.
/// Player "round" moves between (0,0) and (2,1); its route a is via (1,0).
/// Player "square" moves between (2,0) and (0,1); its route b is via (1,1).
inline ConcurrentGame robot_product_game() {
    auto w = [](long long a, long long b) {
        return std::vector<Rational>{Rational(a), Rational(b)};
    };
    std::vector<StateSpec> states = {
        {"cc0", {}, w(2, 2), {2, 2}},          // round at (0,0), square at (2,0)
        {"m0_aa", {"collide"}, w(-1, -1), {1, 1}}, // both via (1,0)
        {"m0_ab", {}, w(-1, -1), {1, 1}},          // round (1,0), square (1,1)
        {"m0_ba", {}, w(-1, -1), {1, 1}},          // round (1,1), square (1,0)
        {"m0_bb", {"collide"}, w(-1, -1), {1, 1}}, // both via (1,1)
        {"cc1", {}, w(2, 2), {2, 2}},          // round at (2,1), square at (0,1)
        {"m1_aa", {"collide"}, w(-1, -1), {1, 1}},
        {"m1_ab", {}, w(-1, -1), {1, 1}},
        {"m1_ba", {}, w(-1, -1), {1, 1}},
        {"m1_bb", {"collide"}, w(-1, -1), {1, 1}},
    };
    auto route = [](int a) { return a == 0 ? "a" : "b"; };
    auto tr = [&](const std::string& s, const std::vector<int>& a) -> std::string {
        if (s == "cc0")
            return std::string("m0_") + route(a[0]) + route(a[1]);
        if (s == "cc1")
            return std::string("m1_") + route(a[0]) + route(a[1]);
        if (s.rfind("m0_", 0) == 0)
            return "cc1";
        return "cc0";
    };
    return make_game({"round", "square"}, {"collide"}, states, "cc0", tr);
}

/// The paper's per-robot route rewards pushed onto product states: one unit
/// for round wherever round is on its (1,0) middles, one for square
/// wherever square is on its (1,1) middles. Two edges per robot become
/// eight product slots because the co-player has two concurrent positions.
inline RewardScheme robot_product_scheme(const ConcurrentGame& g) {
    RewardScheme k = RewardScheme::zero_for(g);
    for (const char* s : {"m0_aa", "m0_ab", "m1_aa", "m1_ab"})
        k.add(0, g.arena.state_index(s), 1);
    for (const char* s : {"m0_ab", "m0_bb", "m1_ab", "m1_bb"})
        k.add(1, g.arena.state_index(s), 1);
    return k;
}

/// The eight (player, state) pairs the product scheme lives on.
inline std::vector<Slot> robot_support(const ConcurrentGame& g) {
    std::vector<Slot> slots;
    for (const char* s : {"m0_aa", "m0_ab", "m1_aa", "m1_ab"})
        slots.push_back({0, g.arena.state_index(s)});
    for (const char* s : {"m0_ab", "m0_bb", "m1_ab", "m1_bb"})
        slots.push_back({1, g.arena.state_index(s)});
    std::sort(slots.begin(), slots.end());
    return slots;
}

/// Finitely many collisions: (GF collide) -> (GF false).
inline GR1Spec robot_spec() {
    GR1Spec spec;
    spec.assumptions.push_back(parse_formula("collide"));
    spec.guarantees.push_back(parse_formula("false"));
    return spec;
}

/// One player, one state, one self-loop of the given weight.
inline ConcurrentGame self_loop_game(const Rational& weight) {
    return make_game({"p0"}, {}, {{"s", {}, {weight}, {1}}}, "s",
                     [](const std::string&, const std::vector<int>&) { return "s"; });
}

} // namespace eqtest
