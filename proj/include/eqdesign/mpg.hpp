#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "eqdesign/arena.hpp"
#include "eqdesign/graph.hpp"
#include "eqdesign/rational.hpp"

namespace eqdesign {

/// Two-player zero-sum turn-based mean-payoff game obtained from a
/// concurrent game for one protagonist. Minimizer nodes belong to the
/// adversarial coalition, maximizer nodes to the protagonist. Both
/// half-step nodes derived from the same arena state carry the same weight,
/// so the turn-based mean equals the arena mean.
struct TurnBasedMPG {
    std::vector<bool> is_max;
    std::vector<Rational> weight;
    std::vector<std::vector<int>> succ;
    std::vector<StateIdx> origin;                       // arena state per node
    std::vector<int> coalition_node;                    // arena state -> minimizer node
    std::vector<std::pair<StateIdx, int>> player_key;   // maximizer node -> (state, partial profile)

    int node_count() const { return static_cast<int>(weight.size()); }

    int edge_count() const {
        int m = 0;
        for (const auto& sux : succ)
            m += static_cast<int>(sux.size());
        return m;
    }

    void validate() const {
        for (int u = 0; u < node_count(); ++u) {
            if (succ[u].empty())
                throw InputError("turn-based game node without successor");
            for (int x : succ[u])
                if (is_max[x] == is_max[u])
                    throw InputError("turn-based game is not alternating");
        }
    }
};

/// Number of partial profiles of the coalition against player i at state s.
inline int partial_profile_count(const Arena& arena, StateIdx s, PlayerIdx i) {
    int n = 1;
    for (PlayerIdx j = 0; j < arena.player_count(); ++j)
        if (j != i)
            n *= arena.action_count(s, j);
    return n;
}

/// Full profile from a coalition partial profile plus player i's action.
inline int combine_partial(const Arena& arena, StateIdx s, PlayerIdx i, int partial, ActionIdx ai) {
    std::vector<ActionIdx> acts(arena.player_count());
    for (PlayerIdx j = 0; j < arena.player_count(); ++j) {
        if (j == i)
            continue;
        acts[j] = partial % arena.action_count(s, j);
        partial /= arena.action_count(s, j);
    }
    acts[i] = ai;
    return arena.encode_profile(s, acts);
}

/// Coalition part of a full profile, in the same mixed-radix convention.
inline int extract_partial(const Arena& arena, StateIdx s, PlayerIdx i, int profile) {
    auto acts = arena.decode_profile(s, profile);
    int code = 0;
    for (PlayerIdx j = arena.player_count() - 1; j >= 0; --j)
        if (j != i)
            code = code * arena.action_count(s, j) + acts[j];
    return code;
}

/// Turn the concurrent game into the commit-first turn-based game for
/// player i: the coalition reveals its partial profile at a minimizer node,
/// then i replies at a maximizer node. The value at the minimizer node of s
/// is the punishment value pun_i(s).
inline TurnBasedMPG sequentialize(const ConcurrentGame& game, PlayerIdx i) {
    const Arena& arena = game.arena;
    TurnBasedMPG tb;
    tb.coalition_node.assign(arena.state_count(), -1);

    for (StateIdx s = 0; s < arena.state_count(); ++s) {
        tb.coalition_node[s] = tb.node_count();
        tb.is_max.push_back(false);
        tb.weight.push_back(game.weight(i, s));
        tb.origin.push_back(s);
        tb.player_key.emplace_back(-1, -1);
        tb.succ.emplace_back();
    }
    for (StateIdx s = 0; s < arena.state_count(); ++s) {
        for (int partial = 0; partial < partial_profile_count(arena, s, i); ++partial) {
            int node = tb.node_count();
            tb.is_max.push_back(true);
            tb.weight.push_back(game.weight(i, s));
            tb.origin.push_back(s);
            tb.player_key.emplace_back(s, partial);
            tb.succ.emplace_back();
            tb.succ[tb.coalition_node[s]].push_back(node);
            for (ActionIdx a = 0; a < arena.action_count(s, i); ++a) {
                StateIdx t = arena.successor(s, combine_partial(arena, s, i, partial, a));
                tb.succ[node].push_back(tb.coalition_node[t]);
            }
        }
    }
    return tb;
}

/// Exact maximum over cycles reachable from `source` of the mean node
/// weight along the cycle. Karp's dynamic program per strongly connected
/// component, over rationals.
inline Rational max_mean_cycle(const std::vector<std::vector<int>>& succ,
                               const std::vector<Rational>& node_weight, int source) {
    int n = static_cast<int>(succ.size());
    EdgeGraph g(n);
    for (int u = 0; u < n; ++u) {
        if (succ[u].empty())
            throw InputError("max_mean_cycle: node with no successor");
        for (int v : succ[u])
            g.add_edge(u, v);
    }
    std::vector<bool> reach = reachable_from(g, source);

    std::optional<Rational> best;
    for (const auto& comp : strongly_connected_components(g)) {
        if (!reach[comp.front()])
            continue;
        std::vector<int> local(n, -1);
        for (size_t idx = 0; idx < comp.size(); ++idx)
            local[comp[idx]] = static_cast<int>(idx);
        // internal edges as (local src, local trg)
        std::vector<std::pair<int, int>> edges;
        for (int u : comp)
            for (int v : succ[u])
                if (local[v] != -1)
                    edges.emplace_back(local[u], local[v]);
        if (edges.empty())
            continue;
        int N = static_cast<int>(comp.size());
        // d[k][v] = max weight of a k-edge walk from the root to v
        std::vector<std::vector<std::optional<Rational>>> d(
            N + 1, std::vector<std::optional<Rational>>(N));
        d[0][0] = Rational(0);
        for (int k = 1; k <= N; ++k)
            for (auto [u, v] : edges)
                if (d[k - 1][u]) {
                    Rational cand = *d[k - 1][u] + node_weight[comp[v]];
                    if (!d[k][v] || cand > *d[k][v])
                        d[k][v] = cand;
                }
        for (int v = 0; v < N; ++v) {
            if (!d[N][v])
                continue;
            std::optional<Rational> v_min;
            for (int k = 0; k < N; ++k) {
                if (!d[k][v])
                    continue;
                Rational cand = (*d[N][v] - *d[k][v]) / Rational(N - k);
                if (!v_min || cand < *v_min)
                    v_min = cand;
            }
            if (v_min && (!best || *v_min > *best))
                best = *v_min;
        }
    }
    if (!best)
        throw InternalError("max_mean_cycle: no cycle reachable in a total graph");
    return *best;
}

namespace detail {

template <typename W>
std::vector<W> value_iteration_rounds(const TurnBasedMPG& tb, const std::vector<W>& w,
                                      long long rounds) {
    int n = tb.node_count();
    std::vector<W> v(n, W(0)), nxt(n);
    for (long long t = 0; t < rounds; ++t) {
        for (int u = 0; u < n; ++u) {
            W best = v[tb.succ[u][0]];
            if (tb.is_max[u]) {
                for (size_t j = 1; j < tb.succ[u].size(); ++j)
                    best = std::max(best, v[tb.succ[u][j]]);
            } else {
                for (size_t j = 1; j < tb.succ[u].size(); ++j)
                    best = std::min(best, v[tb.succ[u][j]]);
            }
            nxt[u] = w[u] + best;
        }
        v.swap(nxt);
    }
    return v;
}

} // namespace detail

/// Exact value of the zero-sum mean-payoff game at every node.
///
/// Method: clear denominators so weights are integers, run value iteration
/// for ceil(4 * n^3 * W) rounds (W the largest absolute integer weight),
/// and round v_k/k to the nearest rational with denominator at most n.
/// After that many rounds the finite-horizon average is within half the
/// minimal gap between candidate values, so the rounding is exact.
inline std::vector<Rational> mpg_values(const TurnBasedMPG& tb) {
    tb.validate();
    int n = tb.node_count();
    Int scale = common_denominator(tb.weight);
    std::vector<Int> w_int(n);
    Int w_max = 1;
    for (int u = 0; u < n; ++u) {
        Rational scaled = tb.weight[u] * Rational(scale);
        w_int[u] = scaled.numerator();
        Int a = boost::multiprecision::abs(w_int[u]);
        if (a > w_max)
            w_max = a;
    }
    Int rounds_big = 4 * Int(n) * n * n * w_max;
    Int work = rounds_big * tb.edge_count();
    if (work > Int("8000000000"))
        throw ResourceLimitError("mean-payoff value iteration needs " + rounds_big.str() +
                                 " rounds; game too large for the exact backend");
    long long rounds = rounds_big.convert_to<long long>();

    std::vector<Rational> out(n);
    // Values stay within rounds * w_max; use machine integers when safe.
    Int bound = rounds_big * w_max;
    if (bound < Int(std::numeric_limits<long long>::max() / 4)) {
        std::vector<long long> w(n);
        for (int u = 0; u < n; ++u)
            w[u] = w_int[u].convert_to<long long>();
        auto v = detail::value_iteration_rounds<long long>(tb, w, rounds);
        for (int u = 0; u < n; ++u)
            out[u] = closest_with_denominator_at_most(Rational(Int(v[u]), Int(rounds)), n) /
                     Rational(scale);
    } else {
        auto v = detail::value_iteration_rounds<Int>(tb, w_int, rounds);
        for (int u = 0; u < n; ++u)
            out[u] = closest_with_denominator_at_most(Rational(v[u], Int(rounds)), n) /
                     Rational(scale);
    }
    return out;
}

/// A memoryless coalition choice per minimizer node achieving the game
/// value, found by committing one node at a time and re-solving; a
/// commitment is kept only when every node value is preserved.
inline std::vector<int> coalition_choices(const TurnBasedMPG& tb, const std::vector<Rational>& values) {
    TurnBasedMPG work = tb;
    std::vector<int> choice(tb.node_count(), -1);
    for (int u = 0; u < tb.node_count(); ++u) {
        if (tb.is_max[u])
            continue;
        if (work.succ[u].size() == 1) {
            choice[u] = work.succ[u][0];
            continue;
        }
        std::vector<int> saved = work.succ[u];
        bool committed = false;
        for (int cand : saved) {
            work.succ[u] = {cand};
            if (mpg_values(work) == values) {
                choice[u] = cand;
                committed = true;
                break;
            }
        }
        if (!committed)
            throw InternalError("no value-preserving coalition choice exists");
    }
    return choice;
}

} // namespace eqdesign
