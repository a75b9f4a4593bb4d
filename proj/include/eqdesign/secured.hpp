#pragma once

#include <vector>

#include "eqdesign/graph.hpp"
#include "eqdesign/punishment.hpp"

namespace eqdesign {

/// The subgame G[z] of z-secure configurations for a punishment vector z:
/// exactly the configurations every player finds z-secure, over states whose
/// punishment values fit under z (the initial state is exempt from the state
/// test but not the configuration test), pruned iteratively so the kept
/// transition structure is closed. Its paths are the candidate NE paths.
struct SecuredArena {
    const ConcurrentGame* game = nullptr;
    std::vector<Rational> z;                   // per player
    std::vector<bool> state_kept;
    std::vector<std::vector<bool>> config_kept; // [state][profile]

    struct Edge {
        StateIdx src;
        int profile;
        StateIdx trg;
    };

    /// Kept configurations in canonical order (state, then profile).
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        const Arena& arena = game->arena;
        for (StateIdx s = 0; s < arena.state_count(); ++s) {
            if (!state_kept[s])
                continue;
            for (int p = 0; p < arena.profile_count(s); ++p)
                if (config_kept[s][p])
                    out.push_back({s, p, arena.successor(s, p)});
        }
        return out;
    }

    bool has_initial() const { return state_kept[game->arena.initial]; }

    bool empty() const {
        for (bool b : state_kept)
            if (b)
                return false;
        return true;
    }
};

inline SecuredArena build_secured(const ConcurrentGame& game, const PunishmentTable& table,
                                  const std::vector<Rational>& z) {
    const Arena& arena = game.arena;
    SecuredArena out;
    out.game = &game;
    out.z = z;
    out.state_kept.assign(arena.state_count(), true);
    out.config_kept.resize(arena.state_count());

    // Non-initial states must satisfy pun_i(s) <= z_i for every player; a
    // state above the bar can never be entered on a secure path.
    for (StateIdx s = 0; s < arena.state_count(); ++s) {
        if (s == arena.initial)
            continue;
        for (PlayerIdx i = 0; i < arena.player_count(); ++i)
            if (table.value(i, s) > z[i]) {
                out.state_kept[s] = false;
                break;
            }
    }
    for (StateIdx s = 0; s < arena.state_count(); ++s) {
        out.config_kept[s].assign(arena.profile_count(s), false);
        if (!out.state_kept[s])
            continue;
        for (int p = 0; p < arena.profile_count(s); ++p) {
            bool secure = true;
            for (PlayerIdx i = 0; i < arena.player_count() && secure; ++i)
                secure = is_z_secure(game, table, s, p, i, z[i]);
            out.config_kept[s][p] = secure;
        }
    }

    // Prune to a fixed point: drop configurations leading out of the kept
    // set, then states left without an outgoing configuration.
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateIdx s = 0; s < arena.state_count(); ++s) {
            if (!out.state_kept[s])
                continue;
            bool any = false;
            for (int p = 0; p < arena.profile_count(s); ++p) {
                if (!out.config_kept[s][p])
                    continue;
                if (!out.state_kept[arena.successor(s, p)]) {
                    out.config_kept[s][p] = false;
                    changed = true;
                } else {
                    any = true;
                }
            }
            if (!any) {
                out.state_kept[s] = false;
                std::fill(out.config_kept[s].begin(), out.config_kept[s].end(), false);
                changed = true;
            }
        }
    }
    return out;
}

/// Strongly connected components of the kept-configuration graph, filtered
/// to those reachable from the initial state and containing at least one
/// edge, ordered by smallest state id.
inline std::vector<std::vector<StateIdx>> scc_reachable(const SecuredArena& secured) {
    const Arena& arena = secured.game->arena;
    if (!secured.has_initial())
        return {};
    EdgeGraph g(arena.state_count());
    for (const auto& e : secured.edges())
        g.add_edge(e.src, e.trg);
    std::vector<bool> reach = reachable_from(g, arena.initial);

    std::vector<std::vector<StateIdx>> out;
    for (auto& comp : strongly_connected_components(g)) {
        if (!reach[comp.front()])
            continue;
        bool has_edge = false;
        std::vector<bool> in_comp(arena.state_count(), false);
        for (StateIdx s : comp)
            in_comp[s] = true;
        for (StateIdx s : comp) {
            for (int e : g.out[s])
                if (in_comp[g.edge_trg[e]]) {
                    has_edge = true;
                    break;
                }
            if (has_edge)
                break;
        }
        if (has_edge)
            out.push_back(std::move(comp));
    }
    return out;
}

} // namespace eqdesign
