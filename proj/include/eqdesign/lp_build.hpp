#pragma once

#include <vector>

#include "eqdesign/lp.hpp"
#include "eqdesign/secured.hpp"

namespace eqdesign {

/// Working subgraph for one LP instance: an edge list plus the states it
/// touches. Edges keep the canonical (state, profile) order of the secured
/// arena, so variable numbering is deterministic.
struct Subgraph {
    const ConcurrentGame* game = nullptr;
    std::vector<SecuredArena::Edge> edges;
    std::vector<StateIdx> nodes; // sorted, distinct

    static Subgraph from_edges(const ConcurrentGame& game, std::vector<SecuredArena::Edge> es) {
        Subgraph sg;
        sg.game = &game;
        sg.edges = std::move(es);
        for (const auto& e : sg.edges) {
            sg.nodes.push_back(e.src);
            sg.nodes.push_back(e.trg);
        }
        std::sort(sg.nodes.begin(), sg.nodes.end());
        sg.nodes.erase(std::unique(sg.nodes.begin(), sg.nodes.end()), sg.nodes.end());
        return sg;
    }
};

/// The secured edges lying inside one SCC.
inline Subgraph make_scc_subgraph(const SecuredArena& secured, const std::vector<StateIdx>& scc) {
    std::vector<bool> in(secured.game->arena.state_count(), false);
    for (StateIdx s : scc)
        in[s] = true;
    std::vector<SecuredArena::Edge> edges;
    for (const auto& e : secured.edges())
        if (in[e.src] && in[e.trg])
            edges.push_back(e);
    return Subgraph::from_edges(*secured.game, edges);
}

/// Remove the forbidden states from a subgraph and split the remainder into
/// strongly connected parts with at least one edge. Cycle combinations can
/// only be stitched into a single path inside one such part, because the
/// connectors recur forever and must avoid the forbidden states too.
inline std::vector<Subgraph> delete_and_split(const Subgraph& sg,
                                              const std::vector<bool>& forbidden) {
    const Arena& arena = sg.game->arena;
    std::vector<SecuredArena::Edge> kept;
    for (const auto& e : sg.edges)
        if (!forbidden[e.src] && !forbidden[e.trg])
            kept.push_back(e);

    EdgeGraph g(arena.state_count());
    for (const auto& e : kept)
        g.add_edge(e.src, e.trg);

    std::vector<int> comp_of(arena.state_count(), -1);
    auto comps = strongly_connected_components(g);
    for (size_t c = 0; c < comps.size(); ++c)
        for (int s : comps[c])
            comp_of[s] = static_cast<int>(c);

    std::vector<std::vector<SecuredArena::Edge>> per_comp(comps.size());
    for (const auto& e : kept)
        if (comp_of[e.src] == comp_of[e.trg])
            per_comp[comp_of[e.src]].push_back(e);

    std::vector<Subgraph> out;
    for (auto& es : per_comp)
        if (!es.empty())
            out.push_back(Subgraph::from_edges(*sg.game, std::move(es)));
    return out;
}

/// Extra utilitarian row: the dummy player's weight is the sum of all
/// players' weights shifted by the threshold.
struct UswRow {
    Rational threshold;
};

namespace detail {

/// Rows shared by every instance. Eq1 keeps one nonnegativity row per edge;
/// Eq2 forces at least one edge; Eq3 makes the shifted total non-negative
/// per player (target-vertex weight convention); Eq5 conserves flow.
inline LPInstance base_rows(const Subgraph& sg, const std::vector<Rational>& shift,
                            const UswRow* usw) {
    const ConcurrentGame& game = *sg.game;
    LPInstance lp;
    lp.num_vars = static_cast<int>(sg.edges.size());
    for (int v = 0; v < lp.num_vars; ++v)
        lp.var_edge.push_back(v);

    for (int v = 0; v < lp.num_vars; ++v) {
        LPRow r;
        r.coef = {{v, Rational(1)}};
        r.rel = Rel::Ge;
        r.rhs = Rational(0);
        lp.rows.push_back(std::move(r));
    }
    {
        LPRow r;
        for (int v = 0; v < lp.num_vars; ++v)
            r.coef.emplace_back(v, Rational(1));
        r.rel = Rel::Ge;
        r.rhs = Rational(1);
        lp.rows.push_back(std::move(r));
    }
    for (PlayerIdx i = 0; i < game.arena.player_count(); ++i) {
        LPRow r;
        for (int v = 0; v < lp.num_vars; ++v)
            r.coef.emplace_back(v, game.weight(i, sg.edges[v].trg) - shift[i]);
        r.rel = Rel::Ge;
        r.rhs = Rational(0);
        lp.rows.push_back(std::move(r));
    }
    if (usw) {
        LPRow r;
        for (int v = 0; v < lp.num_vars; ++v) {
            Rational sum;
            for (PlayerIdx i = 0; i < game.arena.player_count(); ++i)
                sum += game.weight(i, sg.edges[v].trg);
            r.coef.emplace_back(v, sum - usw->threshold);
        }
        r.rel = Rel::Ge;
        r.rhs = Rational(0);
        lp.rows.push_back(std::move(r));
    }
    for (StateIdx node : sg.nodes) {
        LPRow r;
        for (int v = 0; v < lp.num_vars; ++v) {
            if (sg.edges[v].src == node)
                r.coef.emplace_back(v, Rational(1));
            if (sg.edges[v].trg == node)
                r.coef.emplace_back(v, Rational(-1));
        }
        r.rel = Rel::Eq;
        r.rhs = Rational(0);
        lp.rows.push_back(std::move(r));
    }
    return lp;
}

/// Lower-bound visit row: edges whose target satisfies the predicate must be
/// used at least once. An empty support makes the instance infeasible.
inline void add_visit_row(LPInstance& lp, const Subgraph& sg, const std::vector<bool>& sat) {
    LPRow r;
    for (int v = 0; v < lp.num_vars; ++v)
        if (sat[sg.edges[v].trg])
            r.coef.emplace_back(v, Rational(1));
    r.rel = Rel::Ge;
    r.rhs = Rational(1);
    lp.rows.push_back(std::move(r));
}

} // namespace detail

/// Spec-free cycle search: Eq1, Eq2, Eq3 and Eq5 only. Feasibility over a
/// reachable SCC is exactly the existence of a path with pay_i >= shift_i.
inline LPInstance build_existence_lp(const Subgraph& sg, const std::vector<Rational>& shift,
                                     const UswRow* usw = nullptr) {
    return detail::base_rows(sg, shift, usw);
}

/// LP(theta_1..theta_n): base rows plus one visit row per guarantee set,
/// restricted to edges whose target lies in V(theta_r) within the SCC.
inline LPInstance build_guarantee_lp(const Subgraph& sg, const std::vector<Rational>& shift,
                                     const std::vector<std::vector<bool>>& theta_sat,
                                     const UswRow* usw = nullptr) {
    LPInstance lp = detail::base_rows(sg, shift, usw);
    for (const auto& sat : theta_sat)
        detail::add_visit_row(lp, sg, sat);
    return lp;
}

/// LP(psi_l): the guarantee rows are replaced by deleting V(psi_l) from the
/// subgraph before row construction, which keeps connector paths psi-free as
/// well. The result is one instance per stitchable part; feasibility of any
/// part certifies a path visiting V(psi_l) only finitely often.
inline std::vector<std::pair<Subgraph, LPInstance>>
build_assumption_lp(const Subgraph& scc, const std::vector<Rational>& shift,
                    const std::vector<bool>& psi_sat, const UswRow* usw = nullptr) {
    std::vector<std::pair<Subgraph, LPInstance>> out;
    for (const Subgraph& part : delete_and_split(scc, psi_sat))
        out.emplace_back(part, build_existence_lp(part, shift, usw));
    return out;
}

/// LP' for one designated guarantee theta_r: delete V(theta_r), then require
/// every assumption set visited at least once (the caller iterates r,
/// realizing the existential choice).
inline std::vector<std::pair<Subgraph, LPInstance>>
build_negspec_lp(const Subgraph& scc, const std::vector<Rational>& shift,
                 const std::vector<std::vector<bool>>& psi_sat,
                 const std::vector<bool>& theta_r_sat, const UswRow* usw = nullptr) {
    std::vector<std::pair<Subgraph, LPInstance>> out;
    for (const Subgraph& part : delete_and_split(scc, theta_r_sat)) {
        LPInstance lp = build_existence_lp(part, shift, usw);
        for (const auto& sat : psi_sat)
            detail::add_visit_row(lp, part, sat);
        out.emplace_back(part, std::move(lp));
    }
    return out;
}

} // namespace eqdesign
