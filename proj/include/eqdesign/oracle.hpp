#pragma once

#include <random>
#include <vector>

#include "eqdesign/solver.hpp"

namespace eqdesign {
namespace oracle {

/// Hard limits for the brute-force ground-truth implementations. These are
/// not a performance path; anything beyond the guard is refused.
struct SizeGuard {
    int max_states = 6;
    int max_players = 3;
    int max_actions = 3;
    int max_edges = 24;
    long long max_budget = 3;
    long long max_coalition_maps = 4096;
    size_t max_cycles = 5000;
    size_t max_fm_rows = 20000;

    void check_game(const ConcurrentGame& g) const {
        if (g.arena.state_count() > max_states || g.arena.player_count() > max_players)
            throw ResourceLimitError("oracle size guard exceeded: game too large");
        for (StateIdx s = 0; s < g.arena.state_count(); ++s)
            for (PlayerIdx i = 0; i < g.arena.player_count(); ++i)
                if (g.arena.action_count(s, i) > max_actions)
                    throw ResourceLimitError("oracle size guard exceeded: too many actions");
    }
    void check_budget(long long beta) const {
        if (beta > max_budget)
            throw ResourceLimitError("oracle size guard exceeded: budget too large");
    }
    void check_edges(size_t n) const {
        if (n > static_cast<size_t>(max_edges))
            throw ResourceLimitError("oracle size guard exceeded: too many edges");
    }
};

namespace detail {

/// All memoryless coalition maps against player i, one partial profile per
/// state, enumerated as a mixed-radix counter.
inline std::vector<std::vector<int>> coalition_maps(const ConcurrentGame& g, PlayerIdx i,
                                                    const SizeGuard& guard) {
    const Arena& arena = g.arena;
    long long total = 1;
    std::vector<int> radix(arena.state_count());
    for (StateIdx s = 0; s < arena.state_count(); ++s) {
        radix[s] = partial_profile_count(arena, s, i);
        total *= radix[s];
        if (total > guard.max_coalition_maps)
            throw ResourceLimitError("oracle size guard exceeded: too many coalition maps");
    }
    std::vector<std::vector<int>> maps;
    std::vector<int> cur(arena.state_count(), 0);
    for (long long t = 0; t < total; ++t) {
        maps.push_back(cur);
        for (StateIdx s = 0; s < arena.state_count(); ++s) {
            if (++cur[s] < radix[s])
                break;
            cur[s] = 0;
        }
    }
    return maps;
}

} // namespace detail

/// Punishment values by coalition-strategy enumeration: the minimum over
/// all memoryless coalition maps of the best mean cycle player i can reach,
/// under the commit-first convention. Ground truth for punishment_table.
inline std::vector<Rational> brute_pun_all(const ConcurrentGame& g, PlayerIdx i,
                                           const SizeGuard& guard = {}) {
    guard.check_game(g);
    const Arena& arena = g.arena;
    std::vector<std::optional<Rational>> best(arena.state_count());
    for (const auto& map : detail::coalition_maps(g, i, guard)) {
        std::vector<std::vector<int>> succ(arena.state_count());
        for (StateIdx s = 0; s < arena.state_count(); ++s)
            for (ActionIdx a = 0; a < arena.action_count(s, i); ++a)
                succ[s].push_back(arena.successor(s, combine_partial(arena, s, i, map[s], a)));
        for (StateIdx s = 0; s < arena.state_count(); ++s) {
            Rational v = max_mean_cycle(succ, g.weights[i], s);
            if (!best[s] || v < *best[s])
                best[s] = v;
        }
    }
    std::vector<Rational> out;
    for (auto& b : best)
        out.push_back(*b);
    return out;
}

inline Rational brute_pun(const ConcurrentGame& g, PlayerIdx i, StateIdx s,
                          const SizeGuard& guard = {}) {
    return brute_pun_all(g, i, guard)[s];
}

namespace detail {

/// All simple cycles of an edge multigraph, as edge-id lists. Each cycle is
/// rooted at its smallest node, found by a depth-first walk that never
/// descends below the root.
inline std::vector<std::vector<int>> simple_cycles(int num_nodes,
                                                   const std::vector<std::pair<int, int>>& edges,
                                                   const SizeGuard& guard) {
    std::vector<std::vector<int>> out_edges(num_nodes);
    for (size_t e = 0; e < edges.size(); ++e)
        out_edges[edges[e].first].push_back(static_cast<int>(e));

    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<bool> on_path(num_nodes, false);

    struct Walker {
        int root;
        const std::vector<std::vector<int>>& out_edges;
        const std::vector<std::pair<int, int>>& edges;
        std::vector<std::vector<int>>& cycles;
        std::vector<int>& path;
        std::vector<bool>& on_path;
        const SizeGuard& guard;

        void walk(int v) {
            for (int e : out_edges[v]) {
                int t = edges[e].second;
                if (t < root)
                    continue;
                if (t == root) {
                    path.push_back(e);
                    cycles.push_back(path);
                    if (cycles.size() > guard.max_cycles)
                        throw ResourceLimitError("oracle size guard exceeded: too many cycles");
                    path.pop_back();
                } else if (!on_path[t]) {
                    on_path[t] = true;
                    path.push_back(e);
                    walk(t);
                    path.pop_back();
                    on_path[t] = false;
                }
            }
        }
    };
    for (int root = 0; root < num_nodes; ++root) {
        Walker w{root, out_edges, edges, cycles, path, on_path, guard};
        on_path[root] = true;
        w.walk(root);
        on_path[root] = false;
    }
    return cycles;
}

struct FMRow {
    std::vector<Rational> coef;
    Rational rhs; // coef . x >= rhs
};

inline void normalize_row(FMRow& r) {
    Rational biggest;
    for (const auto& c : r.coef)
        biggest = max(biggest, c.abs());
    biggest = max(biggest, r.rhs.abs());
    if (biggest.is_zero())
        return;
    for (auto& c : r.coef)
        c /= biggest;
    r.rhs /= biggest;
}

/// Fourier–Motzkin elimination over rationals: feasibility of a system of
/// weak linear inequalities. Shares no pivoting logic with the simplex.
inline bool fourier_motzkin_feasible(std::vector<FMRow> rows, int num_vars,
                                     const SizeGuard& guard) {
    for (int v = num_vars - 1; v >= 0; --v) {
        std::vector<FMRow> lower, upper, rest;
        for (auto& r : rows) {
            if (r.coef[v] > Rational(0))
                lower.push_back(std::move(r));
            else if (r.coef[v] < Rational(0))
                upper.push_back(std::move(r));
            else
                rest.push_back(std::move(r));
        }
        for (const auto& lo : lower)
            for (const auto& up : upper) {
                FMRow combined;
                combined.coef.assign(num_vars, Rational(0));
                Rational a = lo.coef[v];        // > 0
                Rational b = -up.coef[v];       // > 0
                for (int j = 0; j < num_vars; ++j)
                    combined.coef[j] = b * lo.coef[j] + a * up.coef[j];
                combined.rhs = b * lo.rhs + a * up.rhs;
                normalize_row(combined);
                rest.push_back(std::move(combined));
                if (rest.size() > guard.max_fm_rows)
                    throw ResourceLimitError("oracle size guard exceeded: FM blow-up");
            }
        rows = std::move(rest);
    }
    for (const auto& r : rows)
        if (r.rhs > Rational(0))
            return false;
    return true;
}

} // namespace detail

/// Decide, by simple-cycle enumeration plus Fourier–Motzkin elimination,
/// whether some nonnegative not-all-zero combination of the subgraph's
/// cycles has a nonnegative shifted total for every player (and the
/// optional utilitarian row) while meeting every visit lower bound.
/// Independent of the simplex path that decides the same question.
inline bool brute_cycle_feasible(const ConcurrentGame& game,
                                 const std::vector<SecuredArena::Edge>& edges,
                                 const std::vector<Rational>& shift,
                                 const std::vector<std::vector<bool>>& visit_sets,
                                 const std::optional<Rational>& usw_threshold = std::nullopt,
                                 const SizeGuard& guard = {}) {
    guard.check_edges(edges.size());
    const Arena& arena = game.arena;
    std::vector<std::pair<int, int>> raw;
    for (const auto& e : edges)
        raw.emplace_back(e.src, e.trg);
    auto cycles = detail::simple_cycles(arena.state_count(), raw, guard);
    if (cycles.empty())
        return false;
    int k = static_cast<int>(cycles.size());

    std::vector<detail::FMRow> rows;
    auto fresh = [&] {
        detail::FMRow r;
        r.coef.assign(k, Rational(0));
        return r;
    };
    for (int c = 0; c < k; ++c) { // lambda_c >= 0
        auto r = fresh();
        r.coef[c] = Rational(1);
        rows.push_back(std::move(r));
    }
    {
        auto r = fresh(); // at least one edge in total
        for (int c = 0; c < k; ++c)
            r.coef[c] = Rational(static_cast<long long>(cycles[c].size()));
        r.rhs = Rational(1);
        rows.push_back(std::move(r));
    }
    for (PlayerIdx i = 0; i < arena.player_count(); ++i) {
        auto r = fresh();
        for (int c = 0; c < k; ++c) {
            Rational sum;
            for (int e : cycles[c])
                sum += game.weight(i, edges[e].trg) - shift[i];
            r.coef[c] = sum;
        }
        rows.push_back(std::move(r));
    }
    if (usw_threshold) {
        auto r = fresh();
        for (int c = 0; c < k; ++c) {
            Rational sum;
            for (int e : cycles[c]) {
                for (PlayerIdx i = 0; i < arena.player_count(); ++i)
                    sum += game.weight(i, edges[e].trg);
                sum -= *usw_threshold;
            }
            r.coef[c] = sum;
        }
        rows.push_back(std::move(r));
    }
    for (const auto& visit : visit_sets) {
        auto r = fresh();
        for (int c = 0; c < k; ++c) {
            long long hits = 0;
            for (int e : cycles[c])
                if (visit[edges[e].trg])
                    ++hits;
            r.coef[c] = Rational(hits);
        }
        r.rhs = Rational(1);
        rows.push_back(std::move(r));
    }
    return detail::fourier_motzkin_feasible(std::move(rows), k, guard);
}

namespace detail {

struct OracleArena {
    std::vector<SecuredArena::Edge> edges;
    bool has_initial = false;
};

/// The oracle's own z-secure filter, written directly against brute
/// punishment values: keep configurations whose every unilateral deviation
/// lands under z, drop non-initial states above z, close off iteratively.
inline OracleArena oracle_secured(const ConcurrentGame& g,
                                  const std::vector<std::vector<Rational>>& pun,
                                  const std::vector<Rational>& z) {
    const Arena& arena = g.arena;
    std::vector<bool> state_ok(arena.state_count(), true);
    for (StateIdx s = 0; s < arena.state_count(); ++s) {
        if (s == arena.initial)
            continue;
        for (PlayerIdx i = 0; i < arena.player_count(); ++i)
            if (pun[i][s] > z[i])
                state_ok[s] = false;
    }
    std::vector<std::vector<bool>> cfg(arena.state_count());
    for (StateIdx s = 0; s < arena.state_count(); ++s) {
        cfg[s].assign(arena.profile_count(s), false);
        if (!state_ok[s])
            continue;
        for (int p = 0; p < arena.profile_count(s); ++p) {
            bool secure = true;
            for (PlayerIdx i = 0; i < arena.player_count() && secure; ++i)
                for (ActionIdx a = 0; a < arena.action_count(s, i) && secure; ++a) {
                    StateIdx t = arena.successor(s, arena.profile_with_action(s, p, i, a));
                    if (pun[i][t] > z[i])
                        secure = false;
                }
            cfg[s][p] = secure;
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateIdx s = 0; s < arena.state_count(); ++s) {
            if (!state_ok[s])
                continue;
            bool any = false;
            for (int p = 0; p < arena.profile_count(s); ++p) {
                if (!cfg[s][p])
                    continue;
                if (!state_ok[arena.successor(s, p)]) {
                    cfg[s][p] = false;
                    changed = true;
                } else {
                    any = true;
                }
            }
            if (!any && state_ok[s]) {
                state_ok[s] = false;
                changed = true;
            }
        }
    }
    OracleArena out;
    out.has_initial = state_ok[arena.initial];
    if (!out.has_initial)
        return out;
    for (StateIdx s = 0; s < arena.state_count(); ++s)
        for (int p = 0; p < arena.profile_count(s); ++p)
            if (state_ok[s] && cfg[s][p])
                out.edges.push_back({s, p, arena.successor(s, p)});
    return out;
}

/// Reachable strongly connected pieces of an oracle edge set, each as its
/// own edge list.
inline std::vector<std::vector<SecuredArena::Edge>>
oracle_components(const ConcurrentGame& g, const std::vector<SecuredArena::Edge>& edges) {
    EdgeGraph graph(g.arena.state_count());
    for (const auto& e : edges)
        graph.add_edge(e.src, e.trg);
    auto reach = reachable_from(graph, g.arena.initial);
    std::vector<int> comp_of(g.arena.state_count(), -1);
    auto comps = strongly_connected_components(graph);
    for (size_t c = 0; c < comps.size(); ++c)
        for (int s : comps[c])
            comp_of[s] = static_cast<int>(c);
    std::vector<std::vector<SecuredArena::Edge>> out(comps.size());
    for (const auto& e : edges)
        if (reach[e.src] && comp_of[e.src] == comp_of[e.trg])
            out[comp_of[e.src]].push_back(e);
    std::vector<std::vector<SecuredArena::Edge>> nonempty;
    for (auto& es : out)
        if (!es.empty())
            nonempty.push_back(std::move(es));
    return nonempty;
}

inline std::vector<SecuredArena::Edge>
without_states(const std::vector<SecuredArena::Edge>& edges, const std::vector<bool>& forbidden) {
    std::vector<SecuredArena::Edge> out;
    for (const auto& e : edges)
        if (!forbidden[e.src] && !forbidden[e.trg])
            out.push_back(e);
    return out;
}

/// Strongly connected pieces of an already-reachable edge set. No
/// reachability filter: the enclosing component is reachable, and the reach
/// prefix may cross deleted states.
inline std::vector<std::vector<SecuredArena::Edge>>
oracle_split(const ConcurrentGame& g, const std::vector<SecuredArena::Edge>& edges) {
    EdgeGraph graph(g.arena.state_count());
    for (const auto& e : edges)
        graph.add_edge(e.src, e.trg);
    std::vector<int> comp_of(g.arena.state_count(), -1);
    auto comps = strongly_connected_components(graph);
    for (size_t c = 0; c < comps.size(); ++c)
        for (int s : comps[c])
            comp_of[s] = static_cast<int>(c);
    std::vector<std::vector<SecuredArena::Edge>> out(comps.size());
    for (const auto& e : edges)
        if (comp_of[e.src] == comp_of[e.trg])
            out[comp_of[e.src]].push_back(e);
    std::vector<std::vector<SecuredArena::Edge>> nonempty;
    for (auto& es : out)
        if (!es.empty())
            nonempty.push_back(std::move(es));
    return nonempty;
}

} // namespace detail

/// Exhaustive decision of the weak / strong implementation question on a
/// tiny instance, composed from brute_pun and brute_cycle_feasible only.
inline bool brute_check(const ConcurrentGame& game, const GR1Spec& spec, long long beta, Mode mode,
                        const std::optional<std::vector<Slot>>& support = std::nullopt,
                        const SizeGuard& guard = {}) {
    guard.check_game(game);
    guard.check_budget(beta);

    std::vector<std::vector<bool>> psi, theta;
    for (const Formula& f : spec.assumptions)
        psi.push_back(sat_states(game, f));
    for (const Formula& f : spec.guarantees)
        theta.push_back(sat_states(game, f));

    std::vector<Slot> slots = support ? *support : all_slots(game);
    SchemeEnumerator en(slots, beta, game.arena.player_count(), game.arena.state_count());
    while (auto k = en.next()) {
        ConcurrentGame g = apply_scheme(game, *k);
        std::vector<std::vector<Rational>> pun;
        for (PlayerIdx i = 0; i < g.arena.player_count(); ++i)
            pun.push_back(brute_pun_all(g, i, guard));
        std::vector<std::vector<Rational>> value_sets;
        for (auto& row : pun) {
            auto vs = row;
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            value_sets.push_back(std::move(vs));
        }
        std::vector<std::vector<Rational>> zs;
        std::vector<size_t> idx(value_sets.size(), 0);
        while (true) {
            std::vector<Rational> z;
            for (size_t i = 0; i < value_sets.size(); ++i)
                z.push_back(value_sets[i][idx[i]]);
            zs.push_back(std::move(z));
            size_t i = value_sets.size();
            while (i-- > 0) {
                if (++idx[i] < value_sets[i].size())
                    break;
                idx[i] = 0;
                if (i == 0)
                    goto all_z_done;
            }
        }
    all_z_done:;

        auto sat_via = [&](const std::vector<Rational>& z) {
            auto arena = detail::oracle_secured(g, pun, z);
            if (!arena.has_initial)
                return false;
            for (const auto& comp : detail::oracle_components(g, arena.edges)) {
                if (brute_cycle_feasible(g, comp, z, theta, std::nullopt, guard))
                    return true;
                for (const auto& p : psi)
                    for (const auto& part : detail::oracle_split(g, detail::without_states(comp, p)))
                        if (brute_cycle_feasible(g, part, z, {}, std::nullopt, guard))
                            return true;
            }
            return false;
        };
        auto any_via = [&](const std::vector<Rational>& z) {
            auto arena = detail::oracle_secured(g, pun, z);
            if (!arena.has_initial)
                return false;
            for (const auto& comp : detail::oracle_components(g, arena.edges))
                if (brute_cycle_feasible(g, comp, z, {}, std::nullopt, guard))
                    return true;
            return false;
        };
        auto viol_via = [&](const std::vector<Rational>& z) {
            auto arena = detail::oracle_secured(g, pun, z);
            if (!arena.has_initial)
                return false;
            for (const auto& comp : detail::oracle_components(g, arena.edges))
                for (const auto& th : theta)
                    for (const auto& part : detail::oracle_split(g, detail::without_states(comp, th)))
                        if (brute_cycle_feasible(g, part, z, psi, std::nullopt, guard))
                            return true;
            return false;
        };

        if (mode == Mode::Weak) {
            for (const auto& z : zs)
                if (sat_via(z))
                    return true;
        } else {
            bool some = false;
            for (const auto& z : zs)
                if (any_via(z)) {
                    some = true;
                    break;
                }
            if (!some)
                continue;
            bool bad = false;
            for (const auto& z : zs)
                if (viol_via(z)) {
                    bad = true;
                    break;
                }
            if (!bad)
                return true;
        }
    }
    return false;
}

/// Seeded generator of small random games: uniform transition tables,
/// integer weights in a small range, Bernoulli labels.
struct RandomGameParams {
    int states = 4;
    int players = 2;
    int max_actions = 2;
    int weight_min = -3;
    int weight_max = 3;
    std::vector<std::string> atoms = {"p", "q"};
    double label_density = 0.4;
};

inline ConcurrentGame random_game(std::mt19937_64& rng, const RandomGameParams& params) {
    ConcurrentGame g;
    Arena& arena = g.arena;
    for (int i = 0; i < params.players; ++i)
        arena.players.push_back("p" + std::to_string(i));
    for (int s = 0; s < params.states; ++s)
        arena.states.push_back("s" + std::to_string(s));
    arena.atoms = params.atoms;
    arena.initial = 0;

    std::uniform_int_distribution<int> action_count(1, params.max_actions);
    std::uniform_int_distribution<int> state_pick(0, params.states - 1);
    std::uniform_int_distribution<int> weight_pick(params.weight_min, params.weight_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    arena.actions.resize(params.states);
    arena.labels.resize(params.states);
    arena.transitions.resize(params.states);
    for (int s = 0; s < params.states; ++s) {
        arena.actions[s].resize(params.players);
        for (int i = 0; i < params.players; ++i) {
            int n = action_count(rng);
            for (int a = 0; a < n; ++a)
                arena.actions[s][i].push_back("a" + std::to_string(a));
        }
        arena.labels[s].resize(arena.atom_count());
        for (int t = 0; t < arena.atom_count(); ++t)
            arena.labels[s][t] = unit(rng) < params.label_density;
        int profiles = arena.profile_count(s);
        for (int p = 0; p < profiles; ++p)
            arena.transitions[s].push_back(state_pick(rng));
    }
    g.weights.resize(params.players);
    for (int i = 0; i < params.players; ++i)
        for (int s = 0; s < params.states; ++s)
            g.weights[i].push_back(Rational(weight_pick(rng)));
    g.validate();
    return g;
}

/// Random GR(1) spec with at most one assumption and one guarantee, each an
/// atom or a negated atom over the game's alphabet.
inline GR1Spec random_small_spec(std::mt19937_64& rng, const std::vector<std::string>& atoms) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(atoms.size()) - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    auto literal = [&] {
        Formula f = Formula::atom(atoms[pick(rng)]);
        return coin(rng) ? Formula::negation(f) : f;
    };
    GR1Spec spec;
    if (coin(rng))
        spec.assumptions.push_back(literal());
    if (coin(rng))
        spec.guarantees.push_back(literal());
    return spec;
}

} // namespace oracle
} // namespace eqdesign
