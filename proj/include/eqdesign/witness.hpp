#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "eqdesign/lp_build.hpp"

namespace eqdesign {

struct WitnessCycle {
    std::vector<Config> configs; // simple cycle, first config is the anchor
    Int multiplicity;            // >= 1
};

/// Certificate path in schedule form: a reach prefix from the initial state
/// into the witness component, simple cycles with multiplicities, and
/// connector paths between consecutive cycles. Round t of the implied
/// infinite word repeats each cycle t times its multiplicity, so the
/// connector contribution vanishes and the lim inf of the running averages
/// equals the multiplicity-weighted cycle average for every player.
struct WitnessSchedule {
    std::vector<Config> reach_prefix;             // initial -> anchor of cycle 0
    std::vector<WitnessCycle> cycles;             // non-empty
    std::vector<std::vector<Config>> connectors;  // cyclic, anchor k -> anchor k+1; empty if one cycle
    std::vector<Rational> payoffs;                // per player, exact

    /// States visited infinitely often by the schedule.
    std::vector<StateIdx> recurring_states() const {
        std::vector<StateIdx> out;
        for (const auto& c : cycles)
            for (const auto& cfg : c.configs)
                out.push_back(cfg.state);
        for (const auto& conn : connectors)
            for (const auto& cfg : conn)
                out.push_back(cfg.state);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<Config> all_configs() const {
        std::vector<Config> out = reach_prefix;
        for (const auto& c : cycles)
            out.insert(out.end(), c.configs.begin(), c.configs.end());
        for (const auto& conn : connectors)
            out.insert(out.end(), conn.begin(), conn.end());
        return out;
    }

    /// Member t of the replayed lasso family: rounds 1..t-1 as prefix and
    /// round t as the lasso cycle. Every member shares the recurring state
    /// set, and the payoffs converge to the schedule payoffs as t grows.
    Lasso realize(const Arena& arena, long long round, long long max_configs = 1000000) const {
        auto round_sequence = [&](long long t) {
            std::vector<Config> seq;
            for (size_t k = 0; k < cycles.size(); ++k) {
                Int reps_big = cycles[k].multiplicity * t;
                long long reps = reps_big.convert_to<long long>();
                if (static_cast<long long>(seq.size()) +
                        reps * static_cast<long long>(cycles[k].configs.size()) >
                    max_configs)
                    throw ResourceLimitError("witness unrolling exceeds the configured size cap");
                for (long long r = 0; r < reps; ++r)
                    seq.insert(seq.end(), cycles[k].configs.begin(), cycles[k].configs.end());
                if (cycles.size() > 1)
                    seq.insert(seq.end(), connectors[k].begin(), connectors[k].end());
            }
            return seq;
        };
        std::vector<Config> prefix = reach_prefix;
        for (long long t = 1; t < round; ++t) {
            auto seq = round_sequence(t);
            prefix.insert(prefix.end(), seq.begin(), seq.end());
        }
        return Lasso(arena, std::move(prefix), round_sequence(round));
    }
};

namespace detail {

inline EdgeGraph subgraph_edge_graph(const Subgraph& sg) {
    EdgeGraph g(sg.game->arena.state_count());
    for (const auto& e : sg.edges)
        g.add_edge(e.src, e.trg);
    return g;
}

inline std::vector<Config> edge_path_to_configs(const Subgraph& sg, const std::vector<int>& edges) {
    std::vector<Config> out;
    for (int e : edges)
        out.push_back({sg.edges[e].src, sg.edges[e].profile});
    return out;
}

} // namespace detail

/// Decompose a feasible point into a witness schedule. The point is scaled
/// to an integral circulation, peeled into simple cycles, and the cycles are
/// joined by shortest connector paths inside the instance subgraph; the
/// reach prefix runs through the secured arena at large.
inline WitnessSchedule extract_witness(const ConcurrentGame& game, const SecuredArena& secured,
                                       const Subgraph& sg, const FeasiblePoint& point) {
    WitnessSchedule w;

    Int scale = common_denominator(point.x);
    std::vector<Int> flow(point.x.size());
    for (size_t e = 0; e < point.x.size(); ++e)
        flow[e] = (point.x[e] * Rational(scale)).numerator();

    // Peel simple cycles off the integral circulation. Flow conservation
    // guarantees a positive out-edge at every node entered with positive
    // flow, so each walk closes a loop.
    std::map<std::vector<Config>, Int> cycle_mult;
    while (true) {
        int start_edge = -1;
        for (size_t e = 0; e < flow.size(); ++e)
            if (flow[e] > 0) {
                start_edge = static_cast<int>(e);
                break;
            }
        if (start_edge == -1)
            break;
        std::vector<int> path_edges;
        std::vector<int> pos_of_state(game.arena.state_count(), -1);
        int v = sg.edges[start_edge].src;
        pos_of_state[v] = 0;
        while (true) {
            int chosen = -1;
            for (size_t e = 0; e < flow.size(); ++e)
                if (flow[e] > 0 && sg.edges[e].src == v) {
                    chosen = static_cast<int>(e);
                    break;
                }
            if (chosen == -1)
                throw InternalError("flow decomposition lost conservation");
            path_edges.push_back(chosen);
            v = sg.edges[chosen].trg;
            if (pos_of_state[v] != -1)
                break;
            pos_of_state[v] = static_cast<int>(path_edges.size());
        }
        int loop_begin = pos_of_state[v];
        std::vector<int> loop(path_edges.begin() + loop_begin, path_edges.end());
        Int m = flow[loop[0]];
        for (int e : loop)
            m = std::min(m, flow[e]);
        for (int e : loop)
            flow[e] -= m;
        std::vector<Config> configs = detail::edge_path_to_configs(sg, loop);
        // canonical rotation: smallest configuration first
        size_t best = 0;
        for (size_t k = 1; k < configs.size(); ++k)
            if (configs[k] < configs[best])
                best = k;
        std::rotate(configs.begin(), configs.begin() + best, configs.end());
        cycle_mult[configs] += m;
    }
    if (cycle_mult.empty())
        throw InternalError("feasible point decomposed into no cycles");
    for (auto& [configs, mult] : cycle_mult)
        w.cycles.push_back({configs, mult});

    if (w.cycles.size() > 1) {
        EdgeGraph g = detail::subgraph_edge_graph(sg);
        for (size_t k = 0; k < w.cycles.size(); ++k) {
            StateIdx from = w.cycles[k].configs.front().state;
            StateIdx to = w.cycles[(k + 1) % w.cycles.size()].configs.front().state;
            auto path = shortest_edge_path(g, from, to);
            if (!path)
                throw InternalError("witness cycles are not connectable inside the subgraph");
            w.connectors.push_back(detail::edge_path_to_configs(sg, *path));
        }
    }

    {
        const Arena& arena = game.arena;
        EdgeGraph g(arena.state_count());
        auto secured_edges = secured.edges();
        for (const auto& e : secured_edges)
            g.add_edge(e.src, e.trg);
        auto path = shortest_edge_path(g, arena.initial, w.cycles.front().configs.front().state);
        if (!path)
            throw InternalError("witness component unreachable from the initial state");
        for (int e : *path)
            w.reach_prefix.push_back({secured_edges[e].src, secured_edges[e].profile});
    }

    Int total_len = 0;
    for (const auto& c : w.cycles)
        total_len += c.multiplicity * static_cast<long long>(c.configs.size());
    for (PlayerIdx i = 0; i < game.arena.player_count(); ++i) {
        Rational sum;
        for (const auto& c : w.cycles) {
            Rational cyc;
            for (const auto& cfg : c.configs)
                cyc += game.weight(i, cfg.state);
            sum += cyc * Rational(c.multiplicity);
        }
        w.payoffs.push_back(sum / Rational(total_len));
    }
    return w;
}

inline Rational usw_value(const std::vector<Rational>& payoffs) {
    Rational sum;
    for (const auto& p : payoffs)
        sum += p;
    return sum;
}

inline Rational esw_value(const std::vector<Rational>& payoffs) {
    Rational m = payoffs.front();
    for (const auto& p : payoffs)
        m = min(m, p);
    return m;
}

} // namespace eqdesign
