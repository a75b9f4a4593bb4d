#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "eqdesign/errors.hpp"

namespace eqdesign {

/// Directed multigraph as parallel edge arrays; nodes index an external list.
struct EdgeGraph {
    int num_nodes = 0;
    std::vector<int> edge_src;
    std::vector<int> edge_trg;
    std::vector<std::vector<int>> out; // node -> edge ids, in insertion order

    explicit EdgeGraph(int nodes = 0) : num_nodes(nodes), out(nodes) {}

    int add_edge(int src, int trg) {
        int id = static_cast<int>(edge_src.size());
        edge_src.push_back(src);
        edge_trg.push_back(trg);
        out[src].push_back(id);
        return id;
    }

    int edge_count() const { return static_cast<int>(edge_src.size()); }
};

inline std::vector<bool> reachable_from(const EdgeGraph& g, int source) {
    std::vector<bool> seen(g.num_nodes, false);
    std::vector<int> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : g.out[v])
            if (!seen[g.edge_trg[e]]) {
                seen[g.edge_trg[e]] = true;
                stack.push_back(g.edge_trg[e]);
            }
    }
    return seen;
}

/// BFS path as a sequence of edge ids, or nullopt when unreachable.
/// Empty sequence when from == to.
inline std::optional<std::vector<int>> shortest_edge_path(const EdgeGraph& g, int from, int to) {
    std::vector<int> via_edge(g.num_nodes, -1);
    std::vector<bool> seen(g.num_nodes, false);
    std::vector<int> queue{from};
    seen[from] = true;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        if (v == to)
            break;
        for (int e : g.out[v]) {
            int t = g.edge_trg[e];
            if (!seen[t]) {
                seen[t] = true;
                via_edge[t] = e;
                queue.push_back(t);
            }
        }
    }
    if (!seen[to])
        return std::nullopt;
    std::vector<int> path;
    for (int v = to; v != from; v = g.edge_src[via_edge[v]])
        path.push_back(via_edge[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

/// Tarjan's algorithm, iterative. Components are returned sorted by their
/// smallest node id, nodes within a component ascending, so the result is
/// independent of discovery order.
inline std::vector<std::vector<int>> strongly_connected_components(const EdgeGraph& g) {
    int n = g.num_nodes;
    std::vector<int> index(n, -1), lowlink(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> components;
    int next_index = 0;

    struct Frame {
        int v;
        size_t edge_pos;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1)
            continue;
        std::vector<Frame> call_stack{{root, 0}};
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call_stack.empty()) {
            Frame& f = call_stack.back();
            if (f.edge_pos < g.out[f.v].size()) {
                int e = g.out[f.v][f.edge_pos++];
                int w = g.edge_trg[e];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call_stack.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            } else {
                int v = f.v;
                call_stack.pop_back();
                if (!call_stack.empty())
                    lowlink[call_stack.back().v] = std::min(lowlink[call_stack.back().v], lowlink[v]);
                if (lowlink[v] == index[v]) {
                    std::vector<int> component;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component.push_back(w);
                        if (w == v)
                            break;
                    }
                    std::sort(component.begin(), component.end());
                    components.push_back(std::move(component));
                }
            }
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

} // namespace eqdesign
