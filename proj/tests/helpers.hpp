#pragma once

// Shared fixtures and independent brute-force oracles for the tests. The
// oracles deliberately avoid the library's incremental bookkeeping: edge
// counting is done by pair scans, connectivity by bitmask BFS, optima by
// full subset enumeration.

#include <algorithm>
#include <fstream>
#include <optional>
#include <utility>
#include <vector>

#include "percom/graph.hpp"
#include "percom/persistence.hpp"
#include "percom/rng.hpp"

namespace testutil {

using percom::community_solution;
using percom::graph;
using percom::node_set;
using percom::ratio;

inline graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return graph::from_edges(n, e);
}

inline graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return graph::from_edges(n, e);
}

inline graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return graph::from_edges(n, e);
}

// Star with center 0 and n-1 rays.
inline graph star_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(0, i);
    return graph::from_edges(n, e);
}

inline graph load_karate() {
    std::ifstream in("data/karate.txt");
    return percom::parse_edge_list(in);
}

// Internal edges by full pair scan, external from the degree sum; a
// different computation path than the library's neighbor-walk.
inline std::pair<long long, long long> count_edges_brute(const graph& g, const node_set& s) {
    long long internal = 0, degree_sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        degree_sum += g.degree(s[i]);
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.has_edge(s[i], s[j])) ++internal;
    }
    return {internal, degree_sum - 2 * internal};
}

inline ratio alpha_brute(const graph& g, const node_set& s) {
    auto [in, out] = count_edges_brute(g, s);
    return in + out > 0 ? ratio(in, in + out) : ratio::zero();
}

inline bool connected_mask(const graph& g, unsigned long long mask) {
    if (mask == 0) return false;
    int n = g.node_count();
    int start = -1;
    for (int v = 0; v < n && start < 0; ++v)
        if (mask >> v & 1) start = v;
    unsigned long long seen = 1ULL << start;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v))
            if ((mask >> u & 1) && !(seen >> u & 1)) {
                seen |= 1ULL << u;
                stack.push_back(u);
            }
    }
    return seen == mask;
}

// All connected k-subsets, sorted member lists in lexicographic order.
inline std::vector<node_set> connected_subsets_brute(const graph& g, int k) {
    int n = g.node_count();
    std::vector<node_set> out;
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        if (__builtin_popcountll(mask) != k || !connected_mask(g, mask)) continue;
        node_set s;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) s.push_back(v);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Best connected k-subset under (alpha desc, members lex asc).
inline std::optional<community_solution> best_brute(const graph& g, int k) {
    std::optional<community_solution> best;
    for (const auto& s : connected_subsets_brute(g, k)) {
        auto [in, out] = count_edges_brute(g, s);
        community_solution cand;
        cand.members = s;
        cand.internal = in;
        cand.external = out;
        cand.alpha = ratio(in, in + out);
        if (!best || percom::solution_better(cand, *best)) best = cand;
    }
    return best;
}

// Random spanning tree plus independent extra edges: always connected.
inline graph random_connected_graph(int n, double extra_p, percom::rng& r) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    r.shuffle(order);
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
    for (int i = 1; i < n; ++i) {
        int u = order[i], v = order[r.below(i)];
        edges.emplace_back(u, v);
        present[u][v] = present[v][u] = 1;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!present[u][v] && r.unit() < extra_p) {
                edges.emplace_back(u, v);
                present[u][v] = present[v][u] = 1;
            }
    return graph::from_edges(n, edges);
}

} // namespace testutil
