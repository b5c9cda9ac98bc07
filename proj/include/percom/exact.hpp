#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "percom/errors.hpp"
#include "percom/graph.hpp"
#include "percom/persistence.hpp"

namespace percom {

// Streams every connected node subset of size exactly k to `emit`, each
// subset exactly once, as a sorted node_set. Anchored growth: subsets are
// rooted at their minimum node and extended only through nodes with a
// larger index that are not yet adjacent to the partial subset, so no
// subset is reachable along two different paths.
template <typename F>
inline void for_each_connected_subset(const graph& g, int k, F&& emit) {
    const int n = g.node_count();
    if (k < 1 || k > n) throw argument_error("for_each_connected_subset: k out of range");

    std::vector<int> sub;
    sub.reserve(k);
    std::vector<char> seen(n, 0);
    node_set sorted;
    sorted.reserve(k);

    std::vector<int> newly_stack;
    std::function<void(std::vector<int>&, int)> extend = [&](std::vector<int>& ext, int v) {
        if (static_cast<int>(sub.size()) == k) {
            sorted.assign(sub.begin(), sub.end());
            std::sort(sorted.begin(), sorted.end());
            emit(static_cast<const node_set&>(sorted));
            return;
        }
        while (!ext.empty()) {
            int w = ext.back();
            ext.pop_back();
            std::vector<int> next_ext = ext;
            std::size_t mark = newly_stack.size();
            for (int u : g.neighbors(w))
                if (u > v && !seen[u]) {
                    seen[u] = 1;
                    next_ext.push_back(u);
                    newly_stack.push_back(u);
                }
            sub.push_back(w);
            extend(next_ext, v);
            sub.pop_back();
            while (newly_stack.size() > mark) {
                seen[newly_stack.back()] = 0;
                newly_stack.pop_back();
            }
        }
    };

    for (int v = 0; v < n; ++v) {
        std::fill(seen.begin(), seen.end(), 0);
        seen[v] = 1;
        std::vector<int> ext;
        for (int u : g.neighbors(v))
            if (u > v) {
                ext.push_back(u);
                seen[u] = 1;
            }
        sub.assign(1, v);
        extend(ext, v);
    }
}

struct exact_result {
    community_solution best;
    long long enumerated = 0; // connected subsets of size k
};

// Exhaustive maximizer: enumerates every connected k-subset and keeps the
// best under the usual order (alpha, then lexicographic members).
inline exact_result exact_max_persistence(const graph& g, int k) {
    const int n = g.node_count();
    if (k < 2 || k > n - 1)
        throw argument_error("exact_max_persistence: k must be in [2, n-1]");

    exact_result res;
    bool have = false;
    for_each_connected_subset(g, k, [&](const node_set& s) {
        ++res.enumerated;
        auto [internal, external] = detail::edge_counts(g, s);
        community_solution cand{s, internal, external, ratio(internal, internal + external)};
        if (!have || solution_better(cand, res.best)) {
            res.best = std::move(cand);
            have = true;
        }
    });
    if (!have)
        throw domain_error("exact_max_persistence: no connected subset of the requested size");
    return res;
}

} // namespace percom
