#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "percom/errors.hpp"
#include "percom/graph.hpp"
#include "percom/persistence.hpp"
#include "percom/rng.hpp"
#include "percom/shrink.hpp"

namespace percom {

struct search_params {
    int max_start_shrink = 100;
    int max_random_step = -1; // -1: floor(n/10)
    int max_start_vns = 100;
    int max_start_crr = 100;
    int min_distance = 2;
    std::uint64_t seed = 1;
    int threads = 1;

    int effective_random_step(int n) const {
        return max_random_step >= 0 ? max_random_step : n / 10;
    }

    void validate() const {
        if (max_start_shrink < 1 || max_start_vns < 1 || max_start_crr < 1)
            throw argument_error("search params: repetition counts must be >= 1");
        if (min_distance < 0)
            throw argument_error("search params: min_distance must be >= 0");
        if (threads < 1)
            throw argument_error("search params: threads must be >= 1");
    }
};

namespace detail {

// Articulation points of the subgraph induced by `members` (Tarjan).
inline std::vector<char> articulation_points(const graph& g, const node_set& members,
                                             const std::vector<char>& in_set) {
    std::vector<char> is_art(g.node_count(), 0);
    std::vector<int> disc(g.node_count(), -1), low(g.node_count(), 0);
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int u, int parent) {
        disc[u] = low[u] = timer++;
        int children = 0;
        for (int v : g.neighbors(u)) {
            if (!in_set[v] || v == parent) continue;
            if (disc[v] >= 0) {
                low[u] = std::min(low[u], disc[v]);
                continue;
            }
            ++children;
            dfs(v, u);
            low[u] = std::min(low[u], low[v]);
            if (parent >= 0 && low[v] >= disc[u]) is_art[u] = 1;
        }
        if (parent < 0 && children > 1) is_art[u] = 1;
    };
    for (int v : members)
        if (disc[v] < 0) dfs(v, -1);
    return is_art;
}

inline node_set swapped_members(const node_set& members, int out_node, int in_node) {
    node_set next;
    next.reserve(members.size());
    for (int v : members)
        if (v != out_node) next.push_back(v);
    next.insert(std::upper_bound(next.begin(), next.end(), in_node), in_node);
    return next;
}

} // namespace detail

// Best-improvement interchange: repeatedly applies the single feasible
// node swap with the highest alpha until no swap improves. Candidate
// alphas are computed incrementally; connectivity is only verified for
// candidates that would actually improve (non-articulation exits with an
// attached entering node need no BFS, the rest are checked on the full
// new set, since the entering node can restore connectivity).
inline community_solution interchange(const graph& g, const community_solution& start) {
    const int n = g.node_count();
    const int k = static_cast<int>(start.members.size());
    if (k < 2 || k > n - 1)
        throw argument_error("interchange: size must be in [2, n-1]");
    if (!is_connected_subset(g, start.members))
        throw argument_error("interchange: starting set is disconnected");

    community_solution cur = start;
    std::vector<char> in_set(n, 0);
    std::vector<long long> deg_into(n, 0);

    for (;;) {
        std::fill(in_set.begin(), in_set.end(), 0);
        for (int v : cur.members) in_set[v] = 1;
        std::fill(deg_into.begin(), deg_into.end(), 0);
        for (int v : cur.members)
            for (int u : g.neighbors(v)) ++deg_into[u];

        auto is_art = detail::articulation_points(g, cur.members, in_set);

        bool have_best = false;
        ratio best_alpha;
        int best_out = -1, best_in = -1;
        node_set best_members;

        for (int out_node : cur.members) {
            const bool removal_keeps_connected = !is_art[out_node] && k >= 2;
            for (int in_node = 0; in_node < n; ++in_node) {
                if (in_set[in_node]) continue;
                long long attach = deg_into[in_node] - (g.has_edge(in_node, out_node) ? 1 : 0);
                long long new_internal = cur.internal - deg_into[out_node] + attach;
                long long degree_sum = 2 * cur.internal + cur.external - g.degree(out_node) + g.degree(in_node);
                long long new_external = degree_sum - 2 * new_internal;
                ratio alpha(new_internal, new_internal + new_external);
                if (!(alpha > cur.alpha)) continue;
                if (have_best && alpha < best_alpha) continue;

                bool tie = have_best && alpha == best_alpha;
                node_set cand;
                if (tie) {
                    cand = detail::swapped_members(cur.members, out_node, in_node);
                    if (!lex_less(cand, best_members)) continue;
                }

                bool connected;
                if (removal_keeps_connected)
                    connected = attach >= 1;
                else {
                    if (cand.empty()) cand = detail::swapped_members(cur.members, out_node, in_node);
                    connected = is_connected_subset(g, cand);
                }
                if (!connected) continue;

                if (cand.empty()) cand = detail::swapped_members(cur.members, out_node, in_node);
                have_best = true;
                best_alpha = alpha;
                best_out = out_node;
                best_in = in_node;
                best_members = std::move(cand);
            }
        }

        if (!have_best) return cur;
        auto next = interchange_delta(g, cur, best_out, best_in);
        cur = *next;
    }
}

// Grows a connected subset of size k from c by repeatedly adding a
// uniformly random neighbor of the current set.
inline node_set random_connected_subset(const graph& g, int c, int k, rng& r) {
    const int n = g.node_count();
    if (c < 0 || c >= n) throw argument_error("random_connected_subset: invalid start node");
    if (k < 1 || k > n) throw argument_error("random_connected_subset: k out of range");

    std::vector<char> in_set(n, 0), queued(n, 0);
    node_set members{c};
    in_set[c] = 1;
    std::vector<int> frontier;
    for (int u : g.neighbors(c)) {
        frontier.push_back(u);
        queued[u] = 1;
    }
    while (static_cast<int>(members.size()) < k) {
        if (frontier.empty())
            throw domain_error("random_connected_subset: growth exhausted before reaching k");
        std::size_t i = r.below(frontier.size());
        int v = frontier[i];
        frontier[i] = frontier.back();
        frontier.pop_back();
        members.push_back(v);
        in_set[v] = 1;
        for (int u : g.neighbors(v))
            if (!in_set[u] && !queued[u]) {
                frontier.push_back(u);
                queued[u] = 1;
            }
    }
    std::sort(members.begin(), members.end());
    return members;
}

// Polishes the shrink witness of size k with interchange. When the curve
// holds no witness of this exact size, a random connected subset seeds
// the interchange instead.
inline community_solution rsi_from_curve(const graph& g, int k, const persistence_curve& curve,
                                         const search_params& params) {
    const auto& e = curve.at(k);
    community_solution start;
    if (e.has_witness()) {
        start = alpha_of(g, e.members);
    } else {
        rng r = rng::stream(params.seed, 0x525349ULL); // fallback stream
        start = alpha_of(g, random_connected_subset(g, static_cast<int>(r.below(g.node_count())), k, r));
    }
    return interchange(g, start);
}

// Random Shrink Interchange.
inline community_solution rsi(const graph& g, int k, const search_params& params) {
    params.validate();
    const int n = g.node_count();
    if (k < 2 || k > n - 1) throw argument_error("rsi: k must be in [2, n-1]");
    persistence_curve curve = random_shrink(g, params.max_start_shrink,
                                            params.effective_random_step(n), params.seed, params.threads);
    return rsi_from_curve(g, k, curve, params);
}

// Tree VNS: perturb the incumbent by dropping h random leaves of a random
// spanning tree and regrowing h nodes from random neighbors of the core,
// then re-optimize with interchange; keep strictly improving results.
inline community_solution tree_vns(const graph& g, const community_solution& sol, int max_start, rng& r) {
    if (max_start < 1) throw argument_error("tree_vns: max_start must be >= 1");
    const int n = g.node_count();
    const int k = static_cast<int>(sol.members.size());
    community_solution incumbent = sol;

    std::vector<char> blocked(n, 0), in_set(n, 0), queued(n, 0);

    for (int round = 0; round < max_start; ++round) {
        std::optional<community_solution> built;
        for (int attempt = 0; attempt < n && !built; ++attempt) {
            int v = incumbent.members[r.below(incumbent.members.size())];
            spanning_tree tree = random_spanning_tree(g, incumbent.members, v, r);
            node_set leaf_set = leaves(tree);
            int h_max = std::min(static_cast<int>(leaf_set.size()), k - 1);
            if (h_max < 2) continue;
            int h = static_cast<int>(r.between(2, h_max));

            // R: uniform h-subset of the leaves (partial Fisher-Yates).
            for (int i = 0; i < h; ++i) {
                std::size_t j = i + r.below(leaf_set.size() - i);
                std::swap(leaf_set[i], leaf_set[j]);
            }
            std::fill(blocked.begin(), blocked.end(), 0);
            for (int i = 0; i < h; ++i) blocked[leaf_set[i]] = 1;

            node_set grown;
            grown.reserve(k);
            std::fill(in_set.begin(), in_set.end(), 0);
            std::fill(queued.begin(), queued.end(), 0);
            for (int m : incumbent.members)
                if (!blocked[m]) {
                    grown.push_back(m);
                    in_set[m] = 1;
                }
            std::vector<int> frontier;
            for (int m : grown)
                for (int u : g.neighbors(m))
                    if (!in_set[u] && !blocked[u] && !queued[u]) {
                        frontier.push_back(u);
                        queued[u] = 1;
                    }
            // Entering nodes are drawn from neighbors of the evolving set,
            // never from the removed leaves.
            bool stuck = false;
            for (int added = 0; added < h; ++added) {
                if (frontier.empty()) {
                    stuck = true;
                    break;
                }
                std::size_t i = r.below(frontier.size());
                int u = frontier[i];
                frontier[i] = frontier.back();
                frontier.pop_back();
                grown.push_back(u);
                in_set[u] = 1;
                for (int w : g.neighbors(u))
                    if (!in_set[w] && !blocked[w] && !queued[w]) {
                        frontier.push_back(w);
                        queued[w] = 1;
                    }
            }
            if (stuck) continue;
            std::sort(grown.begin(), grown.end());
            built = alpha_of(g, grown);
        }
        if (!built) continue;
        community_solution improved = interchange(g, *built);
        if (improved.alpha > incumbent.alpha) incumbent = improved;
    }
    return incumbent;
}

// Random Shrink VNS: shrink + interchange, then Tree VNS diversification.
inline community_solution rsvns(const graph& g, int k, const search_params& params) {
    params.validate();
    community_solution base = rsi(g, k, params);
    rng r = rng::stream(params.seed, 0x564e53ULL); // vns stream
    return tree_vns(g, base, params.max_start_vns, r);
}

inline community_solution rsvns_from_base(const graph& g, const community_solution& base,
                                          const search_params& params) {
    rng r = rng::stream(params.seed, 0x564e53ULL);
    return tree_vns(g, base, params.max_start_vns, r);
}

// Constrained Random Restart: multistart interchange where each new start
// node must lie at hop distance >= min_distance from all previous start
// nodes; when no admissible node remains the history resets and the
// search begins fresh. Every interchange launch counts toward max_start.
inline community_solution crr(const graph& g, int k, const search_params& params) {
    params.validate();
    const int n = g.node_count();
    if (k < 2 || k > n - 1) throw argument_error("crr: k must be in [2, n-1]");

    rng r = rng::stream(params.seed, 0x435252ULL); // crr stream
    std::optional<community_solution> best;
    auto consider = [&](const community_solution& cand) {
        if (!best || solution_better(cand, *best)) best = cand;
    };

    int launches = 0;
    while (launches < params.max_start_crr) {
        int c = static_cast<int>(r.below(n));
        node_set history{c};
        community_solution cand =
            interchange(g, alpha_of(g, random_connected_subset(g, c, k, r)));
        ++launches;
        consider(cand);

        while (launches < params.max_start_crr) {
            auto dist = multi_source_distances(g, history);
            std::vector<int> admissible;
            for (int v = 0; v < n; ++v)
                if (dist[v] >= params.min_distance) admissible.push_back(v);
            if (admissible.empty()) break; // reset history, restart from scratch
            c = admissible[r.below(admissible.size())];
            history.push_back(c);
            cand = interchange(g, alpha_of(g, random_connected_subset(g, c, k, r)));
            ++launches;
            consider(cand);
        }
    }
    return *best;
}

} // namespace percom
