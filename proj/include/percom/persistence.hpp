#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "percom/errors.hpp"
#include "percom/graph.hpp"
#include "percom/rational.hpp"

namespace percom {

// Connected node subset with cached edge counts. alpha is the exact ratio
// internal / (internal + external), internal edges counted once.
struct community_solution {
    node_set members;        // sorted internal indices
    long long internal = 0;  // edges with both endpoints inside
    long long external = 0;  // edges with exactly one endpoint inside
    ratio alpha;
};

// Lexicographic order on sorted member lists, the deterministic tie-break
// for equal alpha values.
inline bool lex_less(const node_set& a, const node_set& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Compares union(a1, a2) with union(b1, b2) lexicographically without
// materializing the unions. Inputs are sorted and pairwise disjoint.
inline bool lex_less_union(const node_set& a1, const node_set& a2,
                           const node_set& b1, const node_set& b2) {
    std::size_t i1 = 0, i2 = 0, j1 = 0, j2 = 0;
    for (;;) {
        bool a_has = i1 < a1.size() || i2 < a2.size();
        bool b_has = j1 < b1.size() || j2 < b2.size();
        if (!a_has || !b_has) return !a_has && b_has;
        int av = (i1 < a1.size() && (i2 >= a2.size() || a1[i1] < a2[i2])) ? a1[i1] : a2[i2];
        int bv = (j1 < b1.size() && (j2 >= b2.size() || b1[j1] < b2[j2])) ? b1[j1] : b2[j2];
        if (av != bv) return av < bv;
        if (i1 < a1.size() && a1[i1] == av) ++i1; else ++i2;
        if (j1 < b1.size() && b1[j1] == bv) ++j1; else ++j2;
    }
}

// Total order used wherever a single best solution must be selected:
// larger alpha wins, ties go to the lexicographically smallest member list.
inline bool solution_better(const community_solution& a, const community_solution& b) {
    if (a.alpha != b.alpha) return a.alpha > b.alpha;
    return lex_less(a.members, b.members);
}

namespace detail {

inline std::string set_to_string(const graph& g, const node_set& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += g.label(s[i]);
    }
    return out + "}";
}

// Edge counts without the connectivity check.
inline std::pair<long long, long long> edge_counts(const graph& g, const node_set& s) {
    std::vector<char> in_set(g.node_count(), 0);
    for (int v : s) in_set[v] = 1;
    long long internal2 = 0, external = 0;
    for (int v : s)
        for (int u : g.neighbors(v))
            (in_set[u] ? internal2 : external) += 1;
    return {internal2 / 2, external};
}

} // namespace detail

// Persistence probability of a connected subset, computed from scratch.
inline community_solution alpha_of(const graph& g, const node_set& s) {
    if (s.empty()) throw argument_error("alpha_of: empty set");
    if (!is_connected_subset(g, s))
        throw domain_error("alpha_of: induced subgraph is disconnected: " + detail::set_to_string(g, s));
    community_solution sol;
    sol.members = s;
    std::sort(sol.members.begin(), sol.members.end());
    auto [internal, external] = detail::edge_counts(g, sol.members);
    sol.internal = internal;
    sol.external = external;
    long long den = internal + external;
    sol.alpha = den > 0 ? ratio(internal, den) : ratio::zero();
    return sol;
}

// Disjoint cluster family over V with the bookkeeping that makes a merge
// evaluation O(1): per-cluster internal and boundary edge counts plus
// pairwise adjacency counts for adjacent cluster pairs.
class merge_partition {
public:
    struct cluster {
        node_set members;             // sorted
        long long e_in = 0;
        long long e_out = 0;
        std::map<int, long long> adj; // adjacent cluster id -> edge count
        bool alive = true;
    };

    explicit merge_partition(const graph& g) : g_(&g), uf_parent_(g.node_count()), cluster_of_root_(g.node_count()) {
        clusters_.reserve(static_cast<std::size_t>(2 * g.node_count()));
        for (int v = 0; v < g.node_count(); ++v) {
            uf_parent_[v] = v;
            cluster_of_root_[v] = v;
            cluster c;
            c.members = {v};
            c.e_out = g.degree(v);
            for (int u : g.neighbors(v)) c.adj[u] = 1;
            clusters_.push_back(std::move(c));
        }
        alive_ = g.node_count();
    }

    const graph& underlying_graph() const { return *g_; }
    int alive_count() const { return alive_; }
    int total_ids() const { return static_cast<int>(clusters_.size()); }
    const cluster& at(int id) const { return clusters_[id]; }
    bool alive(int id) const { return clusters_[id].alive; }

    int cluster_of_node(int v) const { return cluster_of_root_[find(v)]; }

    long long adjacency(int q, int l) const {
        auto it = clusters_[q].adj.find(l);
        return it == clusters_[q].adj.end() ? 0 : it->second;
    }

    // alpha of C_q union C_l, in O(1) from the stored counts.
    ratio merge_alpha(int q, int l) const {
        check_pair(q, l);
        long long a = adjacency(q, l);
        if (a < 1) throw domain_error("merge_alpha: clusters are not adjacent");
        const cluster& cq = clusters_[q];
        const cluster& cl = clusters_[l];
        return ratio(cq.e_in + cl.e_in + a,
                     cq.e_in + cl.e_in + cq.e_out + cl.e_out - a);
    }

    // Replaces q and l by their union; returns the new cluster id.
    // Bookkeeping updates are linear in the clusters' adjacency lists.
    int apply_merge(int q, int l) {
        check_pair(q, l);
        long long a = adjacency(q, l);
        if (a < 1) throw domain_error("apply_merge: clusters are not adjacent");
        cluster merged;
        const cluster& cq = clusters_[q];
        const cluster& cl = clusters_[l];
        merged.members.resize(cq.members.size() + cl.members.size());
        std::merge(cq.members.begin(), cq.members.end(),
                   cl.members.begin(), cl.members.end(), merged.members.begin());
        merged.e_in = cq.e_in + cl.e_in + a;
        merged.e_out = cq.e_out + cl.e_out - 2 * a;
        for (const auto& [r, cnt] : cq.adj)
            if (r != l) merged.adj[r] += cnt;
        for (const auto& [r, cnt] : cl.adj)
            if (r != q) merged.adj[r] += cnt;

        int id = static_cast<int>(clusters_.size());
        for (const auto& [r, cnt] : merged.adj) {
            clusters_[r].adj.erase(q);
            clusters_[r].adj.erase(l);
            clusters_[r].adj[id] = cnt;
        }
        clusters_[q].alive = false;
        clusters_[l].alive = false;
        clusters_.push_back(std::move(merged));
        --alive_;

        int rq = find(clusters_[q].members.front());
        int rl = find(clusters_[l].members.front());
        uf_parent_[rl] = rq;
        cluster_of_root_[rq] = id;
        return id;
    }

    // Live cluster ids, ascending.
    std::vector<int> alive_ids() const {
        std::vector<int> out;
        out.reserve(alive_);
        for (int i = 0; i < total_ids(); ++i)
            if (clusters_[i].alive) out.push_back(i);
        return out;
    }

private:
    void check_pair(int q, int l) const {
        if (q < 0 || q >= total_ids() || l < 0 || l >= total_ids() || q == l)
            throw argument_error("merge: invalid cluster pair");
        if (!clusters_[q].alive || !clusters_[l].alive)
            throw argument_error("merge: cluster no longer alive");
    }

    int find(int v) const {
        while (uf_parent_[v] != v) {
            uf_parent_[v] = uf_parent_[uf_parent_[v]];
            v = uf_parent_[v];
        }
        return v;
    }

    const graph* g_;
    std::vector<cluster> clusters_;
    mutable std::vector<int> uf_parent_;
    std::vector<int> cluster_of_root_;
    int alive_ = 0;
};

// Result of swapping out_node for in_node, computed incrementally from the
// old counts by scanning only the two nodes' adjacency lists. Empty when
// the new set is disconnected.
inline std::optional<community_solution> interchange_delta(const graph& g, const community_solution& sol,
                                                           int out_node, int in_node) {
    if (!std::binary_search(sol.members.begin(), sol.members.end(), out_node))
        throw argument_error("interchange_delta: out_node is not a member");
    if (std::binary_search(sol.members.begin(), sol.members.end(), in_node))
        throw argument_error("interchange_delta: in_node is already a member");

    std::vector<char> in_set(g.node_count(), 0);
    for (int v : sol.members) in_set[v] = 1;

    long long out_inside = 0;
    for (int u : g.neighbors(out_node))
        if (in_set[u]) ++out_inside;
    in_set[out_node] = 0;
    long long in_inside = 0;
    for (int u : g.neighbors(in_node))
        if (in_set[u]) ++in_inside;

    community_solution next;
    next.members.reserve(sol.members.size());
    for (int v : sol.members)
        if (v != out_node) next.members.push_back(v);
    next.members.insert(std::upper_bound(next.members.begin(), next.members.end(), in_node), in_node);
    next.internal = sol.internal - out_inside + in_inside;
    long long degree_sum = 2 * sol.internal + sol.external - g.degree(out_node) + g.degree(in_node);
    next.external = degree_sum - 2 * next.internal;
    long long den = next.internal + next.external;
    next.alpha = den > 0 ? ratio(next.internal, den) : ratio::zero();

    if (!is_connected_subset(g, next.members)) return std::nullopt;
    return next;
}

} // namespace percom
