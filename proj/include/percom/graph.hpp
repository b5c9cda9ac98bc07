#pragma once

#include <algorithm>
#include <istream>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "percom/errors.hpp"
#include "percom/rng.hpp"

namespace percom {

// A set of internal node indices, kept sorted and distinct.
using node_set = std::vector<int>;

// Simple undirected graph. Nodes carry external labels (verbatim from the
// input, order of first appearance); all algorithms work on dense 0-based
// internal indices. Immutable after construction.
class graph {
public:
    graph() = default;

    // Builds a graph from internal-index edges. Labels default to "1".."n"
    // when none are given. Self-loops and duplicate edges are rejected.
    static graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                            std::vector<std::string> labels = {}) {
        graph g;
        if (labels.empty()) {
            labels.reserve(n);
            for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
        }
        if (static_cast<int>(labels.size()) != n)
            throw argument_error("from_edges: label count does not match node count");
        g.labels_ = std::move(labels);
        g.adj_.assign(n, {});
        for (const auto& [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw argument_error("from_edges: node index out of range");
            if (u == v)
                throw validation_error("self-loop on node " + g.labels_[u]);
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (int i = 0; i < n; ++i) {
            auto& nb = g.adj_[i];
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw validation_error("duplicate edge at node " + g.labels_[i]);
        }
        g.edge_count_ = static_cast<long long>(edges.size());
        return g;
    }

    int node_count() const { return static_cast<int>(adj_.size()); }
    long long edge_count() const { return edge_count_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::string& label(int v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool has_edge(int u, int v) const {
        const auto& nb = adj_[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    // Internal index of a label, or -1.
    int index_of(const std::string& label) const {
        for (int i = 0; i < node_count(); ++i)
            if (labels_[i] == label) return i;
        return -1;
    }

    // Edges as (u, v) with u < v, ordered lexicographically.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(edge_count_));
        for (int u = 0; u < node_count(); ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool is_connected() const {
        if (node_count() == 0) return true;
        std::vector<char> seen(node_count(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj_[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    ++reached;
                    stack.push_back(v);
                }
        }
        return reached == node_count();
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> adj_;
    long long edge_count_ = 0;
};

// Parses "u v" edge lines. `#` starts a comment, blank lines are skipped.
// Labels are arbitrary whitespace-free tokens mapped to dense indices in
// order of first appearance. Rejects self-loops, duplicate edges,
// malformed lines (with line number) and disconnected graphs.
inline graph parse_edge_list(std::istream& in) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    std::vector<std::pair<int, int>> edges;
    auto intern = [&](const std::string& tok) {
        auto it = index.find(tok);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(labels.size());
        labels.push_back(tok);
        index.emplace(tok, id);
        return id;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string a, b, extra;
        if (!(ss >> a)) continue; // blank
        if (!(ss >> b) || (ss >> extra))
            throw parse_error("line " + std::to_string(lineno) + ": expected \"u v\", got \"" + line + "\"");
        int u = intern(a), v = intern(b);
        if (u == v)
            throw validation_error("line " + std::to_string(lineno) + ": self-loop on node " + a);
        edges.emplace_back(u, v);
    }

    graph g;
    try {
        g = graph::from_edges(static_cast<int>(labels.size()), edges, labels);
    } catch (const validation_error& e) {
        throw validation_error(std::string("edge list: ") + e.what());
    }
    if (g.node_count() == 0)
        throw validation_error("edge list: no edges found");
    if (!g.is_connected())
        throw validation_error("edge list: graph is not connected");
    return g;
}

inline graph parse_edge_list(const std::string& text) {
    std::istringstream ss(text);
    return parse_edge_list(ss);
}

// BFS/DFS restricted to `s`: true iff the induced subgraph is connected.
inline bool is_connected_subset(const graph& g, const node_set& s) {
    if (s.empty()) throw argument_error("is_connected_subset: empty set");
    std::vector<char> in_set(g.node_count(), 0);
    for (int v : s) {
        if (v < 0 || v >= g.node_count())
            throw argument_error("is_connected_subset: node index out of range");
        in_set[v] = 1;
    }
    std::vector<int> stack{s.front()};
    std::vector<char> seen(g.node_count(), 0);
    seen[s.front()] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors(u))
            if (in_set[v] && !seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == s.size();
}

// Spanning tree of an induced subgraph as a parent map.
struct spanning_tree {
    int root = -1;
    std::vector<int> nodes;                    // sorted members, root included
    std::unordered_map<int, int> parent;       // node -> parent, root absent

    int size() const { return static_cast<int>(nodes.size()); }
};

// Random spanning tree of the subgraph induced by `s`, rooted at `root`.
// Grows by drawing a uniformly random frontier edge, so every spanning
// tree of the induced subgraph is produced with positive probability.
inline spanning_tree random_spanning_tree(const graph& g, const node_set& s, int root, rng& r) {
    if (std::find(s.begin(), s.end(), root) == s.end())
        throw argument_error("random_spanning_tree: root not in set");
    spanning_tree t;
    t.root = root;
    t.nodes = s;
    std::sort(t.nodes.begin(), t.nodes.end());

    std::vector<char> in_set(g.node_count(), 0);
    for (int v : s) in_set[v] = 1;
    std::vector<char> in_tree(g.node_count(), 0);
    in_tree[root] = 1;

    // Bag of frontier edges (tree node, outside node); stale entries are
    // discarded on draw.
    std::vector<std::pair<int, int>> frontier;
    for (int u : g.neighbors(root))
        if (in_set[u]) frontier.emplace_back(root, u);

    std::size_t covered = 1;
    while (covered < s.size()) {
        if (frontier.empty())
            throw argument_error("random_spanning_tree: induced subgraph is disconnected");
        std::size_t pick = r.below(frontier.size());
        auto [from, to] = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        if (in_tree[to]) continue;
        in_tree[to] = 1;
        t.parent[to] = from;
        ++covered;
        for (int u : g.neighbors(to))
            if (in_set[u] && !in_tree[u]) frontier.emplace_back(to, u);
    }
    return t;
}

// Non-root nodes with no children; requires at least 2 tree nodes.
inline node_set leaves(const spanning_tree& t) {
    if (t.size() < 2) throw argument_error("leaves: tree has fewer than 2 nodes");
    std::unordered_map<int, int> children;
    for (const auto& [node, parent] : t.parent) {
        (void)node;
        ++children[parent];
    }
    node_set out;
    for (int v : t.nodes)
        if (v != t.root && children.find(v) == children.end()) out.push_back(v);
    return out;
}

// Minimum hop count between a and b.
inline int shortest_path_distance(const graph& g, int a, int b) {
    if (a < 0 || a >= g.node_count() || b < 0 || b >= g.node_count())
        throw argument_error("shortest_path_distance: node index out of range");
    if (a == b) return 0;
    std::vector<int> dist(g.node_count(), -1);
    std::queue<int> q;
    dist[a] = 0;
    q.push(a);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u)) {
            if (dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            if (v == b) return dist[v];
            q.push(v);
        }
    }
    throw domain_error("shortest_path_distance: nodes are not connected");
}

// Hop distances from every node of `sources` (used by the restart
// distance rule); -1 marks unreachable nodes.
inline std::vector<int> multi_source_distances(const graph& g, const node_set& sources) {
    std::vector<int> dist(g.node_count(), -1);
    std::queue<int> q;
    for (int s : sources) {
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist;
}

} // namespace percom
