#pragma once

// Constructive feasibility witness for the linearized persistence model:
// given a connected k-subset, assign every model variable the value the
// intended solution takes, exactly, as an integer numerator over the
// common denominator D = internal + external. The checker then evaluates
// each constraint and bound in integer arithmetic, so satisfaction is
// decided without any floating-point tolerance.
//
// Variable values: x, z, w are 0/1 (numerator 0 or D); u is 1/D
// (numerator 1); h = u*z and l = u*w (numerator 0 or 1); flow follows a
// BFS spanning tree of the subset rooted at its highest index, each tree
// arc carrying the subtree size of its child (numerator size*D).

#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "percom/graph.hpp"
#include "percom/milp.hpp"
#include "percom/persistence.hpp"

namespace testutil {

struct milp_witness {
    long long denom = 1;                                  // D
    std::unordered_map<std::string, long long> numer;     // value = numer / D
    percom::ratio alpha;
};

inline milp_witness build_witness(const percom::graph& g, const percom::node_set& members) {
    using percom::node_set;
    const int n = g.node_count();
    auto sol = percom::alpha_of(g, members);

    milp_witness w;
    w.denom = sol.internal + sol.external;
    w.alpha = sol.alpha;
    const long long D = w.denom;

    std::vector<char> in_set(n, 0);
    for (int v : sol.members) in_set[v] = 1;

    auto pair_var = [](const char* fam, int i, int j) {
        return std::string(fam) + "_" + std::to_string(i) + "_" + std::to_string(j);
    };

    for (int i = 0; i < n; ++i) w.numer["x_" + std::to_string(i)] = in_set[i] ? D : 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool z = in_set[i] && in_set[j];
            bool ww = !in_set[i] && !in_set[j];
            w.numer[pair_var("z", i, j)] = z ? D : 0;
            w.numer[pair_var("w", i, j)] = ww ? D : 0;
            w.numer[pair_var("h", i, j)] = z ? 1 : 0;
            w.numer[pair_var("l", i, j)] = ww ? 1 : 0;
        }
    w.numer["u"] = 1;
    for (const auto& [a, b] : g.edges()) {
        w.numer[pair_var("f", a, b)] = 0;
        w.numer[pair_var("f", b, a)] = 0;
    }

    // BFS tree rooted at the highest selected index; flow on the arc into
    // each child equals the child's subtree size.
    int root = sol.members.back();
    std::vector<int> parent(n, -1), order;
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(root);
    seen[root] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (int u : g.neighbors(v))
            if (in_set[u] && !seen[u]) {
                seen[u] = 1;
                parent[u] = v;
                q.push(u);
            }
    }
    std::vector<long long> subtree(n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) subtree[parent[*it]] += subtree[*it];
    for (int v : order)
        if (parent[v] >= 0) w.numer[pair_var("f", parent[v], v)] = subtree[v] * D;
    return w;
}

// Names of violated constraints/bounds; empty means the witness is
// feasible. Integer arithmetic throughout.
inline std::vector<std::string> violated_rows(const percom::milp_model& m, const milp_witness& w) {
    std::vector<std::string> bad;
    const long long D = w.denom;
    auto value_numer = [&](const std::string& name) {
        auto it = w.numer.find(name);
        return it == w.numer.end() ? 0LL : it->second;
    };
    for (const auto& v : m.variables) {
        long long num = value_numer(v.name);
        if (num < v.lower * D) bad.push_back("bound_lo:" + v.name);
        if (v.has_upper && num > v.upper * D) bad.push_back("bound_up:" + v.name);
        if (v.kind == percom::var_kind::binary && num != 0 && num != D)
            bad.push_back("bound_bin:" + v.name);
    }
    for (const auto& c : m.constraints) {
        long long lhs = 0;
        for (const auto& t : c.terms) lhs += t.coef * value_numer(t.var);
        long long rhs = c.rhs * D;
        bool ok = c.rel == percom::relation::le   ? lhs <= rhs
                  : c.rel == percom::relation::ge ? lhs >= rhs
                                                  : lhs == rhs;
        if (!ok) bad.push_back(c.name);
    }
    return bad;
}

inline percom::ratio objective_value(const percom::milp_model& m, const milp_witness& w) {
    long long num = 0;
    for (const auto& t : m.objective) {
        auto it = w.numer.find(t.var);
        num += t.coef * (it == w.numer.end() ? 0 : it->second);
    }
    return percom::ratio(num, w.denom);
}

} // namespace testutil
