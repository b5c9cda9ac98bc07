#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "percom/errors.hpp"
#include "percom/graph.hpp"
#include "percom/rng.hpp"

namespace percom {

struct lfr_params {
    int n = 100;
    double gamma = 2.0;           // degree power-law exponent
    double beta = 1.0;            // community-size power-law exponent
    double mu = 0.1;              // mixing fraction in (0,1]
    double avg_degree_frac = 0.3; // target mean degree as fraction of n
    int k_min = 2;
    int k_max = -1; // -1: n-1
    double s_min_frac = 0.2;
    double s_max_frac = 0.5;
    std::uint64_t seed = 1;

    int effective_k_max() const { return k_max < 0 ? n - 1 : k_max; }

    void validate() const {
        if (n < 4) throw argument_error("lfr: n must be >= 4");
        if (!(mu > 0.0 && mu <= 1.0)) throw argument_error("lfr: mu must be in (0,1]");
        if (gamma <= 1.0 || beta <= 0.0) throw argument_error("lfr: exponents out of range");
        if (k_min < 1 || k_min > effective_k_max()) throw argument_error("lfr: k_min must be in [1, k_max]");
        if (effective_k_max() > n - 1) throw argument_error("lfr: k_max must be <= n-1");
        if (!(s_min_frac > 0.0 && s_min_frac <= s_max_frac && s_max_frac <= 1.0))
            throw argument_error("lfr: community size fractions out of range");
        if (!(avg_degree_frac > 0.0 && avg_degree_frac < 1.0))
            throw argument_error("lfr: avg_degree_frac must be in (0,1)");
    }
};

struct planted_graph {
    graph g;
    std::vector<node_set> communities; // disjoint, cover all nodes
    std::vector<int> sizes;            // one entry per community
};

namespace lfr_detail {

// Inverse-CDF draw from a power law with density ~ x^-expo on [a, b].
inline double power_law(double expo, double a, double b, rng& r) {
    double u = r.unit();
    if (std::abs(expo - 1.0) < 1e-12) return a * std::pow(b / a, u);
    double e = 1.0 - expo;
    return std::pow(std::pow(a, e) - u * (std::pow(a, e) - std::pow(b, e)), 1.0 / e);
}

inline long long edge_key(int u, int v, int n) {
    return static_cast<long long>(std::min(u, v)) * n + std::max(u, v);
}

// Configuration-model matching of `stubs` (node repeated once per open
// stub). `admissible` decides whether a candidate pair may become an
// edge; already-present edges and self-loops are always rejected. Runs
// bounded shuffle rounds, then bounded pair/edge swaps, then drops what
// is left over.
template <typename Admissible>
inline void match_stubs(std::vector<int> stubs, int n, std::unordered_set<long long>& edge_keys,
                        std::vector<std::pair<int, int>>& edges, Admissible admissible, rng& r) {
    std::vector<std::pair<int, int>> accepted; // edges created by this call
    for (int round = 0; round < 200 && stubs.size() >= 2; ++round) {
        r.shuffle(stubs);
        std::vector<int> rest;
        std::size_t before = accepted.size();
        if (stubs.size() % 2 == 1) {
            rest.push_back(stubs.back());
            stubs.pop_back();
        }
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u != v && admissible(u, v) && !edge_keys.count(edge_key(u, v, n))) {
                edge_keys.insert(edge_key(u, v, n));
                accepted.emplace_back(u, v);
            } else {
                rest.push_back(u);
                rest.push_back(v);
            }
        }
        stubs = std::move(rest);
        if (accepted.size() == before) break; // no progress
    }
    // Targeted rewiring: trade a stuck stub pair (u,v) against an accepted
    // edge (a,b), producing (u,a) and (v,b), both admissible and new.
    for (int attempt = 0; attempt < 20000 && stubs.size() >= 2 && !accepted.empty(); ++attempt) {
        std::size_t i = r.below(stubs.size()), j = r.below(stubs.size());
        if (i == j) continue;
        int u = stubs[i], v = stubs[j];
        std::size_t ei = r.below(accepted.size());
        auto [a, b] = accepted[ei];
        if (u == a || u == b || v == a || v == b || u == v) continue;
        if (!admissible(u, a) || !admissible(v, b)) continue;
        if (edge_keys.count(edge_key(u, a, n)) || edge_keys.count(edge_key(v, b, n))) continue;
        edge_keys.erase(edge_key(a, b, n));
        edge_keys.insert(edge_key(u, a, n));
        edge_keys.insert(edge_key(v, b, n));
        accepted[ei] = {u, a};
        accepted.emplace_back(v, b);
        if (i > j) std::swap(i, j);
        stubs.erase(stubs.begin() + j);
        stubs.erase(stubs.begin() + i);
    }
    // Exhaustive sweep for whatever the random phase left behind: try every
    // stuck stub pair against every accepted edge, in both orientations.
    // Near-saturated blocks have very few usable swaps, and the random
    // probes above routinely miss them.
    bool progress = true;
    while (progress && stubs.size() >= 2) {
        progress = false;
        for (std::size_t i = 0; i + 1 < stubs.size() && !progress; ++i) {
            for (std::size_t j = i + 1; j < stubs.size() && !progress; ++j) {
                int u = stubs[i], v = stubs[j];
                for (std::size_t ei = 0; ei < accepted.size() && !progress; ++ei) {
                    for (int orient = 0; orient < 2 && !progress; ++orient) {
                        auto [a, b] = accepted[ei];
                        if (orient) std::swap(a, b);
                        if (a == u || a == v || b == u || b == v) continue;
                        if (!admissible(u, a) || !admissible(v, b)) continue;
                        if (edge_keys.count(edge_key(u, a, n)) ||
                            edge_keys.count(edge_key(v, b, n)))
                            continue;
                        edge_keys.erase(edge_key(a, b, n));
                        edge_keys.insert(edge_key(u, a, n));
                        edge_keys.insert(edge_key(v, b, n));
                        accepted[ei] = {u, a};
                        accepted.emplace_back(v, b);
                        stubs.erase(stubs.begin() + j);
                        stubs.erase(stubs.begin() + i);
                        progress = true;
                    }
                }
            }
        }
    }
    // Anything still unmatched is dropped; tolerances absorb the loss.
    edges.insert(edges.end(), accepted.begin(), accepted.end());
}

inline std::vector<int> components_of(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adj[v])
                if (comp[u] < 0) {
                    comp[u] = c;
                    stack.push_back(u);
                }
        }
        ++c;
    }
    return comp;
}

} // namespace lfr_detail

// Generates a connected LFR-style benchmark graph: power-law degrees
// rescaled to the target mean, power-law community sizes summing to n,
// internal degree ceil((1-mu)*deg) wired inside the assigned community
// and the rest wired across communities, followed by degree-preserving
// connectivity repair. Fully deterministic for a fixed seed.
inline planted_graph generate_lfr(const lfr_params& p) {
    p.validate();
    const int n = p.n;
    rng r(p.seed);

    // Community sizes: resample until they sum to n (allowing a trim of
    // the last draw) and the largest community can host the internal
    // degree demanded by the target mean degree.
    const int s_min = std::max(2, static_cast<int>(std::lround(p.s_min_frac * n)));
    const int s_max = std::max(s_min, static_cast<int>(std::lround(p.s_max_frac * n)));
    if (s_min > n) throw generation_error("lfr: minimum community size exceeds n");
    const double target_mean = p.avg_degree_frac * n;

    // Internal demand allowed inside a community of size s: kept a margin
    // below the clique ceiling s-1, because a community whose members all
    // demand s-1 internal stubs is a forced complete graph that stub
    // matching cannot reliably realize.
    auto demand_cap = [](int s) {
        return std::max(1, std::min(s - 1, static_cast<int>(std::floor(0.92 * (s - 1)))));
    };

    // cap_seq[p] bounds the p-th largest degree so that, with degrees
    // sorted descending, the node of rank p can place its internal
    // demand in the community its rank falls into when communities are
    // filled largest-first. That is exactly the condition under which
    // the hardest-first assignment below can never get stuck.
    auto rank_caps = [&](const std::vector<int>& sz) {
        std::vector<int> desc(sz.begin(), sz.end());
        std::sort(desc.rbegin(), desc.rend());
        std::vector<int> caps;
        caps.reserve(n);
        for (int s : desc) {
            int cap = p.effective_k_max();
            if (p.mu < 1.0)
                cap = std::min(cap,
                               static_cast<int>(std::floor(demand_cap(s) / (1.0 - p.mu))));
            for (int i = 0; i < s && static_cast<int>(caps.size()) < n; ++i) caps.push_back(cap);
        }
        return caps;
    };

    // Layout: sizes, degrees and community assignment are drawn together
    // and accepted as a whole. Besides capacity (every degree's internal
    // demand fits its community), the cross-community stub budget must be
    // balanced: a community's external stubs can only pair with stubs of
    // the other communities, so any community holding much more than half
    // of them would strand the excess and drag the realized mixing down.
    std::vector<int> sizes, cap_seq, degree, community(n, -1);
    const char* reject_reason = "lfr: community capacity below internal degree demand";
    bool laid_out = false;
    for (int attempt = 0; attempt < 10000 && !laid_out; ++attempt) {
        sizes.clear();
        int total = 0;
        while (total < n) {
            int s = static_cast<int>(std::lround(lfr_detail::power_law(p.beta, s_min, s_max, r)));
            s = std::clamp(s, s_min, s_max);
            sizes.push_back(s);
            total += s;
        }
        if (total > n) {
            int excess = total - n;
            if (sizes.back() - excess >= s_min)
                sizes.back() -= excess;
            else
                continue;
        }
        cap_seq = rank_caps(sizes);
        if (cap_seq.back() < p.k_min) {
            reject_reason = "lfr: community capacity below internal degree demand";
            continue;
        }
        double cap_mean = std::accumulate(cap_seq.begin(), cap_seq.end(), 0.0) / n;
        if (cap_mean < target_mean) { // target mean unreachable under these sizes
            reject_reason = "lfr: community capacity below internal degree demand";
            continue;
        }
        const int degree_cap = cap_seq.front();

        // Degrees: raw power-law draws, then a scale factor found by
        // bisection so that the clamped-and-rounded sequence, after the
        // rank caps, hits the target mean as closely as the bounds allow.
        std::vector<double> raw(n);
        for (double& x : raw) x = lfr_detail::power_law(p.gamma, p.k_min, p.effective_k_max(), r);
        auto realize = [&](double t) {
            std::vector<int> deg(n);
            for (int i = 0; i < n; ++i)
                deg[i] = static_cast<int>(std::clamp(std::lround(t * raw[i]),
                                                     static_cast<long>(p.k_min),
                                                     static_cast<long>(degree_cap)));
            std::vector<int> ord(n);
            std::iota(ord.begin(), ord.end(), 0);
            std::stable_sort(ord.begin(), ord.end(),
                             [&](int a, int b) { return deg[a] > deg[b]; });
            for (int rank = 0; rank < n; ++rank)
                deg[ord[rank]] = std::min(deg[ord[rank]], cap_seq[rank]);
            return deg;
        };
        auto scaled_mean = [&](double t) {
            auto deg = realize(t);
            return std::accumulate(deg.begin(), deg.end(), 0.0) / n;
        };
        double lo = 1e-3, hi = 1e3;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (scaled_mean(mid) < target_mean ? lo : hi) = mid;
        }
        degree = realize(0.5 * (lo + hi));

        // Assignment: hardest nodes first; among the feasible communities,
        // one with the smallest external-stub load so far (random
        // tie-break), which spreads the cross-community stubs as far as
        // the capacity constraints allow.
        const int r_comms = static_cast<int>(sizes.size());
        auto demand = [&](int v) {
            return static_cast<int>(std::ceil((1.0 - p.mu) * degree[v]));
        };
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return demand(a) > demand(b); });
        std::vector<int> remaining(sizes.begin(), sizes.end());
        std::vector<long long> ext_load(r_comms, 0);
        std::fill(community.begin(), community.end(), -1);
        bool assigned = true;
        for (int v : order) {
            std::vector<int> best;
            for (int c = 0; c < r_comms; ++c) {
                if (remaining[c] <= 0 || demand_cap(sizes[c]) < demand(v)) continue;
                if (best.empty() || ext_load[c] < ext_load[best.front()]) {
                    best.assign(1, c);
                } else if (ext_load[c] == ext_load[best.front()]) {
                    best.push_back(c);
                }
            }
            if (best.empty()) {
                assigned = false;
                break;
            }
            int c = best[r.below(best.size())];
            community[v] = c;
            --remaining[c];
            ext_load[c] += degree[v] - demand(v);
        }
        if (!assigned) {
            reject_reason = "lfr: no community can host a node's internal degree";
            continue;
        }

        // Balance acceptance: the surplus 2*max - total is exactly the
        // stub count the cross-community matching must strand.
        long long tot_ext = std::accumulate(ext_load.begin(), ext_load.end(), 0LL);
        long long max_ext = *std::max_element(ext_load.begin(), ext_load.end());
        if (2 * max_ext - tot_ext > std::max<long long>(4, tot_ext / 25)) {
            reject_reason = "lfr: cross-community stub budget cannot be balanced";
            continue;
        }
        laid_out = true;
    }
    if (!laid_out) throw generation_error(reject_reason);
    const int r_comms = static_cast<int>(sizes.size());
    auto demand = [&](int v) { return static_cast<int>(std::ceil((1.0 - p.mu) * degree[v])); };

    std::vector<node_set> members(r_comms);
    for (int v = 0; v < n; ++v) members[community[v]].push_back(v);

    // Split each degree into internal and external stubs, fixing parity
    // inside each community and of the global external pool.
    std::vector<int> internal(n), external(n);
    for (int v = 0; v < n; ++v) {
        internal[v] = std::min(demand(v), sizes[community[v]] - 1);
        external[v] = degree[v] - internal[v];
    }
    for (int c = 0; c < r_comms; ++c) {
        long long sum = 0;
        for (int v : members[c]) sum += internal[v];
        if (sum % 2 == 0) continue;
        int pick = -1;
        for (int v : members[c]) // prefer growing an internal stub out of an external one
            if (external[v] > 0 && internal[v] < sizes[c] - 1 && (pick < 0 || degree[v] > degree[pick]))
                pick = v;
        if (pick >= 0) {
            ++internal[pick];
            --external[pick];
        } else {
            // no convertible stub: drop one internal stub instead
            for (int v : members[c])
                if (internal[v] > 0 && (pick < 0 || degree[v] > degree[pick])) pick = v;
            --internal[pick];
            --degree[pick];
        }
    }
    long long ext_sum = std::accumulate(external.begin(), external.end(), 0LL);
    if (ext_sum % 2 == 1) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (external[v] > 0 && (pick < 0 || external[v] > external[pick])) pick = v;
        if (pick >= 0) {
            --external[pick];
            --degree[pick];
        }
    }

    // Wiring.
    std::unordered_set<long long> edge_keys;
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c < r_comms; ++c) {
        std::vector<int> stubs;
        for (int v : members[c])
            for (int i = 0; i < internal[v]; ++i) stubs.push_back(v);
        lfr_detail::match_stubs(std::move(stubs), n, edge_keys, edges,
                                [](int, int) { return true; }, r);
    }
    {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < external[v]; ++i) stubs.push_back(v);
        lfr_detail::match_stubs(std::move(stubs), n, edge_keys, edges,
                                [&](int u, int v) { return community[u] != community[v]; }, r);
    }

    // Connectivity repair: degree-preserving double-edge swaps pulling
    // smaller components into the giant one; isolated nodes get attached
    // directly.
    auto build_adj = [&]() {
        std::vector<std::vector<int>> adj(n);
        for (auto& [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    };
    for (int attempt = 0; attempt < 20 * n; ++attempt) {
        auto adj = build_adj();
        auto comp = lfr_detail::components_of(n, adj);
        int n_comp = *std::max_element(comp.begin(), comp.end()) + 1;
        if (n_comp == 1) break;
        std::vector<long long> comp_size(n_comp, 0);
        for (int v = 0; v < n; ++v) ++comp_size[comp[v]];
        int giant = static_cast<int>(std::max_element(comp_size.begin(), comp_size.end()) -
                                     comp_size.begin());
        int small = giant == 0 ? 1 : 0;
        for (int c = 0; c < n_comp; ++c)
            if (c != giant && comp_size[c] < comp_size[small]) small = c;

        std::vector<std::size_t> in_small, in_giant;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            int c = comp[edges[e].first];
            if (c == small)
                in_small.push_back(e);
            else if (c == giant)
                in_giant.push_back(e);
        }
        if (in_small.empty() || in_giant.empty()) { // edgeless fragment: attach a node directly
            int v = -1;
            for (int u = 0; u < n && v < 0; ++u)
                if (comp[u] == small) v = u;
            int target = -1;
            for (int tries = 0; tries < 2000 && target < 0; ++tries) {
                int u = static_cast<int>(r.below(n));
                if (comp[u] != giant || edge_keys.count(lfr_detail::edge_key(v, u, n))) continue;
                // keep the endpoint under the degree ceiling when possible
                if (tries < 1000 && static_cast<int>(adj[u].size()) >= p.effective_k_max()) continue;
                target = u;
            }
            if (target < 0) throw generation_error("lfr: connectivity repair failed");
            edge_keys.insert(lfr_detail::edge_key(v, target, n));
            edges.emplace_back(v, target);
            continue;
        }
        bool swapped = false;
        for (int tries = 0; tries < 1000 && !swapped; ++tries) {
            std::size_t se = in_small[r.below(in_small.size())];
            std::size_t ge = in_giant[r.below(in_giant.size())];
            auto [a, b] = edges[se];
            auto [cc, dd] = edges[ge];
            if (edge_keys.count(lfr_detail::edge_key(a, cc, n)) ||
                edge_keys.count(lfr_detail::edge_key(b, dd, n)))
                continue;
            // remove (a,b) and (cc,dd); add (a,cc) and (b,dd)
            edge_keys.erase(lfr_detail::edge_key(a, b, n));
            edge_keys.erase(lfr_detail::edge_key(cc, dd, n));
            edge_keys.insert(lfr_detail::edge_key(a, cc, n));
            edge_keys.insert(lfr_detail::edge_key(b, dd, n));
            edges[se] = {a, cc};
            edges[ge] = {b, dd};
            swapped = true;
        }
        if (!swapped) throw generation_error("lfr: connectivity repair failed");
    }
    // Parity fixes and unmatched-stub drops can leave a node under k_min;
    // top it up with fresh edges to under-capacity non-neighbors.
    {
        auto adj = build_adj();
        for (int v = 0; v < n; ++v)
            while (static_cast<int>(adj[v].size()) < p.k_min) {
                int target = -1;
                for (int tries = 0; tries < 4000 && target < 0; ++tries) {
                    int u = static_cast<int>(r.below(n));
                    if (u == v || edge_keys.count(lfr_detail::edge_key(v, u, n))) continue;
                    if (tries < 2000 && static_cast<int>(adj[u].size()) >= p.effective_k_max()) continue;
                    target = u;
                }
                if (target < 0) throw generation_error("lfr: cannot raise a degree to k_min");
                edge_keys.insert(lfr_detail::edge_key(v, target, n));
                edges.emplace_back(v, target);
                adj[v].push_back(target);
                adj[target].push_back(v);
            }
    }

    {
        auto adj = build_adj();
        auto comp = lfr_detail::components_of(n, adj);
        if (*std::max_element(comp.begin(), comp.end()) != 0)
            throw generation_error("lfr: connectivity repair failed");
    }

    planted_graph out;
    out.g = graph::from_edges(n, edges);
    out.communities = std::move(members);
    for (auto& c : out.communities) std::sort(c.begin(), c.end());
    for (const auto& c : out.communities) out.sizes.push_back(static_cast<int>(c.size()));
    return out;
}

// Fraction of edge endpoints that leave their ground-truth community:
// (sum of external stub counts) / (sum of degrees) = cross edges / m.
inline double realized_mixing(const planted_graph& pg) {
    std::vector<int> community(pg.g.node_count(), -1);
    for (std::size_t c = 0; c < pg.communities.size(); ++c)
        for (int v : pg.communities[c]) community[v] = static_cast<int>(c);
    long long cross = 0;
    for (const auto& [u, v] : pg.g.edges())
        if (community[u] != community[v]) ++cross;
    return static_cast<double>(cross) / static_cast<double>(pg.g.edge_count());
}

} // namespace percom
