#pragma once

#include <cstdint>
#include <queue>
#include <thread>
#include <vector>

#include "percom/errors.hpp"
#include "percom/graph.hpp"
#include "percom/persistence.hpp"
#include "percom/rng.hpp"

namespace percom {

// Best alpha found per subset size k in {2..n-1}, with the witnessing
// subset. Slots never reached by a merge keep alpha = 0 and no witness,
// matching the all-zero initialization of the search.
class persistence_curve {
public:
    struct entry {
        ratio alpha = ratio::zero();
        node_set members;
        int restart = -1;

        bool has_witness() const { return !members.empty(); }
    };

    explicit persistence_curve(int n = 0) : n_(n), entries_(n >= 3 ? n - 2 : 0) {}

    int node_count() const { return n_; }
    int min_k() const { return 2; }
    int max_k() const { return n_ - 1; }

    const entry& at(int k) const { return entries_[static_cast<std::size_t>(k - 2)]; }

    // Installs a candidate if it beats the slot under the total order
    // (alpha desc, members lex asc, restart asc).
    void offer(int k, const ratio& alpha, const node_set& members, int restart) {
        entry& e = entries_[static_cast<std::size_t>(k - 2)];
        if (alpha != e.alpha) {
            if (alpha > e.alpha) e = entry{alpha, members, restart};
            return;
        }
        if (lex_less(members, e.members))
            e = entry{alpha, members, restart};
        else if (members == e.members && restart < e.restart)
            e.restart = restart;
    }

    // Pointwise reduction with the same total order; associative and
    // commutative, so parallel and serial restart schedules agree.
    void merge_from(const persistence_curve& other) {
        for (int k = min_k(); k <= max_k(); ++k) {
            const entry& e = other.at(k);
            if (e.has_witness()) offer(k, e.alpha, e.members, e.restart);
        }
    }

    // True when every alpha of `other` is <= the matching alpha here.
    bool dominates(const persistence_curve& other) const {
        for (int k = min_k(); k <= max_k(); ++k)
            if (at(k).alpha < other.at(k).alpha) return false;
        return true;
    }

private:
    int n_ = 0;
    std::vector<entry> entries_;
};

namespace detail {

struct merge_candidate {
    ratio alpha;
    int q = -1;
    int l = -1;
};

// Max-heap order: higher alpha first, ties to the lexicographically
// smallest merged member list.
struct candidate_worse {
    const merge_partition* p;
    bool operator()(const merge_candidate& a, const merge_candidate& b) const {
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return lex_less_union(p->at(b.q).members, p->at(b.l).members,
                              p->at(a.q).members, p->at(a.l).members);
    }
};

/// One merge pass: max_random_step uniformly random feasible merges (drawn
// as uniform boundary edges), then greedy best-alpha merges to a single
// cluster. Records every intermediate cluster size into `curve`.
inline void shrink_pass(const graph& g, const std::vector<std::pair<int, int>>& edges,
                        int max_random_step, rng& r, int restart, persistence_curve& curve) {
    const int n = g.node_count();
    merge_partition p(g);

    auto record = [&](int id) {
        const auto& c = p.at(id);
        int k = static_cast<int>(c.members.size());
        if (k >= 2 && k <= n - 1) {
            long long den = c.e_in + c.e_out;
            curve.offer(k, den > 0 ? ratio(c.e_in, den) : ratio::one(), c.members, restart);
        }
    };

    int random_left = max_random_step;
    while (random_left > 0 && p.alive_count() > 1) {
        int cq = -1, cl = -1;
        for (int attempt = 0; attempt < 64; ++attempt) {
            const auto& e = edges[r.below(edges.size())];
            int a = p.cluster_of_node(e.first), b = p.cluster_of_node(e.second);
            if (a != b) {
                cq = a;
                cl = b;
                break;
            }
        }
        if (cq < 0) {
            // Rejection stalled: draw uniformly from the explicit boundary list.
            std::vector<std::pair<int, int>> boundary;
            for (const auto& e : edges) {
                int a = p.cluster_of_node(e.first), b = p.cluster_of_node(e.second);
                if (a != b) boundary.emplace_back(a, b);
            }
            const auto& pick = boundary[r.below(boundary.size())];
            cq = pick.first;
            cl = pick.second;
        }
        record(p.apply_merge(cq, cl));
        --random_left;
    }

    // Greedy phase with a lazily invalidated heap. Clusters are immutable
    // once created, so an entry is valid exactly when both ids are alive.
    std::priority_queue<merge_candidate, std::vector<merge_candidate>, candidate_worse>
        heap(candidate_worse{&p});
    for (int q : p.alive_ids())
        for (const auto& [l, cnt] : p.at(q).adj) {
            (void)cnt;
            if (q < l && p.alive(l)) heap.push({p.merge_alpha(q, l), q, l});
        }

    while (p.alive_count() > 1) {
        merge_candidate top = heap.top();
        heap.pop();
        if (!p.alive(top.q) || !p.alive(top.l)) continue;
        int id = p.apply_merge(top.q, top.l);
        record(id);
        for (const auto& [l, cnt] : p.at(id).adj) {
            (void)cnt;
            heap.push({p.merge_alpha(id, l), id, l});
        }
    }
}

} // namespace detail

// Random Shrink: max_start independent randomized-then-greedy merge passes
// from the singleton partition, keeping the best subset seen for every
// size k. Restarts use derived streams seed ^ restart and may run on
// `threads` workers; the reduction order does not affect the result.
inline persistence_curve random_shrink(const graph& g, int max_start, int max_random_step,
                                       std::uint64_t seed, int threads = 1) {
    const int n = g.node_count();
    if (max_start < 1) throw argument_error("random_shrink: max_start must be >= 1");
    if (max_random_step < 0 || max_random_step > n - 2)
        throw argument_error("random_shrink: max_random_step must be in [0, n-2]");
    if (threads < 1) threads = 1;

    const auto edges = g.edges();
    persistence_curve curve(n);

    auto run_range = [&](int lo, int hi, persistence_curve& out) {
        for (int s = lo; s < hi; ++s) {
            rng r = rng::stream(seed, static_cast<std::uint64_t>(s));
            detail::shrink_pass(g, edges, max_random_step, r, s, out);
        }
    };

    if (threads == 1 || max_start == 1) {
        run_range(0, max_start, curve);
        return curve;
    }

    int workers = std::min(threads, max_start);
    std::vector<persistence_curve> parts(workers, persistence_curve(n));
    std::vector<std::thread> pool;
    int chunk = (max_start + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int lo = w * chunk, hi = std::min(max_start, lo + chunk);
        pool.emplace_back(run_range, lo, hi, std::ref(parts[w]));
    }
    for (auto& t : pool) t.join();
    for (const auto& part : parts) curve.merge_from(part);
    return curve;
}

} // namespace percom
