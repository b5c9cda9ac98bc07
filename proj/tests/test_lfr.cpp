#include "catch_amalgamated.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "helpers.hpp"
#include "percom/errors.hpp"
#include "percom/lfr.hpp"
#include "percom/persistence.hpp"

using namespace percom;

namespace {

void check_shape(const planted_graph& pg, const lfr_params& p) {
    const auto& g = pg.g;
    REQUIRE(g.node_count() == p.n);
    REQUIRE(g.is_connected());

    // simple: edges() already lists unordered pairs; no pair may repeat
    auto edges = g.edges();
    std::set<std::pair<int, int>> uniq(edges.begin(), edges.end());
    REQUIRE(uniq.size() == edges.size());
    for (const auto& [u, v] : edges) REQUIRE(u != v);

    // communities partition V
    std::vector<int> owner(p.n, -1);
    for (std::size_t c = 0; c < pg.communities.size(); ++c)
        for (int v : pg.communities[c]) {
            REQUIRE(owner[v] == -1);
            owner[v] = static_cast<int>(c);
        }
    for (int v = 0; v < p.n; ++v) REQUIRE(owner[v] >= 0);

    // sizes within bounds and consistent
    int s_min = static_cast<int>(std::lround(p.s_min_frac * p.n));
    int s_max = static_cast<int>(std::lround(p.s_max_frac * p.n));
    long long total = 0;
    REQUIRE(pg.sizes.size() == pg.communities.size());
    for (std::size_t c = 0; c < pg.sizes.size(); ++c) {
        REQUIRE(pg.sizes[c] == static_cast<int>(pg.communities[c].size()));
        REQUIRE(pg.sizes[c] >= s_min);
        REQUIRE(pg.sizes[c] <= s_max);
        total += pg.sizes[c];
    }
    REQUIRE(total == p.n);

    // degree bounds
    for (int v = 0; v < p.n; ++v) {
        REQUIRE(g.degree(v) >= p.k_min);
        REQUIRE(g.degree(v) <= p.effective_k_max());
    }
}

} // namespace

TEST_CASE("generator is deterministic per seed and varies across seeds") {
    lfr_params p;
    p.n = 60;
    p.seed = 5;
    auto a = generate_lfr(p);
    auto b = generate_lfr(p);
    REQUIRE(a.g.edges() == b.g.edges());
    REQUIRE(a.communities == b.communities);
    p.seed = 6;
    auto c = generate_lfr(p);
    REQUIRE(a.g.edges() != c.g.edges());
}

TEST_CASE("default-parameter instances have the contracted shape") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        lfr_params p;
        p.n = 100;
        p.seed = seed;
        auto pg = generate_lfr(p);
        check_shape(pg, p);

        // mean degree within 10% of the 0.3n target
        long long deg_sum = 2 * pg.g.edge_count();
        double mean = static_cast<double>(deg_sum) / p.n;
        REQUIRE(mean > 0.9 * 30.0);
        REQUIRE(mean < 1.1 * 30.0);
    }
}

TEST_CASE("realized mixing holds near the requested mu") {
    double total_dev = 0;
    const int trials = 12;
    for (int t = 0; t < trials; ++t) {
        lfr_params p;
        p.n = 100;
        p.mu = 0.1;
        p.seed = 100 + t;
        auto pg = generate_lfr(p);
        double mix = realized_mixing(pg);
        REQUIRE(mix >= 0.0);
        REQUIRE(mix <= 0.2); // sane per-instance band
        total_dev += std::abs(mix - 0.1);
    }
    REQUIRE(total_dev / trials <= 0.03);
}

TEST_CASE("small-mu planted communities score a high persistence") {
    lfr_params p;
    p.n = 50;
    p.mu = 0.1;
    p.seed = 77;
    auto pg = generate_lfr(p);
    for (const auto& community : pg.communities) {
        REQUIRE(is_connected_subset(pg.g, community));
        auto sol = alpha_of(pg.g, community);
        REQUIRE(sol.alpha.value() >= 1.0 - p.mu - 0.1);
    }
}

TEST_CASE("protocol-scale instance plants 2..5 communities") {
    lfr_params p;
    p.n = 200;
    p.mu = 0.1;
    p.seed = 9;
    auto pg = generate_lfr(p);
    check_shape(pg, p);
    REQUIRE(pg.sizes.size() >= 2);
    REQUIRE(pg.sizes.size() <= 5); // sizes in [0.2n, 0.5n] force r in {2..5}
}

TEST_CASE("larger mu raises realized mixing") {
    lfr_params lo, hi;
    lo.n = hi.n = 80;
    lo.mu = 0.1;
    hi.mu = 0.4;
    lo.seed = hi.seed = 3;
    REQUIRE(realized_mixing(generate_lfr(hi)) > realized_mixing(generate_lfr(lo)));
}

TEST_CASE("realized_mixing hand cases") {
    // one community covering everything: no cross edges
    planted_graph pg;
    pg.g = testutil::complete_graph(4);
    pg.communities = {node_set{0, 1, 2, 3}};
    pg.sizes = {4};
    REQUIRE(realized_mixing(pg) == 0.0);

    // two K4 blocks joined by a single bridge: 1 cross edge of 13
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            e.emplace_back(a, b);
            e.emplace_back(4 + a, 4 + b);
        }
    e.emplace_back(3, 4);
    planted_graph two;
    two.g = graph::from_edges(8, e);
    two.communities = {node_set{0, 1, 2, 3}, node_set{4, 5, 6, 7}};
    two.sizes = {4, 4};
    REQUIRE(realized_mixing(two) == Catch::Approx(2.0 / 26.0));
}

TEST_CASE("parameter validation") {
    lfr_params p;
    p.mu = 0.0;
    REQUIRE_THROWS_AS(generate_lfr(p), argument_error);
    lfr_params q;
    q.n = 3;
    REQUIRE_THROWS_AS(generate_lfr(q), argument_error);
    lfr_params r;
    r.k_min = 10;
    r.k_max = 5;
    REQUIRE_THROWS_AS(generate_lfr(r), argument_error);
    lfr_params s;
    s.s_min_frac = 0.6;
    s.s_max_frac = 0.4;
    REQUIRE_THROWS_AS(generate_lfr(s), argument_error);
    lfr_params t;
    t.gamma = 0.5;
    REQUIRE_THROWS_AS(generate_lfr(t), argument_error);
    lfr_params u;
    u.avg_degree_frac = 1.5;
    REQUIRE_THROWS_AS(generate_lfr(u), argument_error);
}

TEST_CASE("infeasible degree demand is reported as a generation error") {
    lfr_params p;
    p.n = 40;
    p.mu = 0.05;
    p.avg_degree_frac = 0.45; // internal demand ~17 exceeds what 0.2n..0.5n groups can host
    p.s_max_frac = 0.25;
    p.s_min_frac = 0.2;
    REQUIRE_THROWS_AS(generate_lfr(p), generation_error);
}

TEST_CASE("mu = 1 wires everything across communities") {
    lfr_params p;
    p.n = 40;
    p.mu = 1.0;
    p.avg_degree_frac = 0.2;
    p.seed = 2;
    auto pg = generate_lfr(p);
    // connectivity repair may re-wire a handful of edges inside a group
    REQUIRE(realized_mixing(pg) >= 0.9);
}
