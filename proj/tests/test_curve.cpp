#include "catch_amalgamated.hpp"

#include <vector>

#include "helpers.hpp"
#include "percom/curve.hpp"
#include "percom/errors.hpp"

using namespace percom;

namespace {

// Curve over k in {2..n-1} from a plain alpha list (witness content is
// irrelevant to peak finding).
persistence_curve curve_from(const std::vector<ratio>& alphas) {
    int n = static_cast<int>(alphas.size()) + 2;
    persistence_curve c(n);
    for (int k = 2; k <= n - 1; ++k) c.offer(k, alphas[static_cast<std::size_t>(k - 2)], {0, 1}, 0);
    return c;
}

} // namespace

TEST_CASE("monotone curves have no peaks") {
    auto inc = curve_from({{1, 10}, {2, 10}, {3, 10}, {4, 10}, {5, 10}});
    REQUIRE(find_peaks(inc).empty());
    auto dec = curve_from({{5, 10}, {4, 10}, {3, 10}, {2, 10}, {1, 10}});
    REQUIRE(find_peaks(dec).empty());
    auto flat = curve_from({{1, 2}, {1, 2}, {1, 2}, {1, 2}});
    REQUIRE(find_peaks(flat).empty());
}

TEST_CASE("interior strict maxima are reported ascending") {
    // k:      2       3       4       5       6       7       8
    auto c = curve_from({{1, 10}, {4, 10}, {2, 10}, {3, 10}, {6, 10}, {5, 10}, {9, 10}});
    REQUIRE(find_peaks(c) == std::vector<int>{3, 6});
}

TEST_CASE("plateaus report their smallest k") {
    // rise to 5/10 spanning k=4..6, then fall
    auto c = curve_from({{1, 10}, {3, 10}, {5, 10}, {5, 10}, {5, 10}, {2, 10}});
    REQUIRE(find_peaks(c) == std::vector<int>{4});
    // plateau that keeps rising afterwards is not a peak
    auto c2 = curve_from({{1, 10}, {3, 10}, {3, 10}, {4, 10}, {2, 10}});
    REQUIRE(find_peaks(c2) == std::vector<int>{5});
}

TEST_CASE("endpoints are never peaks") {
    // high start and high end, dip in the middle: only the interior max at
    // k=4 counts; k=2 and k=n-1 are excluded by definition
    auto c = curve_from({{9, 10}, {1, 10}, {6, 10}, {1, 10}, {9, 10}});
    REQUIRE(find_peaks(c) == std::vector<int>{4});
    // equal-representation tie across the boundary: 9/10 then falls
    auto c2 = curve_from({{9, 10}, {18, 20}, {8, 10}, {2, 10}, {1, 20}});
    // plateau starts at the endpoint k=2, so its smallest k is excluded
    REQUIRE(find_peaks(c2).empty());
}

TEST_CASE("peaks are interior and sorted on random curves") {
    rng r(17);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 5 + static_cast<int>(r.below(20));
        std::vector<ratio> alphas;
        for (int k = 2; k <= n - 1; ++k) alphas.push_back(ratio(static_cast<long long>(r.below(8)), 7));
        auto c = curve_from(alphas);
        auto peaks = find_peaks(c);
        REQUIRE(std::is_sorted(peaks.begin(), peaks.end()));
        for (std::size_t i = 1; i < peaks.size(); ++i) REQUIRE(peaks[i - 1] < peaks[i]);
        for (int p : peaks) {
            REQUIRE(p >= 3);
            REQUIRE(p <= n - 2);
            REQUIRE(c.at(p).alpha > c.at(p - 1).alpha);
            // strictly above the first differing alpha to the right
            int q = p + 1;
            while (q <= n - 1 && c.at(q).alpha == c.at(p).alpha) ++q;
            REQUIRE(q <= n - 1);
            REQUIRE(c.at(p).alpha > c.at(q).alpha);
        }
    }
}

TEST_CASE("curves need at least three points") {
    persistence_curve tiny(4); // k in {2,3}
    tiny.offer(2, ratio(1, 2), {0, 1}, 0);
    tiny.offer(3, ratio(2, 3), {0, 1, 2}, 0);
    REQUIRE_THROWS_AS(find_peaks(tiny), argument_error);
}

TEST_CASE("select_k applies the first and median rules") {
    REQUIRE(select_k({5, 19}, peak_rule::first) == 5);
    REQUIRE(select_k({5, 19}, peak_rule::median) == 5); // l=2 -> m=1, 1-based
    REQUIRE(select_k({5, 11, 41}, peak_rule::median) == 11);
    REQUIRE(select_k({5, 11, 41}, peak_rule::first) == 5);
    REQUIRE(select_k({7}, peak_rule::median) == 7);
    REQUIRE(select_k({2, 4, 6, 8}, peak_rule::median) == 4); // l=4 -> m=2
    REQUIRE_FALSE(select_k({}, peak_rule::first).has_value());
    REQUIRE_FALSE(select_k({}, peak_rule::median).has_value());

    REQUIRE(select_k({5, 19}, "first") == 5);
    REQUIRE(select_k({5, 11, 41}, "median") == 11);
    REQUIRE_THROWS_AS(parse_peak_rule("mean"), argument_error);
    REQUIRE_THROWS_AS(select_k({1, 2}, "mean"), argument_error);
}

TEST_CASE("first rule never exceeds the median rule") {
    rng r(23);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<int> peaks;
        int v = 2;
        for (int i = 0, len = 1 + static_cast<int>(r.below(6)); i < len; ++i)
            peaks.push_back(v += 1 + static_cast<int>(r.below(5)));
        auto f = select_k(peaks, peak_rule::first);
        auto m = select_k(peaks, peak_rule::median);
        REQUIRE(f.has_value());
        REQUIRE(m.has_value());
        REQUIRE(*f <= *m);
    }
}

TEST_CASE("score_against_truth booleans") {
    auto all = score_against_truth({20, 30, 50}, {20, 30, 50});
    REQUIRE(all.first_hit);
    REQUIRE(all.median_hit);
    REQUIRE(all.at_least_one);
    REQUIRE(all.all_covered);

    auto none = score_against_truth({4, 9}, {20, 30});
    REQUIRE_FALSE(none.first_hit);
    REQUIRE_FALSE(none.median_hit);
    REQUIRE_FALSE(none.at_least_one);
    REQUIRE_FALSE(none.all_covered);

    auto partial = score_against_truth({10, 20, 40}, {20, 25});
    REQUIRE_FALSE(partial.first_hit);  // first = 10
    REQUIRE(partial.median_hit);       // median = 20
    REQUIRE(partial.at_least_one);
    REQUIRE_FALSE(partial.all_covered); // 25 missing

    auto empty_peaks = score_against_truth({}, {20});
    REQUIRE_FALSE(empty_peaks.first_hit);
    REQUIRE_FALSE(empty_peaks.at_least_one);
    REQUIRE_FALSE(empty_peaks.all_covered);

    REQUIRE_THROWS_AS(score_against_truth({5}, {}), argument_error);
}

TEST_CASE("adding peaks never retracts coverage") {
    rng r(29);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<int> truth{5, 9, 14};
        std::vector<int> peaks;
        for (int v = 3; v < 20; ++v)
            if (r.below(3) == 0) peaks.push_back(v);
        auto before = score_against_truth(peaks, truth);
        // insert one more peak anywhere
        int extra = 3 + static_cast<int>(r.below(17));
        if (std::find(peaks.begin(), peaks.end(), extra) == peaks.end()) {
            peaks.insert(std::lower_bound(peaks.begin(), peaks.end(), extra), extra);
            auto after = score_against_truth(peaks, truth);
            if (before.at_least_one) REQUIRE(after.at_least_one);
            if (before.all_covered) REQUIRE(after.all_covered);
        }
    }
}
