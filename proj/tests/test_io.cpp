#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "percom/curve.hpp"
#include "percom/errors.hpp"
#include "percom/io.hpp"

using namespace percom;

TEST_CASE("label_less orders numerically when possible") {
    REQUIRE(label_less("2", "10"));
    REQUIRE_FALSE(label_less("10", "2"));
    REQUIRE_FALSE(label_less("7", "7"));
    REQUIRE(label_less("-3", "1"));
    // non-numeric labels fall back to plain string order
    REQUIRE(label_less("a10", "a2"));
    REQUIRE(label_less("alice", "bob"));
    // mixed: numeric parse fails for one side, so string order decides
    REQUIRE(label_less("1", "x"));
    REQUIRE(label_less("12ab", "12abc"));  // neither parses as a number
}

TEST_CASE("sorted_labels uses numeric order") {
    auto g = parse_edge_list("10 2\n2 9\n9 10\n");
    auto labels = sorted_labels(g, {0, 1, 2});
    REQUIRE(labels == std::vector<std::string>{"2", "9", "10"});
}

TEST_CASE("format_alpha is compact") {
    REQUIRE(format_alpha(ratio(3, 5)) == "0.6");
    REQUIRE(format_alpha(ratio(1, 3)) == "0.333333333333");
    REQUIRE(format_alpha(ratio::zero()) == "0");
    REQUIRE(format_alpha(ratio::one()) == "1");
}

TEST_CASE("curve csv golden output") {
    auto g = testutil::path_graph(5); // labels 1..5
    persistence_curve c(5);
    c.offer(2, ratio(1, 2), {0, 1}, 0);
    c.offer(3, ratio(2, 3), {1, 2, 3}, 1);
    c.offer(4, ratio(3, 4), {0, 1, 2, 3}, 0);
    std::ostringstream out;
    write_curve_csv(g, c, out);
    REQUIRE(out.str() ==
            "k,alpha,members\n"
            "2,0.5,1|2\n"
            "3,0.666666666667,2|3|4\n"
            "4,0.75,1|2|3|4\n");
}

TEST_CASE("curve json carries every entry") {
    auto g = testutil::path_graph(4);
    persistence_curve c(4);
    c.offer(2, ratio(1, 2), {2, 3}, 0);
    c.offer(3, ratio(2, 3), {1, 2, 3}, 0);
    auto j = curve_to_json(g, c);
    REQUIRE(j["n"] == 4);
    REQUIRE(j["entries"].size() == 2);
    REQUIRE(j["entries"][0]["k"] == 2);
    REQUIRE(j["entries"][0]["alpha"].get<double>() == Catch::Approx(0.5));
    REQUIRE(j["entries"][0]["members"] == std::vector<std::string>{"3", "4"});
    REQUIRE(j["entries"][1]["members"] == std::vector<std::string>{"2", "3", "4"});
}

TEST_CASE("peak report json") {
    persistence_curve c(8);
    for (int k = 2; k <= 7; ++k) c.offer(k, ratio(k == 4 ? 9 : k, 12), {0, 1}, 0);
    auto peaks = find_peaks(c);
    REQUIRE(peaks == std::vector<int>{4});
    auto j = peak_report_json(c, peaks);
    REQUIRE(j["peaks"] == std::vector<int>{4});
    REQUIRE(j["first"] == 4);
    REQUIRE(j["median"] == 4);
    REQUIRE(j["alphas"]["4"].get<double>() == Catch::Approx(0.75));

    auto none = peak_report_json(c, {});
    REQUIRE(none["first"].is_null());
    REQUIRE(none["median"].is_null());
    REQUIRE(none["peaks"].empty());
}

TEST_CASE("svg output is well formed and marks peaks") {
    persistence_curve c(10);
    for (int k = 2; k <= 9; ++k) c.offer(k, ratio(k == 5 ? 8 : 2, 10), {0, 1}, 0);
    auto peaks = find_peaks(c);
    std::ostringstream out;
    write_curve_svg(c, peaks, out);
    auto svg = out.str();
    REQUIRE(svg.find("<svg") == 0);
    REQUIRE(svg.find("</svg>") != std::string::npos);
    REQUIRE(svg.find("<polyline") != std::string::npos);
    REQUIRE(svg.find("<circle") != std::string::npos);
    REQUIRE(svg.find("k=5") != std::string::npos);
    // deterministic
    std::ostringstream again;
    write_curve_svg(c, peaks, again);
    REQUIRE(svg == again.str());
}

TEST_CASE("solution json carries the exact rational") {
    auto g = testutil::load_karate();
    node_set s;
    for (const char* l : {"5", "6", "7", "11", "17"}) s.push_back(g.index_of(l));
    std::sort(s.begin(), s.end());
    auto j = solution_to_json(g, alpha_of(g, s));
    REQUIRE(j["k"] == 5);
    REQUIRE(j["alpha"].get<double>() == Catch::Approx(0.6));
    REQUIRE(j["alpha_num"] == 6);
    REQUIRE(j["alpha_den"] == 10);
    REQUIRE(j["internal_edges"] == 6);
    REQUIRE(j["external_edges"] == 4);
    REQUIRE(j["members"] == std::vector<std::string>{"5", "6", "7", "11", "17"});
}

TEST_CASE("edge list round trip preserves the graph") {
    rng r(3);
    auto g = testutil::random_connected_graph(12, 0.3, r);
    std::ostringstream out;
    write_edge_list(g, out);
    auto back = parse_edge_list(out.str());
    REQUIRE(back.node_count() == g.node_count());
    REQUIRE(back.edge_count() == g.edge_count());
    // same edges up to label identity
    std::set<std::pair<std::string, std::string>> a, b;
    for (auto [u, v] : g.edges()) {
        auto lu = g.label(u), lv = g.label(v);
        a.insert({std::min(lu, lv), std::max(lu, lv)});
    }
    for (auto [u, v] : back.edges()) {
        auto lu = back.label(u), lv = back.label(v);
        b.insert({std::min(lu, lv), std::max(lu, lv)});
    }
    REQUIRE(a == b);
}

TEST_CASE("truth file lists one community per line") {
    planted_graph pg;
    pg.g = graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    pg.communities = {node_set{0, 1}, node_set{2, 3, 4}};
    pg.sizes = {2, 3};
    std::ostringstream out;
    write_truth(pg, out);
    REQUIRE(out.str() == "1 2\n3 4 5\n");
}

TEST_CASE("file helpers surface IO failures") {
    REQUIRE_THROWS_AS(load_graph_file("data/definitely_missing_file.txt"), argument_error);
    REQUIRE_THROWS_AS(write_text_file("/nonexistent-dir/file.txt", "x"), argument_error);

    auto tmp = std::string("/tmp/percom_io_test.txt");
    write_text_file(tmp, "a b\nb c\n");
    auto g = load_graph_file(tmp);
    REQUIRE(g.node_count() == 3);
    std::remove(tmp.c_str());
}
