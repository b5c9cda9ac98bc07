#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "percom/curve.hpp"
#include "percom/graph.hpp"
#include "percom/lfr.hpp"
#include "percom/persistence.hpp"
#include "percom/shrink.hpp"

namespace percom {

using nlohmann::json;

// Numeric-aware label order: all-integer label pairs compare as numbers,
// anything else lexicographically.
inline bool label_less(const std::string& a, const std::string& b) {
    auto as_number = [](const std::string& s, long long& out) {
        if (s.empty()) return false;
        std::size_t pos = 0;
        try {
            out = std::stoll(s, &pos);
        } catch (...) {
            return false;
        }
        return pos == s.size();
    };
    long long x, y;
    if (as_number(a, x) && as_number(b, y)) return x < y;
    return a < b;
}

inline std::vector<std::string> sorted_labels(const graph& g, const node_set& members) {
    std::vector<std::string> out;
    out.reserve(members.size());
    for (int v : members) out.push_back(g.label(v));
    std::sort(out.begin(), out.end(), label_less);
    return out;
}

inline std::string format_alpha(const ratio& a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", a.value());
    return buf;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// --- curve ----------------------------------------------------------------

inline void write_curve_csv(const graph& g, const persistence_curve& c, std::ostream& out) {
    out << "k,alpha,members\n";
    for (int k = c.min_k(); k <= c.max_k(); ++k) {
        const auto& e = c.at(k);
        out << k << "," << format_alpha(e.alpha) << ","
            << join(sorted_labels(g, e.members), "|") << "\n";
    }
}

inline json curve_to_json(const graph& g, const persistence_curve& c) {
    json entries = json::array();
    for (int k = c.min_k(); k <= c.max_k(); ++k) {
        const auto& e = c.at(k);
        entries.push_back({{"k", k},
                           {"alpha", e.alpha.value()},
                           {"members", sorted_labels(g, e.members)}});
    }
    return json{{"n", c.node_count()}, {"entries", entries}};
}

inline json peak_report_json(const persistence_curve& c, const std::vector<int>& peaks) {
    json alphas = json::object();
    for (int k : peaks) alphas[std::to_string(k)] = c.at(k).alpha.value();
    auto first = select_k(peaks, peak_rule::first);
    auto median = select_k(peaks, peak_rule::median);
    return json{{"peaks", peaks},
                {"first", first ? json(*first) : json(nullptr)},
                {"median", median ? json(*median) : json(nullptr)},
                {"alphas", alphas}};
}

// Figure-style line chart: k on x, alpha on y, circle markers on peaks.
// Self-contained deterministic SVG text.
inline void write_curve_svg(const persistence_curve& c, const std::vector<int>& peaks,
                            std::ostream& out) {
    const double W = 800, H = 420, L = 60, R = 20, T = 20, B = 50;
    const double plot_w = W - L - R, plot_h = H - T - B;
    const int k_lo = c.min_k(), k_hi = c.max_k();
    auto fx = [&](double k) { return L + (k - k_lo) / std::max(1.0, double(k_hi - k_lo)) * plot_w; };
    auto fy = [&](double a) { return T + (1.0 - a) * plot_h; };
    char buf[160];

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 420\" "
           "font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"800\" height=\"420\" fill=\"white\"/>\n";
    // axes
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", L,
                  T + plot_h, L + plot_w, T + plot_h);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", L, T,
                  L, T + plot_h);
    out << buf;
    // y ticks at 0, 0.2 .. 1
    for (int i = 0; i <= 5; ++i) {
        double a = i / 5.0, y = fy(a);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.1f</text>\n",
                      L - 4, y, L, y, L - 8, y + 4, a);
        out << buf;
    }
    // x ticks
    int step = std::max(1, (k_hi - k_lo) / 10);
    for (int k = k_lo; k <= k_hi; k += step) {
        double x = fx(k);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%d</text>\n",
                      x, T + plot_h, x, T + plot_h + 4, x, T + plot_h + 18, k);
        out << buf;
    }
    out << "<text x=\"" << (L + plot_w / 2) << "\" y=\"" << (H - 8)
        << "\" text-anchor=\"middle\">k</text>\n";
    out << "<text x=\"16\" y=\"" << (T + plot_h / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (T + plot_h / 2)
        << ")\">alpha</text>\n";
    // curve
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (int k = k_lo; k <= k_hi; ++k) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", fx(k), fy(c.at(k).alpha.value()));
        out << buf;
    }
    out << "\"/>\n";
    // peak markers
    for (int k : peaks) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"#d62728\"/>"
                      "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" fill=\"#d62728\">k=%d</text>\n",
                      fx(k), fy(c.at(k).alpha.value()), fx(k), fy(c.at(k).alpha.value()) - 8, k);
        out << buf;
    }
    out << "</svg>\n";
}

// --- solutions --------------------------------------------------------------

inline json solution_to_json(const graph& g, const community_solution& sol) {
    return json{{"k", sol.members.size()},
                {"alpha", sol.alpha.value()},
                {"alpha_num", sol.alpha.num},
                {"alpha_den", sol.alpha.den},
                {"internal_edges", sol.internal},
                {"external_edges", sol.external},
                {"members", sorted_labels(g, sol.members)}};
}

// --- graphs -----------------------------------------------------------------

inline void write_edge_list(const graph& g, std::ostream& out) {
    for (const auto& [u, v] : g.edges()) out << g.label(u) << " " << g.label(v) << "\n";
}

inline void write_truth(const planted_graph& pg, std::ostream& out) {
    for (const auto& c : pg.communities) out << join(sorted_labels(pg.g, c), " ") << "\n";
}

// --- files ------------------------------------------------------------------

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw argument_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw argument_error("write failed: " + path);
}

inline graph load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw argument_error("cannot open graph file: " + path);
    return parse_edge_list(in);
}

} // namespace percom
