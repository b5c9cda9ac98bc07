#pragma once

#include <optional>
#include <string>
#include <vector>

#include "percom/errors.hpp"
#include "percom/shrink.hpp"

namespace percom {

// Interior strict local maxima of the curve, ascending. A plateau that
// rises on the left and falls on the right counts once, at its smallest
// k. The endpoints k=2 and k=n-1 are never peaks.
inline std::vector<int> find_peaks(const persistence_curve& c) {
    const int lo = c.min_k(), hi = c.max_k();
    if (hi - lo + 1 < 3) throw argument_error("find_peaks: curve has fewer than 3 points");

    std::vector<int> peaks;
    int run_start = lo;
    bool rising = false; // alpha strictly rose into the current run
    for (int k = lo + 1; k <= hi + 1; ++k) {
        if (k <= hi && c.at(k).alpha == c.at(run_start).alpha) continue;
        bool falling = k <= hi && c.at(k).alpha < c.at(run_start).alpha;
        if (rising && falling && run_start > lo) peaks.push_back(run_start);
        if (k <= hi) {
            rising = c.at(k).alpha > c.at(run_start).alpha;
            run_start = k;
        }
    }
    return peaks;
}

enum class peak_rule { first, median };

inline peak_rule parse_peak_rule(const std::string& rule) {
    if (rule == "first") return peak_rule::first;
    if (rule == "median") return peak_rule::median;
    throw argument_error("unknown peak selection rule: " + rule);
}

// `first` picks the smallest peak; `median` picks the element at the
// 1-based position floor((l+1)/2) of the ascending peak list.
inline std::optional<int> select_k(const std::vector<int>& peaks, peak_rule rule) {
    if (peaks.empty()) return std::nullopt;
    if (rule == peak_rule::first) return peaks.front();
    std::size_t m = (peaks.size() + 1) / 2; // 1-based median index
    return peaks[m - 1];
}

inline std::optional<int> select_k(const std::vector<int>& peaks, const std::string& rule) {
    return select_k(peaks, parse_peak_rule(rule));
}

struct truth_report {
    bool first_hit = false;
    bool median_hit = false;
    bool at_least_one = false;
    bool all_covered = false;
};

// How well the detected peaks recover the planted community sizes.
inline truth_report score_against_truth(const std::vector<int>& peaks,
                                        const std::vector<int>& truth_sizes) {
    if (truth_sizes.empty()) throw argument_error("score_against_truth: empty truth");
    auto in_truth = [&](int k) {
        return std::find(truth_sizes.begin(), truth_sizes.end(), k) != truth_sizes.end();
    };
    truth_report rep;
    if (auto f = select_k(peaks, peak_rule::first)) rep.first_hit = in_truth(*f);
    if (auto m = select_k(peaks, peak_rule::median)) rep.median_hit = in_truth(*m);
    for (int k : peaks)
        if (in_truth(k)) {
            rep.at_least_one = true;
            break;
        }
    rep.all_covered = true;
    for (int k : truth_sizes)
        if (std::find(peaks.begin(), peaks.end(), k) == peaks.end()) {
            rep.all_covered = false;
            break;
        }
    return rep;
}

} // namespace percom
