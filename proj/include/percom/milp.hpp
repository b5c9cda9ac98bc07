#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "percom/errors.hpp"
#include "percom/graph.hpp"

namespace percom {

enum class var_kind { binary, continuous };
enum class relation { le, ge, eq };

struct lin_term {
    std::string var;
    long long coef;
};

struct milp_variable {
    std::string name;
    var_kind kind;
    long long lower;
    bool has_upper; // false: +infinity
    long long upper;
};

struct milp_constraint {
    std::string name;
    std::vector<lin_term> terms;
    relation rel;
    long long rhs;
};

// Solver-agnostic linear model: maximize `objective` subject to
// `constraints`, all coefficients integral.
struct milp_model {
    std::vector<milp_variable> variables; // family order: x, z, w, u, h, l, f
    std::vector<lin_term> objective;      // sense: maximize
    std::vector<milp_constraint> constraints;

    void validate() const {
        std::unordered_set<std::string> names;
        for (const auto& v : variables)
            if (!names.insert(v.name).second)
                throw validation_error("milp model: duplicate variable " + v.name);
        auto check = [&](const std::vector<lin_term>& terms, const std::string& where) {
            for (const auto& t : terms)
                if (!names.count(t.var))
                    throw validation_error("milp model: " + where + " references undeclared " + t.var);
        };
        check(objective, "objective");
        for (const auto& c : constraints) check(c.terms, "constraint " + c.name);
    }

    long long count_variables(const std::string& prefix) const {
        long long k = 0;
        for (const auto& v : variables)
            if (v.name.rfind(prefix, 0) == 0) ++k;
        return k;
    }

    long long count_constraints(const std::string& prefix) const {
        long long k = 0;
        for (const auto& c : constraints)
            if (c.name.rfind(prefix, 0) == 0) ++k;
        return k;
    }
};

namespace detail {

inline std::string pair_name(const char* fam, int i, int j) {
    return std::string(fam) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

} // namespace detail

// Linearized maximum-persistence model over internal node indices:
// selection variables x, pair products z (both in) and w (both out), the
// fractional-programming substitution u = 1/denominator with its
// normalization row, big-M products h = u*z and l = u*w, and a
// single-commodity flow block that forces the selected subgraph to be
// connected with the highest-index selected node as source. The big-M
// constant is 1 since u never exceeds 1. Pair variables are emitted once
// per unordered pair; the flow rows are emitted for every ordered pair
// p < j with no reduction.
inline milp_model build_p1(const graph& g, int k) {
    const int n = g.node_count();
    if (n < 2) throw argument_error("build_p1: graph needs at least 2 nodes");
    if (k < 2 || k > n) throw argument_error("build_p1: k must be in [2, n]");
    const long long M = 1;

    milp_model m;
    auto var = [&](std::string name, var_kind kind, long long lo, bool has_up, long long up) {
        m.variables.push_back({std::move(name), kind, lo, has_up, up});
    };
    auto row = [&](std::string name, std::vector<lin_term> terms, relation rel, long long rhs) {
        m.constraints.push_back({std::move(name), std::move(terms), rel, rhs});
    };

    for (int i = 0; i < n; ++i) var("x_" + std::to_string(i), var_kind::binary, 0, true, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) var(detail::pair_name("z", i, j), var_kind::continuous, 0, true, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) var(detail::pair_name("w", i, j), var_kind::continuous, 0, true, 1);
    var("u", var_kind::continuous, 0, true, M);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) var(detail::pair_name("h", i, j), var_kind::continuous, 0, true, M);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) var(detail::pair_name("l", i, j), var_kind::continuous, 0, true, M);
    const auto edges = g.edges();
    for (const auto& [a, b] : edges) {
        var(detail::pair_name("f", a, b), var_kind::continuous, 0, false, 0);
        var(detail::pair_name("f", b, a), var_kind::continuous, 0, false, 0);
    }

    for (const auto& [a, b] : edges) m.objective.push_back({detail::pair_name("h", a, b), 1});

    {
        std::vector<lin_term> terms;
        for (int i = 0; i < n; ++i) terms.push_back({"x_" + std::to_string(i), 1});
        row("card", std::move(terms), relation::eq, k);
    }

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto z = detail::pair_name("z", i, j);
            auto xi = "x_" + std::to_string(i), xj = "x_" + std::to_string(j);
            row(detail::pair_name("z_ub1", i, j), {{z, 1}, {xi, -1}}, relation::le, 0);
            row(detail::pair_name("z_ub2", i, j), {{z, 1}, {xj, -1}}, relation::le, 0);
            row(detail::pair_name("z_lb", i, j), {{z, 1}, {xi, -1}, {xj, -1}}, relation::ge, -1);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto w = detail::pair_name("w", i, j);
            auto xi = "x_" + std::to_string(i), xj = "x_" + std::to_string(j);
            row(detail::pair_name("w_ub1", i, j), {{w, 1}, {xi, 1}}, relation::le, 1);
            row(detail::pair_name("w_ub2", i, j), {{w, 1}, {xj, 1}}, relation::le, 1);
            row(detail::pair_name("w_lb", i, j), {{w, 1}, {xi, 1}, {xj, 1}}, relation::ge, 1);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto h = detail::pair_name("h", i, j);
            auto z = detail::pair_name("z", i, j);
            row(detail::pair_name("h_ub_u", i, j), {{h, 1}, {"u", -1}}, relation::le, 0);
            row(detail::pair_name("h_ub_z", i, j), {{h, 1}, {z, -M}}, relation::le, 0);
            row(detail::pair_name("h_lb", i, j), {{h, 1}, {"u", -1}, {z, -M}}, relation::ge, -M);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto l = detail::pair_name("l", i, j);
            auto w = detail::pair_name("w", i, j);
            row(detail::pair_name("l_ub_u", i, j), {{l, 1}, {"u", -1}}, relation::le, 0);
            row(detail::pair_name("l_ub_w", i, j), {{l, 1}, {w, -M}}, relation::le, 0);
            row(detail::pair_name("l_lb", i, j), {{l, 1}, {"u", -1}, {w, -M}}, relation::ge, -M);
        }

    {
        // sum over edges of (u - l_ij) = 1
        std::vector<lin_term> terms{{"u", static_cast<long long>(edges.size())}};
        for (const auto& [a, b] : edges) terms.push_back({detail::pair_name("l", a, b), -1});
        row("norm", std::move(terms), relation::eq, 1);
    }

    for (int i = 0; i < n; ++i) {
        std::vector<lin_term> terms;
        for (int j : g.neighbors(i)) terms.push_back({detail::pair_name("f", i, j), 1});
        for (int j = 0; j < n; ++j)
            if (j != i) terms.push_back({detail::pair_name("z", std::min(i, j), std::max(i, j)), -1});
        row("cap_" + std::to_string(i), std::move(terms), relation::le, 0);
    }

    for (int p = 0; p < n; ++p)
        for (int j = p + 1; j < n; ++j) {
            std::vector<lin_term> terms;
            for (int i : g.neighbors(p)) {
                terms.push_back({detail::pair_name("f", i, p), 1});
                terms.push_back({detail::pair_name("f", p, i), -1});
            }
            terms.push_back({"x_" + std::to_string(p), -1});
            terms.push_back({"x_" + std::to_string(j), -(static_cast<long long>(n) - 2)});
            row(detail::pair_name("flow", p, j), std::move(terms), relation::ge,
                -(static_cast<long long>(n) - 2));
        }

    m.validate();
    return m;
}

// CPLEX-style LP text: Maximize / Subject To / Bounds / Binaries / End.
// Ordering follows the model exactly, so output is deterministic.
inline void write_lp(const milp_model& m, std::ostream& out) {
    auto write_terms = [&](const std::vector<lin_term>& terms) {
        bool first = true;
        for (const auto& t : terms) {
            long long c = t.coef;
            if (c == 0) continue;
            if (first) {
                if (c == 1)
                    out << t.var;
                else if (c == -1)
                    out << "- " << t.var;
                else
                    out << c << " " << t.var;
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
                long long a = c < 0 ? -c : c;
                if (a == 1)
                    out << t.var;
                else
                    out << a << " " << t.var;
            }
        }
        if (first) out << "0 " << m.variables.front().name;
    };

    out << "Maximize\n obj: ";
    write_terms(m.objective);
    out << "\nSubject To\n";
    for (const auto& c : m.constraints) {
        out << " " << c.name << ": ";
        write_terms(c.terms);
        switch (c.rel) {
        case relation::le: out << " <= "; break;
        case relation::ge: out << " >= "; break;
        case relation::eq: out << " = "; break;
        }
        out << c.rhs << "\n";
    }
    out << "Bounds\n";
    for (const auto& v : m.variables) {
        if (v.kind == var_kind::binary) continue;
        if (v.has_upper)
            out << " " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
        else
            out << " " << v.name << " >= " << v.lower << "\n";
    }
    out << "Binaries\n";
    for (const auto& v : m.variables)
        if (v.kind == var_kind::binary) out << " " << v.name << "\n";
    out << "End\n";
}

inline std::string write_lp(const milp_model& m) {
    std::ostringstream out;
    write_lp(m, out);
    return out.str();
}

// Parses a plain `name value` solution listing (one pair per line, blank
// lines and lines starting with `#` skipped), as produced by the external
// solver hook.
inline std::unordered_map<std::string, double> parse_solution_listing(std::istream& in) {
    std::unordered_map<std::string, double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue;
        if (name[0] == '#') continue;
        double value;
        if (!(ls >> value))
            throw parse_error("solution listing line " + std::to_string(lineno) + ": expected `name value`");
        values[name] = value;
    }
    return values;
}

// Selected members (internal indices) from a solution listing.
inline node_set selection_from_solution(const std::unordered_map<std::string, double>& values, int n) {
    node_set members;
    for (int i = 0; i < n; ++i) {
        auto it = values.find("x_" + std::to_string(i));
        if (it != values.end() && it->second > 0.5) members.push_back(i);
    }
    return members;
}

} // namespace percom
