// Command-line front end: curve, optimize, exact, export-milp, generate,
// benchmark. Exit codes: 0 success, 1 domain error, 2 usage or IO error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "percom/curve.hpp"
#include "percom/exact.hpp"
#include "percom/graph.hpp"
#include "percom/io.hpp"
#include "percom/lfr.hpp"
#include "percom/local_search.hpp"
#include "percom/milp.hpp"
#include "percom/persistence.hpp"
#include "percom/shrink.hpp"

namespace {

using percom::json;

void emit_json(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        percom::write_text_file(out_path, text);
}

std::string run_command_capture(const std::string& cmd) {
    std::string out;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) throw percom::domain_error("failed to launch solver command: " + cmd);
    char buf[4096];
    std::size_t nr;
    while ((nr = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, nr);
    int rc = ::pclose(p);
    if (rc != 0)
        throw percom::domain_error("solver command exited with status " + std::to_string(rc));
    return out;
}

double curve_sum(const percom::persistence_curve& c) {
    double s = 0;
    for (int k = c.min_k(); k <= c.max_k(); ++k) s += c.at(k).alpha.value();
    return s;
}

struct curve_opts {
    std::string graph_path, out_prefix = "curve";
    int max_start = 100, max_random_step = -1, threads = 1;
    std::uint64_t seed = 1;
};

void cmd_curve(const curve_opts& o) {
    percom::graph g = percom::load_graph_file(o.graph_path);
    int step = o.max_random_step < 0 ? g.node_count() / 10 : o.max_random_step;
    auto curve = percom::random_shrink(g, o.max_start, step, o.seed, o.threads);
    auto peaks = percom::find_peaks(curve);

    std::ostringstream csv;
    percom::write_curve_csv(g, curve, csv);
    percom::write_text_file(o.out_prefix + ".csv", csv.str());
    percom::write_text_file(o.out_prefix + "_peaks.json",
                            percom::peak_report_json(curve, peaks).dump(2) + "\n");
    std::ostringstream svg;
    percom::write_curve_svg(curve, peaks, svg);
    percom::write_text_file(o.out_prefix + ".svg", svg.str());

    json summary{{"n", g.node_count()},
                 {"m", g.edge_count()},
                 {"peaks", peaks},
                 {"outputs",
                  {o.out_prefix + ".csv", o.out_prefix + "_peaks.json", o.out_prefix + ".svg"}}};
    std::cout << summary.dump(2) << "\n";
}

struct optimize_opts {
    std::string graph_path, method = "rsi", out_path;
    int k = 0;
    percom::search_params params;
};

void cmd_optimize(const optimize_opts& o) {
    percom::graph g = percom::load_graph_file(o.graph_path);
    if (o.k < 2 || o.k > g.node_count() - 1)
        throw percom::argument_error("k must be in [2, n-1]");

    percom::community_solution sol;
    json trace{{"seed", o.params.seed}};
    if (o.method == "rsi" || o.method == "rsvns") {
        auto curve = percom::random_shrink(g, o.params.max_start_shrink,
                                           o.params.effective_random_step(g.node_count()),
                                           o.params.seed, o.params.threads);
        trace["shrink_alpha"] = curve.at(o.k).alpha.value();
        trace["max_start_shrink"] = o.params.max_start_shrink;
        sol = percom::rsi_from_curve(g, o.k, curve, o.params);
        if (o.method == "rsvns") {
            trace["rsi_alpha"] = sol.alpha.value();
            trace["max_start_vns"] = o.params.max_start_vns;
            sol = percom::rsvns_from_base(g, sol, o.params);
        }
    } else if (o.method == "crr") {
        trace["max_start_crr"] = o.params.max_start_crr;
        trace["min_distance"] = o.params.min_distance;
        sol = percom::crr(g, o.k, o.params);
    } else {
        throw percom::argument_error("unknown method: " + o.method);
    }

    json j = percom::solution_to_json(g, sol);
    j["method"] = o.method;
    j["trace"] = trace;
    emit_json(j, o.out_path);
}

struct exact_opts {
    std::string graph_path, out_path;
    int k = 0;
    bool force = false;
};

void cmd_exact(const exact_opts& o) {
    percom::graph g = percom::load_graph_file(o.graph_path);
    if (o.k < 2 || o.k > g.node_count() - 1)
        throw percom::argument_error("k must be in [2, n-1]");
    if (g.node_count() > 40 && !o.force)
        throw percom::domain_error("refusing exhaustive enumeration for n = " +
                                   std::to_string(g.node_count()) +
                                   " > 40; pass --force to run anyway");
    auto res = percom::exact_max_persistence(g, o.k);
    json j = percom::solution_to_json(g, res.best);
    j["method"] = "exact";
    j["enumerated"] = res.enumerated;
    emit_json(j, o.out_path);
}

struct milp_opts {
    std::string graph_path, out_path, solver_cmd;
    int k = 0;
};

void cmd_export_milp(const milp_opts& o) {
    percom::graph g = percom::load_graph_file(o.graph_path);
    if (o.k < 2 || o.k > g.node_count())
        throw percom::argument_error("k must be in [2, n]");
    auto model = percom::build_p1(g, o.k);
    percom::write_text_file(o.out_path, percom::write_lp(model));

    json j{{"lp_file", o.out_path},
           {"variables", model.variables.size()},
           {"constraints", model.constraints.size()}};

    if (!o.solver_cmd.empty()) {
        std::string listing = run_command_capture(o.solver_cmd + " " + o.out_path);
        std::istringstream in(listing);
        auto values = percom::parse_solution_listing(in);
        auto members = percom::selection_from_solution(values, g.node_count());
        if (static_cast<int>(members.size()) != o.k)
            throw percom::domain_error("solver returned a selection of size " +
                                       std::to_string(members.size()));
        auto sol = percom::alpha_of(g, members);
        j["solution"] = percom::solution_to_json(g, sol);
        auto obj = values.find("__objective__");
        if (obj != values.end()) j["solver_objective"] = obj->second;
    }
    emit_json(j, "");
}

struct generate_opts {
    percom::lfr_params params;
    int count = 1, threads = 1;
    std::string out_dir = ".";
    bool emit_truth = false;
};

void cmd_generate(const generate_opts& o) {
    o.params.validate();
    if (o.count < 1) throw percom::argument_error("count must be >= 1");
    std::filesystem::create_directories(o.out_dir);

    std::vector<percom::planted_graph> instances(o.count);
    std::vector<std::exception_ptr> failures(o.count);
    int workers = std::max(1, std::min(o.threads, o.count));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < o.count; i += workers) {
                try {
                    percom::lfr_params p = o.params;
                    p.seed = o.params.seed + static_cast<std::uint64_t>(i);
                    instances[i] = percom::generate_lfr(p);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    char mu_buf[32];
    std::snprintf(mu_buf, sizeof mu_buf, "%g", o.params.mu);
    json manifest{{"params",
                   {{"n", o.params.n},
                    {"gamma", o.params.gamma},
                    {"beta", o.params.beta},
                    {"mu", o.params.mu},
                    {"avg_degree_frac", o.params.avg_degree_frac},
                    {"k_min", o.params.k_min},
                    {"k_max", o.params.effective_k_max()},
                    {"s_min_frac", o.params.s_min_frac},
                    {"s_max_frac", o.params.s_max_frac},
                    {"seed", o.params.seed},
                    {"count", o.count}}},
                  {"instances", json::array()}};

    for (int i = 0; i < o.count; ++i) {
        const auto& pg = instances[i];
        std::uint64_t seed_i = o.params.seed + static_cast<std::uint64_t>(i);
        std::string stem = "lfr_n" + std::to_string(o.params.n) + "_mu" + mu_buf + "_seed" +
                           std::to_string(seed_i);
        std::string edge_path = o.out_dir + "/" + stem + ".txt";
        std::ostringstream edges;
        percom::write_edge_list(pg.g, edges);
        percom::write_text_file(edge_path, edges.str());

        json inst{{"file", stem + ".txt"},
                  {"seed", seed_i},
                  {"n", pg.g.node_count()},
                  {"m", pg.g.edge_count()},
                  {"communities", pg.sizes.size()},
                  {"sizes", pg.sizes},
                  {"realized_mixing", percom::realized_mixing(pg)}};
        if (o.emit_truth) {
            std::ostringstream truth;
            percom::write_truth(pg, truth);
            percom::write_text_file(o.out_dir + "/" + stem + "_truth.txt", truth.str());
            inst["truth"] = stem + "_truth.txt";
        }
        manifest["instances"].push_back(inst);
    }
    percom::write_text_file(o.out_dir + "/manifest.json", manifest.dump(2) + "\n");
    std::cout << manifest.dump(2) << "\n";
}

struct benchmark_opts {
    int n = 20, instances = 20, maxit_lo = 100, maxit_hi = 1000, threads = 1;
    int max_start_vns = 100, max_start_crr = 100, min_distance = 2;
    double mu = 0.1;
    std::uint64_t seed = 1;
    std::string out_path;
    bool times = false;
};

struct benchmark_row {
    std::uint64_t seed = 0;
    std::vector<int> sizes;
    double f_lo = 0, f_hi = 0;
    int k_bench = 0;
    percom::ratio a_rs, a_rsi, a_rsvns, a_crr;
    percom::truth_report rep;
    long long ms_shrink = 0, ms_rsi = 0, ms_rsvns = 0, ms_crr = 0;
};

void cmd_benchmark(const benchmark_opts& o) {
    if (o.instances < 1) throw percom::argument_error("instances must be >= 1");
    std::vector<benchmark_row> rows(o.instances);
    std::vector<std::exception_ptr> failures(o.instances);

    auto run_one = [&](int i) {
        using clock = std::chrono::steady_clock;
        auto ms_since = [](clock::time_point t0) {
            return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0)
                .count();
        };
        benchmark_row row;
        row.seed = o.seed + static_cast<std::uint64_t>(i);
        percom::lfr_params lp;
        lp.n = o.n;
        lp.mu = o.mu;
        lp.seed = row.seed;
        auto pg = percom::generate_lfr(lp);
        const auto& g = pg.g;
        row.sizes = pg.sizes;

        percom::search_params sp;
        sp.max_start_shrink = o.maxit_lo;
        sp.max_start_vns = o.max_start_vns;
        sp.max_start_crr = o.max_start_crr;
        sp.min_distance = o.min_distance;
        sp.seed = row.seed;

        auto t0 = clock::now();
        auto curve_lo = percom::random_shrink(g, o.maxit_lo, g.node_count() / 10, row.seed, 1);
        row.ms_shrink = ms_since(t0);
        auto curve_hi = percom::random_shrink(g, o.maxit_hi, g.node_count() / 10, row.seed, 1);
        row.f_lo = curve_sum(curve_lo);
        row.f_hi = curve_sum(curve_hi);

        row.k_bench = std::clamp(pg.sizes.front(), 2, g.node_count() - 1);
        row.a_rs = curve_lo.at(row.k_bench).alpha;

        t0 = clock::now();
        auto rsi_sol = percom::rsi_from_curve(g, row.k_bench, curve_lo, sp);
        row.ms_rsi = ms_since(t0);
        row.a_rsi = rsi_sol.alpha;

        t0 = clock::now();
        auto rsvns_sol = percom::rsvns_from_base(g, rsi_sol, sp);
        row.ms_rsvns = ms_since(t0);
        row.a_rsvns = rsvns_sol.alpha;

        t0 = clock::now();
        row.a_crr = percom::crr(g, row.k_bench, sp).alpha;
        row.ms_crr = ms_since(t0);

        row.rep = percom::score_against_truth(percom::find_peaks(curve_lo), pg.sizes);
        rows[i] = std::move(row);
    };

    int workers = std::max(1, std::min(o.threads, o.instances));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < o.instances; i += workers) {
                try {
                    run_one(i);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::ostringstream csv;
    csv << "instance,seed,n,mu,communities,sizes,f_rs_lo,f_rs_hi,rs_improved,k_bench,"
           "alpha_rs,alpha_rsi,alpha_rsvns,alpha_crr,rsi_improves,rsvns_improves,crr_improves,"
           "first_hit,median_hit,at_least_one,all_covered";
    if (o.times) csv << ",ms_shrink,ms_rsi,ms_rsvns,ms_crr";
    csv << "\n";
    char buf[64];
    auto fmt = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return std::string(buf);
    };
    for (int i = 0; i < o.instances; ++i) {
        const auto& r = rows[i];
        std::vector<std::string> size_strs;
        for (int s : r.sizes) size_strs.push_back(std::to_string(s));
        csv << i << "," << r.seed << "," << o.n << "," << fmt(o.mu) << "," << r.sizes.size()
            << "," << percom::join(size_strs, "|") << "," << fmt(r.f_lo) << "," << fmt(r.f_hi)
            << "," << (r.f_hi > r.f_lo ? 1 : 0) << "," << r.k_bench << ","
            << fmt(r.a_rs.value()) << "," << fmt(r.a_rsi.value()) << ","
            << fmt(r.a_rsvns.value()) << "," << fmt(r.a_crr.value()) << ","
            << (r.a_rsi > r.a_rs ? 1 : 0) << "," << (r.a_rsvns > r.a_rs ? 1 : 0) << ","
            << (r.a_crr > r.a_rs ? 1 : 0) << "," << r.rep.first_hit << "," << r.rep.median_hit
            << "," << r.rep.at_least_one << "," << r.rep.all_covered;
        if (o.times)
            csv << "," << r.ms_shrink << "," << r.ms_rsi << "," << r.ms_rsvns << "," << r.ms_crr;
        csv << "\n";
    }
    if (o.out_path.empty())
        std::cout << csv.str();
    else
        percom::write_text_file(o.out_path, csv.str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum-persistence community search"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags override");

    curve_opts co;
    auto* curve = app.add_subcommand("curve", "persistence curve, peak report and SVG chart");
    curve->add_option("--graph", co.graph_path, "edge-list file")->required();
    curve->add_option("--max-start", co.max_start, "shrink restarts");
    curve->add_option("--max-random-step", co.max_random_step, "random merges per pass (-1: n/10)");
    curve->add_option("--seed", co.seed, "random seed");
    curve->add_option("--threads", co.threads, "parallel restarts");
    curve->add_option("--out", co.out_prefix, "output path prefix");
    curve->callback([&] { cmd_curve(co); });

    optimize_opts oo;
    auto* opt = app.add_subcommand("optimize", "heuristic search for the best k-subset");
    opt->add_option("--graph", oo.graph_path, "edge-list file")->required();
    opt->add_option("--k", oo.k, "subset size")->required();
    opt->add_option("--method", oo.method, "rsi | rsvns | crr");
    opt->add_option("--max-start", oo.params.max_start_shrink, "shrink restarts");
    opt->add_option("--max-random-step", oo.params.max_random_step, "random merges (-1: n/10)");
    opt->add_option("--max-start-vns", oo.params.max_start_vns, "vns rounds");
    opt->add_option("--max-start-crr", oo.params.max_start_crr, "crr launches");
    opt->add_option("--min-distance", oo.params.min_distance, "crr start separation");
    opt->add_option("--seed", oo.params.seed, "random seed");
    opt->add_option("--threads", oo.params.threads, "parallel restarts");
    opt->add_option("--out", oo.out_path, "output JSON path (default stdout)");
    opt->callback([&] { cmd_optimize(oo); });

    exact_opts eo;
    auto* ex = app.add_subcommand("exact", "exhaustive optimum over connected k-subsets");
    ex->add_option("--graph", eo.graph_path, "edge-list file")->required();
    ex->add_option("--k", eo.k, "subset size")->required();
    ex->add_flag("--force", eo.force, "run even for n > 40");
    ex->add_option("--out", eo.out_path, "output JSON path (default stdout)");
    ex->callback([&] { cmd_exact(eo); });

    milp_opts mo;
    auto* milp = app.add_subcommand("export-milp", "write the linearized model as an LP file");
    milp->add_option("--graph", mo.graph_path, "edge-list file")->required();
    milp->add_option("--k", mo.k, "subset size")->required();
    milp->add_option("--out", mo.out_path, "LP file path")->required();
    milp->add_option("--solver-cmd", mo.solver_cmd,
                     "optional solver command; invoked as `cmd file.lp`, must print `name value` lines");
    milp->callback([&] { cmd_export_milp(mo); });

    generate_opts go;
    auto* gen = app.add_subcommand("generate", "LFR-style benchmark instances");
    gen->add_option("--n", go.params.n, "nodes");
    gen->add_option("--mu", go.params.mu, "mixing fraction in (0,1]");
    gen->add_option("--gamma", go.params.gamma, "degree exponent");
    gen->add_option("--beta", go.params.beta, "community-size exponent");
    gen->add_option("--avg-degree-frac", go.params.avg_degree_frac, "mean degree as fraction of n");
    gen->add_option("--k-min", go.params.k_min, "min degree");
    gen->add_option("--k-max", go.params.k_max, "max degree (-1: n-1)");
    gen->add_option("--s-min-frac", go.params.s_min_frac, "min community size fraction");
    gen->add_option("--s-max-frac", go.params.s_max_frac, "max community size fraction");
    gen->add_option("--seed", go.params.seed, "base seed; instance i uses seed+i");
    gen->add_option("--count", go.count, "instances to generate");
    gen->add_option("--threads", go.threads, "parallel instances");
    gen->add_option("--out", go.out_dir, "output directory");
    gen->add_flag("--emit-truth", go.emit_truth, "write ground-truth sidecar files");
    gen->callback([&] { cmd_generate(go); });

    benchmark_opts bo;
    auto* bench = app.add_subcommand("benchmark", "table-style report over generated instances");
    bench->add_option("--n", bo.n, "nodes per instance");
    bench->add_option("--instances", bo.instances, "instance count");
    bench->add_option("--mu", bo.mu, "mixing fraction");
    bench->add_option("--maxit-lo", bo.maxit_lo, "shrink restarts, low setting");
    bench->add_option("--maxit-hi", bo.maxit_hi, "shrink restarts, high setting");
    bench->add_option("--max-start-vns", bo.max_start_vns, "vns rounds");
    bench->add_option("--max-start-crr", bo.max_start_crr, "crr launches");
    bench->add_option("--min-distance", bo.min_distance, "crr start separation");
    bench->add_option("--seed", bo.seed, "base seed");
    bench->add_option("--threads", bo.threads, "parallel instances");
    bench->add_option("--out", bo.out_path, "CSV path (default stdout)");
    bench->add_flag("--times", bo.times, "append wall-clock columns (non-deterministic)");
    bench->callback([&] { cmd_benchmark(bo); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const percom::argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const percom::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const percom::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const percom::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
