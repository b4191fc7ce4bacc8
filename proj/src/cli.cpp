#include "pm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pm/growth.hpp"
#include "pm/harness.hpp"
#include "pm/rng.hpp"
#include "pm/serialize.hpp"

namespace pm {

namespace {

std::vector<Vertex> read_order_file(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::vector<Vertex> order;
    std::uint64_t v = 0;
    while (in >> v) order.push_back(static_cast<Vertex>(v));
    return order;
}

// Growth estimation followed by parameter selection; K is clamped to n
// (a larger radius cannot claim more than the whole graph).
ParamRecommendation auto_params(const Graph& g, double delta, ProblemKind problem,
                                std::uint32_t rho_max) {
    const GrowthProfile profile = estimate_growth(g, rho_max);
    return select_params(profile.chosen_rho, profile.chosen_c, delta, problem);
}

std::uint32_t clamp_radius(std::uint64_t k, const Graph& g) {
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(k, g.vertex_count()));
}

struct CommonSolveArgs {
    std::uint32_t k = 0;
    double eps = 0.0;
    bool auto_params = false;
    double delta = 0.3;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;

    // Either explicit (K, eps) or --auto-params; anything else is a usage error.
    bool usable() const { return auto_params || (k >= 1 && eps > 0.0 && eps < 1.0); }
};

void add_solve_flags(CLI::App* cmd, CommonSolveArgs& args) {
    cmd->add_option("--K", args.k, "max carving radius (hops)");
    cmd->add_option("--eps", args.eps, "radius law parameter in (0,1)");
    cmd->add_flag("--auto-params", args.auto_params,
                  "derive K and eps from the growth profile and --delta");
    cmd->add_option("--delta", args.delta, "failure budget for --auto-params")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    cmd->add_option("--seed", args.seed, "master RNG seed");
    cmd->add_option("--threads", args.threads, "worker pool width");
    cmd->add_option("--out", args.out, "output JSON path");
}

int run_partition(const std::string& graph_path, std::uint32_t k, double eps, std::uint64_t seed,
                  const std::string& order_file, const std::string& out) {
    const Graph g = resolve_graph_source(graph_path);
    PartitionParams params;
    params.max_radius = k;
    params.epsilon = eps;
    params.seed = seed;
    if (!order_file.empty()) {
        params.order_policy = OrderPolicy::ExplicitOrder;
        params.explicit_order = read_order_file(order_file);
    }
    const Partition part = carve_partition(g, params);
    const Json doc = partition_to_json(part);
    if (!out.empty()) write_text_file(out, doc.dump(2) + "\n");
    std::cout << "blocks=" << part.block_count() << " boundary=" << part.boundary.size()
              << " cut_fraction=" << part.cut_fraction << "\n";
    return 0;
}

int run_map(const std::string& mrf_path, const std::string& solver, CommonSolveArgs& args) {
    const PairwiseMRF mrf = load_mrf_file(mrf_path);
    MapOptions options;
    PartitionParams params;
    params.seed = args.seed;
    if (args.auto_params) {
        const ParamRecommendation rec = auto_params(mrf.graph(), args.delta, ProblemKind::Map, 4);
        params.max_radius = clamp_radius(rec.max_radius, mrf.graph());
        params.epsilon = rec.epsilon;
        options.growth = GrowthInput{rec.rho, rec.growth_c};
        std::cout << "auto-params: K=" << params.max_radius << " eps=" << params.epsilon << "\n";
    } else {
        params.max_radius = args.k;
        params.epsilon = args.eps;
    }
    const PmMapResult result =
        pm_map(mrf, params, solver == "exact" ? MapSolver::Exact : MapSolver::Icm, args.threads,
               options);
    const Json doc = map_result_to_json(result);
    if (!args.out.empty()) write_text_file(args.out, doc.dump(2) + "\n");
    std::cout << "H=" << result.certificate.h_hat
              << " boundary_penalty=" << result.certificate.boundary_penalty
              << " implied_opt_upper=" << result.certificate.implied_opt_upper << "\n";
    return 0;
}

int run_cluster(const std::string& graph_path, const std::string& solver, CommonSolveArgs& args) {
    const Graph g = resolve_graph_source(graph_path);
    ClusterOptions options;
    PartitionParams params;
    params.seed = args.seed;
    if (args.auto_params) {
        const ParamRecommendation rec = auto_params(g, args.delta, ProblemKind::Modularity, 4);
        params.max_radius = clamp_radius(rec.max_radius, g);
        params.epsilon = rec.epsilon;
        options.growth = GrowthInput{rec.rho, rec.growth_c};
        std::cout << "auto-params: K=" << params.max_radius << " eps=" << params.epsilon << "\n";
    } else {
        params.max_radius = args.k;
        params.epsilon = args.eps;
    }
    const PmClusterResult result =
        pm_cluster(g, params, solver == "exact" ? ClusterSolver::Exact : ClusterSolver::Greedy,
                   args.threads, options);
    const Json doc = cluster_result_to_json(result);
    if (!args.out.empty()) write_text_file(args.out, doc.dump(2) + "\n");
    std::cout << "M=" << result.certificate.m_hat << " penalty=" << result.certificate.penalty
              << " implied_opt_upper=" << result.certificate.implied_opt_upper << "\n";
    return 0;
}

int run_growth(const std::string& graph_source, std::uint32_t rho_max, const std::string& out) {
    const Graph g = resolve_graph_source(graph_source);
    const GrowthProfile profile = estimate_growth(g, rho_max);
    std::printf("%-6s %s\n", "rho", "min_C");
    for (std::size_t i = 0; i < profile.per_rho_min_c.size(); ++i) {
        std::printf("%-6zu %llu\n", i + 1,
                    static_cast<unsigned long long>(profile.per_rho_min_c[i]));
    }
    std::printf("chosen: rho=%u C=%llu\n", profile.chosen_rho,
                static_cast<unsigned long long>(profile.chosen_c));
    if (!out.empty()) write_text_file(out, growth_profile_to_json(profile).dump(2) + "\n");
    return 0;
}

int run_cutprob(const std::string& graph_source, std::uint32_t k, double eps,
                std::uint32_t trials, std::uint64_t seed, unsigned threads,
                const std::string& out) {
    const Graph g = resolve_graph_source(graph_source);
    const CutprobReport report = cutprob_campaign(g, k, eps, trials, seed, threads);
    std::cout << "trials=" << report.trials << " edges=" << report.edges.size()
              << " violations=" << report.violations << " max_margin=" << report.max_margin
              << " => " << (report.pass ? "PASS" : "FAIL") << "\n";
    if (!out.empty()) {
        std::ostringstream csv;
        csv << "u,v,frequency,bound,slack\n";
        for (const auto& stat : report.edges) {
            csv << stat.edge.u << ',' << stat.edge.v << ',' << stat.frequency << ',' << stat.bound
                << ',' << report.slack << "\n";
        }
        write_text_file(out, csv.str());
    }
    return report.pass ? 0 : 1;
}

int run_bench(const std::string& generator, const std::vector<std::uint64_t>& sizes,
              const std::string& solver, std::uint32_t k, double eps, std::uint64_t seed,
              unsigned threads, std::uint32_t reps, const std::string& out) {
    const ScalingReport report =
        scaling_benchmark(generator, sizes, solver == "exact" ? MapSolver::Exact : MapSolver::Icm,
                          k, eps, seed, threads, reps);
    std::ostringstream csv;
    csv << "n,total_ms,partition_ms,objective\n";
    for (const auto& p : report.points) {
        std::printf("n=%-10llu total=%.2f ms  partition=%.2f ms\n",
                    static_cast<unsigned long long>(p.n), p.total_ms, p.partition_ms);
        csv << p.n << ',' << p.total_ms << ',' << p.partition_ms << ',' << p.objective << "\n";
    }
    std::printf("fitted exponent: %.4f\n", report.fitted_exponent);
    if (!out.empty()) write_text_file(out, csv.str());
    return 0;
}

int run_sweep(ExperimentConfig& config) {
    // Default K schedule: powers of two up to the vertex count.
    if (config.k_values.empty() && !config.delta) {
        const std::uint32_t n = config.graph_source.empty()
                                    ? load_mrf_file(config.mrf_source).graph().vertex_count()
                                    : resolve_graph_source(config.graph_source).vertex_count();
        for (std::uint64_t k = 1; k <= n; k *= 2) {
            config.k_values.push_back(static_cast<std::uint32_t>(k));
        }
    }
    if (config.eps_values.empty() && !config.delta) {
        config.eps_values = {0.1, 0.2, 0.3, 0.4, 0.5};
    }
    const Report report = run_experiment(config);
    if (!config.output_path.empty()) write_report(report, config.output_path);
    if (!report.rows.empty()) {
        const ReportRow& best = report.rows[report.best_row];
        std::cout << "rows=" << report.rows.size() << " best: K=" << best.max_radius
                  << " eps=" << best.epsilon << " seed=" << best.seed
                  << " objective=" << best.objective << "\n";
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Partition-merge solvers for MAP inference and modularity clustering"};
    app.set_config("--config");
    app.require_subcommand(1);

    // partition
    auto* partition_cmd = app.add_subcommand("partition", "carve a graph into low-radius blocks");
    std::string graph_path, order_file, out_path;
    std::uint32_t k_arg = 1;
    double eps_arg = 0.5;
    std::uint64_t seed_arg = 0;
    partition_cmd->add_option("--graph", graph_path, "edge-list file or generator spec")->required();
    partition_cmd->add_option("--K", k_arg, "max carving radius")->required();
    partition_cmd->add_option("--eps", eps_arg, "radius law parameter")->required();
    partition_cmd->add_option("--seed", seed_arg, "master RNG seed");
    partition_cmd->add_option("--order-file", order_file, "explicit pivot order (one id per line)");
    partition_cmd->add_option("--out", out_path, "output JSON path");

    // map
    auto* map_cmd = app.add_subcommand("map", "maximize an MRF objective block by block");
    std::string mrf_path, map_solver = "icm";
    CommonSolveArgs map_args;
    map_cmd->add_option("--mrf", mrf_path, "MRF JSON file")->required();
    map_cmd->add_option("--solver", map_solver, "exact|icm")
        ->check(CLI::IsMember({"exact", "icm"}));
    add_solve_flags(map_cmd, map_args);

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "modularity clustering block by block");
    std::string cluster_graph, cluster_solver = "greedy";
    CommonSolveArgs cluster_args;
    cluster_cmd->add_option("--graph", cluster_graph, "edge-list file or generator spec")->required();
    cluster_cmd->add_option("--solver", cluster_solver, "exact|greedy")
        ->check(CLI::IsMember({"exact", "greedy"}));
    add_solve_flags(cluster_cmd, cluster_args);

    // growth
    auto* growth_cmd = app.add_subcommand("growth", "estimate the polynomial growth profile");
    std::string growth_graph, growth_out;
    std::uint32_t rho_max = 4;
    growth_cmd->add_option("--graph", growth_graph, "edge-list file or generator spec")->required();
    growth_cmd->add_option("--rho-max", rho_max, "largest growth degree to scan");
    growth_cmd->add_option("--out", growth_out, "output JSON path");

    // cutprob
    auto* cutprob_cmd = app.add_subcommand("cutprob", "Monte Carlo check of the edge-cut bound");
    std::string cutprob_graph, cutprob_out;
    std::uint32_t cutprob_k = 3, cutprob_trials = 20000;
    double cutprob_eps = 0.3;
    std::uint64_t cutprob_seed = 0;
    unsigned cutprob_threads = 1;
    cutprob_cmd->add_option("--graph", cutprob_graph, "edge-list file or generator spec")->required();
    cutprob_cmd->add_option("--K", cutprob_k, "max carving radius")->required();
    cutprob_cmd->add_option("--eps", cutprob_eps, "radius law parameter")->required();
    cutprob_cmd->add_option("--trials", cutprob_trials, "independent carvings (>= 1000)");
    cutprob_cmd->add_option("--seed", cutprob_seed, "base seed");
    cutprob_cmd->add_option("--threads", cutprob_threads, "worker pool width");
    cutprob_cmd->add_option("--out", cutprob_out, "per-edge CSV path");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "pipeline runtime across instance sizes");
    std::string bench_generator = "grid", bench_solver = "icm", bench_out;
    std::vector<std::uint64_t> bench_sizes;
    std::uint32_t bench_k = 3, bench_reps = 3;
    double bench_eps = 0.3;
    std::uint64_t bench_seed = 0;
    unsigned bench_threads = 1;
    bench_cmd->add_option("--generator", bench_generator, "grid|path");
    bench_cmd->add_option("--sizes", bench_sizes, "ascending vertex counts")->required();
    bench_cmd->add_option("--solver", bench_solver, "exact|icm")
        ->check(CLI::IsMember({"exact", "icm"}));
    bench_cmd->add_option("--K", bench_k, "max carving radius");
    bench_cmd->add_option("--eps", bench_eps, "radius law parameter");
    bench_cmd->add_option("--seed", bench_seed, "master seed");
    bench_cmd->add_option("--threads", bench_threads, "worker pool width");
    bench_cmd->add_option("--reps", bench_reps, "repetitions per size (best kept)");
    bench_cmd->add_option("--out", bench_out, "CSV path");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Cartesian (K, eps, seed) experiment report");
    ExperimentConfig sweep_config;
    double sweep_delta = 0.0;
    bool no_baseline = false, no_oracle = false;
    sweep_cmd->add_option("--task", sweep_config.task, "map|cluster")
        ->required()
        ->check(CLI::IsMember({"map", "cluster"}));
    sweep_cmd->add_option("--graph", sweep_config.graph_source, "edge-list file or generator spec");
    sweep_cmd->add_option("--mrf", sweep_config.mrf_source, "MRF JSON file (map task)");
    sweep_cmd->add_option("--q", sweep_config.mrf_q, "alphabet size for synthesized MRFs");
    sweep_cmd->add_option("--solver", sweep_config.solver, "exact|icm|greedy")->required();
    sweep_cmd->add_option("--K", sweep_config.k_values, "list of radii");
    sweep_cmd->add_option("--eps", sweep_config.eps_values, "list of radius parameters");
    sweep_cmd->add_option("--delta", sweep_delta, "derive (K, eps) from the growth profile");
    sweep_cmd->add_option("--seeds", sweep_config.seed_count, "number of seeds");
    sweep_cmd->add_option("--seed", sweep_config.base_seed, "base seed");
    sweep_cmd->add_option("--threads", sweep_config.threads, "worker pool width");
    sweep_cmd->add_flag("--no-baseline", no_baseline, "skip the centralized baseline column");
    sweep_cmd->add_flag("--no-oracle", no_oracle, "skip the exhaustive oracle column");
    sweep_cmd->add_option("--out", sweep_config.output_path, "CSV path (sidecar at <path>.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : 2;
    }

    try {
        if (partition_cmd->parsed()) {
            return run_partition(graph_path, k_arg, eps_arg, seed_arg, order_file, out_path);
        }
        if (map_cmd->parsed()) {
            if (!map_args.usable()) {
                std::cerr << "error: give --K and --eps, or --auto-params with --delta\n";
                return 2;
            }
            return run_map(mrf_path, map_solver, map_args);
        }
        if (cluster_cmd->parsed()) {
            if (!cluster_args.usable()) {
                std::cerr << "error: give --K and --eps, or --auto-params with --delta\n";
                return 2;
            }
            return run_cluster(cluster_graph, cluster_solver, cluster_args);
        }
        if (growth_cmd->parsed()) return run_growth(growth_graph, rho_max, growth_out);
        if (cutprob_cmd->parsed()) {
            return run_cutprob(cutprob_graph, cutprob_k, cutprob_eps, cutprob_trials, cutprob_seed,
                               cutprob_threads, cutprob_out);
        }
        if (bench_cmd->parsed()) {
            return run_bench(bench_generator, bench_sizes, bench_solver, bench_k, bench_eps,
                             bench_seed, bench_threads, bench_reps, bench_out);
        }
        if (sweep_cmd->parsed()) {
            if (sweep_delta > 0.0) sweep_config.delta = sweep_delta;
            sweep_config.with_baseline = !no_baseline;
            sweep_config.with_oracle = !no_oracle;
            return run_sweep(sweep_config);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace pm
