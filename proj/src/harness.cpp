#include "pm/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pm/growth.hpp"
#include "pm/parallel.hpp"
#include "pm/rng.hpp"

namespace pm {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("bad number in generator spec: " + s);
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("bad integer in generator spec: " + s);
    }
    return v;
}

}  // namespace

Graph resolve_graph_source(const std::string& source) {
    const auto colon = source.find(':');
    if (colon != std::string::npos) {
        const std::string kind = source.substr(0, colon);
        const auto args = split(source.substr(colon + 1), ',');
        if (kind == "grid") {
            if (args.size() != 2) throw std::runtime_error("grid spec needs width,height");
            return generate_grid(static_cast<std::uint32_t>(parse_u64(args[0])),
                                 static_cast<std::uint32_t>(parse_u64(args[1])));
        }
        if (kind == "path") {
            if (args.size() != 1) throw std::runtime_error("path spec needs n");
            return generate_path(static_cast<std::uint32_t>(parse_u64(args[0])));
        }
        if (kind == "geom") {
            if (args.size() != 4) throw std::runtime_error("geom spec needs n,radius,box,seed");
            return generate_geometric(static_cast<std::uint32_t>(parse_u64(args[0])),
                                      parse_double(args[1]), parse_double(args[2]),
                                      parse_u64(args[3]));
        }
    }
    return load_edge_list_file(source);
}

PairwiseMRF make_random_mrf(const Graph& g, std::uint32_t q, std::uint64_t seed, double lo,
                            double hi) {
    auto rng = make_engine(derive_seed(seed, Stream::Potentials));
    const double span = hi - lo;
    std::vector<double> nodes(static_cast<std::size_t>(g.vertex_count()) * q);
    for (double& v : nodes) v = lo + span * uniform_unit(rng);
    std::vector<double> edges(static_cast<std::size_t>(g.edges().size()) * q * q);
    for (double& v : edges) v = lo + span * uniform_unit(rng);
    return PairwiseMRF(g, q, std::move(nodes), std::move(edges));
}

const char* const kReportCsvHeader =
    "instance,task,solver,K,eps,seed,objective,baseline,oracle,penalty,implied_opt_upper,"
    "boundary_size,cut_fraction,blocks,max_block,t_partition_ms,t_solve_ms,t_merge_ms";

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

struct TaskContext {
    const ExperimentConfig& config;
    const Graph& graph;
    std::string instance;
    const PairwiseMRF* mrf = nullptr;  // map task only
    double baseline = kNan;
    double oracle = kNan;
};

double centralized_map_baseline(const ExperimentConfig& config, const PairwiseMRF& mrf) {
    if (config.solver == "exact") {
        long double space = 1.0L;
        for (std::uint32_t i = 0; i < mrf.graph().vertex_count(); ++i) space *= mrf.alphabet_size();
        if (space > static_cast<long double>(kDefaultEnumerationLimit)) return kNan;
        return evaluate_H(mrf, exact_map(mrf));
    }
    auto rng = make_engine(derive_seed(config.base_seed, Stream::IcmSweep));
    return evaluate_H(mrf, icm(mrf, greedy_unary_init(mrf), 100, rng));
}

double centralized_cluster_baseline(const ExperimentConfig& config, const Graph& g) {
    if (config.solver == "exact") {
        if (g.vertex_count() > 12) return kNan;
        return modularity(g, exact_modularity(g));
    }
    return modularity(g, greedy_modularity(g));
}

double map_oracle(const PairwiseMRF& mrf) {
    long double space = 1.0L;
    for (std::uint32_t i = 0; i < mrf.graph().vertex_count(); ++i) space *= mrf.alphabet_size();
    if (space > static_cast<long double>(kDefaultEnumerationLimit)) return kNan;
    return evaluate_H(mrf, exact_map(mrf));
}

double cluster_oracle(const Graph& g) {
    if (g.vertex_count() > 12) return kNan;
    return modularity(g, exact_modularity(g));
}

ReportRow run_one(const TaskContext& ctx, std::uint32_t k, double eps, std::uint64_t seed) {
    ReportRow row;
    row.instance = ctx.instance;
    row.max_radius = k;
    row.epsilon = eps;
    row.seed = seed;
    row.baseline = ctx.baseline;
    row.oracle = ctx.oracle;

    PartitionParams params;
    params.max_radius = k;
    params.epsilon = eps;
    params.seed = seed;

    PhaseTimings timings;
    if (ctx.config.task == "map") {
        const PairwiseMRF& mrf = *ctx.mrf;
        PmMapResult result =
            ctx.config.solver == "exact"
                ? pm_map_with_solver(
                      mrf, params,
                      [](const PairwiseMRF& block, std::size_t, std::uint64_t) {
                          return exact_map(block);
                      },
                      1.0, ctx.config.threads, MapOptions{}, &timings)
                : pm_map_with_solver(
                      mrf, params,
                      [](const PairwiseMRF& block, std::size_t, std::uint64_t block_seed) {
                          auto rng = make_engine(block_seed);
                          return icm(block, greedy_unary_init(block), 100, rng);
                      },
                      kNan, ctx.config.threads, MapOptions{}, &timings);
        row.objective = result.certificate.h_hat;
        row.penalty = result.certificate.boundary_penalty;
        row.implied_opt_upper = result.certificate.implied_opt_upper;
        row.boundary_size = result.partition.boundary.size();
        row.cut_fraction = result.partition.cut_fraction;
        row.block_count = result.partition.block_count();
        for (const auto& b : result.partition.blocks) {
            row.max_block = std::max<std::uint64_t>(row.max_block, b.size());
        }
    } else {
        PmClusterResult result = pm_cluster_with_solver(
            ctx.graph, params,
            ctx.config.solver == "exact"
                ? ClusterBlockSolver([](const BlockModularityProblem& p, std::size_t,
                                        std::uint64_t) { return exact_block_clustering(p); })
                : ClusterBlockSolver([](const BlockModularityProblem& p, std::size_t,
                                        std::uint64_t) { return greedy_block_clustering(p); }),
            ctx.config.solver == "exact" ? 1.0 : kNan, ctx.config.threads, ClusterOptions{},
            &timings);
        row.objective = result.certificate.m_hat;
        row.penalty = result.certificate.penalty;
        row.implied_opt_upper = result.certificate.implied_opt_upper;
        row.boundary_size = result.partition.boundary.size();
        row.cut_fraction = result.partition.cut_fraction;
        row.block_count = result.partition.block_count();
        for (const auto& b : result.partition.blocks) {
            row.max_block = std::max<std::uint64_t>(row.max_block, b.size());
        }
    }
    row.t_partition_ms = timings.partition_ms;
    row.t_solve_ms = timings.solve_ms;
    row.t_merge_ms = timings.merge_ms;
    return row;
}

}  // namespace

Report run_experiment(const ExperimentConfig& config) {
    if (config.task != "map" && config.task != "cluster") {
        throw std::invalid_argument("experiment task must be map or cluster");
    }
    if (config.seed_count < 1) throw std::invalid_argument("seed count must be >= 1");

    // For the map task the instance graph is the MRF's own graph; a separate
    // graph source is only needed when the MRF is synthesized.
    Graph graph;
    std::optional<PairwiseMRF> mrf;
    std::string instance;
    if (config.task == "map" && !config.mrf_source.empty()) {
        mrf = load_mrf_file(config.mrf_source);
        instance = config.mrf_source;
    } else {
        graph = resolve_graph_source(config.graph_source);
        instance = config.graph_source;
        if (config.task == "map") {
            mrf = make_random_mrf(graph, config.mrf_q, config.base_seed);
        }
    }
    const Graph& instance_graph = config.task == "map" ? mrf->graph() : graph;

    std::vector<std::uint32_t> k_values = config.k_values;
    std::vector<double> eps_values = config.eps_values;
    std::optional<ParamRecommendation> rec;
    if (config.delta) {
        const GrowthProfile profile = estimate_growth(instance_graph, 4);
        rec = select_params(profile.chosen_rho, profile.chosen_c, *config.delta,
                            config.task == "map" ? ProblemKind::Map : ProblemKind::Modularity);
        if (k_values.empty()) {
            k_values = {static_cast<std::uint32_t>(
                std::min<std::uint64_t>(rec->max_radius, instance_graph.vertex_count()))};
        }
        if (eps_values.empty()) eps_values = {rec->epsilon};
    }
    if (k_values.empty() || eps_values.empty()) {
        throw std::invalid_argument("non-empty K and eps lists (or delta) required");
    }

    TaskContext ctx{config, instance_graph, instance};
    if (mrf) ctx.mrf = &*mrf;
    if (config.with_baseline) {
        ctx.baseline = config.task == "map" ? centralized_map_baseline(config, *mrf)
                                            : centralized_cluster_baseline(config, instance_graph);
    }
    if (config.with_oracle) {
        ctx.oracle = config.task == "map" ? map_oracle(*mrf) : cluster_oracle(instance_graph);
    }

    // Sweep order is the report order: K outer, eps middle, seed inner.
    struct Cell {
        std::uint32_t k;
        double eps;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (std::uint32_t k : k_values) {
        for (double eps : eps_values) {
            for (std::uint32_t s = 0; s < config.seed_count; ++s) {
                cells.push_back({k, eps, derive_seed(config.base_seed, Stream::Trial, s)});
            }
        }
    }

    // Rows run sequentially; the worker pool lives inside each row's
    // per-block solve, which keeps the thread count bounded.
    Report report;
    report.rows.reserve(cells.size());
    for (const Cell& cell : cells) {
        report.rows.push_back(run_one(ctx, cell.k, cell.eps, cell.seed));
    }

    report.best_row = 0;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (report.rows[i].objective > report.rows[report.best_row].objective) report.best_row = i;
    }

    report.config_echo = Json{
        {"report_version", 1},
        {"task", config.task},
        {"graph", config.graph_source},
        {"mrf", config.mrf_source},
        {"q", config.mrf_q},
        {"solver", config.solver},
        {"K", k_values},
        {"eps", eps_values},
        {"delta", config.delta ? Json(*config.delta) : Json(nullptr)},
        {"auto_params", rec ? param_recommendation_to_json(*rec) : Json(nullptr)},
        {"seed_count", config.seed_count},
        {"base_seed", config.base_seed},
        {"threads", config.threads},
        {"best_row", 0},
        {"best_objective", 0.0},
    };
    if (!report.rows.empty()) {
        report.config_echo["best_row"] = report.best_row;
        report.config_echo["best_objective"] = report.rows[report.best_row].objective;
    }
    return report;
}

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << kReportCsvHeader << "\n";
    const std::string task = report.config_echo.value("task", std::string{});
    const std::string solver = report.config_echo.value("solver", std::string{});
    for (const ReportRow& r : report.rows) {
        out << csv_quote(r.instance) << ',' << task << ',' << solver << ',' << r.max_radius << ','
            << format_double(r.epsilon) << ',' << r.seed << ',' << format_double(r.objective)
            << ',' << format_double(r.baseline) << ',' << format_double(r.oracle) << ','
            << format_double(r.penalty) << ',' << format_double(r.implied_opt_upper) << ','
            << r.boundary_size << ',' << format_double(r.cut_fraction) << ',' << r.block_count
            << ',' << r.max_block << ',' << format_double(r.t_partition_ms) << ','
            << format_double(r.t_solve_ms) << ',' << format_double(r.t_merge_ms) << "\n";
    }
    return out.str();
}

void write_report(const Report& report, const std::string& csv_path) {
    write_text_file(csv_path, report_to_csv(report));
    write_text_file(csv_path + ".json", report.config_echo.dump(2) + "\n");
}

bool rows_equivalent(const ReportRow& a, const ReportRow& b) {
    auto same = [](double x, double y) {
        return (std::isnan(x) && std::isnan(y)) || x == y;
    };
    return a.instance == b.instance && a.max_radius == b.max_radius && a.epsilon == b.epsilon &&
           a.seed == b.seed && same(a.objective, b.objective) && same(a.baseline, b.baseline) &&
           same(a.oracle, b.oracle) && same(a.penalty, b.penalty) &&
           same(a.implied_opt_upper, b.implied_opt_upper) && a.boundary_size == b.boundary_size &&
           same(a.cut_fraction, b.cut_fraction) && a.block_count == b.block_count &&
           a.max_block == b.max_block;
}

CutprobReport cutprob_campaign(const Graph& g, std::uint32_t max_radius, double epsilon,
                               std::uint32_t trials, std::uint64_t base_seed, unsigned threads) {
    if (trials < 1000) throw std::invalid_argument("cutprob campaign needs >= 1000 trials");
    const std::size_t m = g.edges().size();

    const unsigned workers = std::max(1u, threads);
    std::vector<std::vector<std::uint32_t>> counts(workers, std::vector<std::uint32_t>(m, 0));
    // Chunk by worker; per-edge counts merge by addition, so the result is
    // independent of scheduling.
    parallel_for_index(workers, workers, [&](std::size_t w) {
        auto& local = counts[w];
        for (std::uint32_t t = static_cast<std::uint32_t>(w); t < trials; t += workers) {
            PartitionParams params;
            params.max_radius = max_radius;
            params.epsilon = epsilon;
            params.seed = derive_seed(base_seed, Stream::Trial, t);
            const Partition part = carve_partition(g, params);
            const auto& edges = g.edges();
            for (std::size_t id = 0; id < m; ++id) {
                if (part.block_of[edges[id].u] != part.block_of[edges[id].v]) ++local[id];
            }
        }
    });

    CutprobReport report;
    report.trials = trials;
    report.slack = 3.0 * std::sqrt(0.25 / static_cast<double>(trials));
    report.edges.resize(m);
    report.max_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t id = 0; id < m; ++id) {
        std::uint64_t total = 0;
        for (const auto& local : counts) total += local[id];
        CutprobEdgeStat& stat = report.edges[id];
        stat.edge = g.edges()[id];
        stat.frequency = static_cast<double>(total) / static_cast<double>(trials);
        stat.bound = std::min(1.0, edge_cut_bound(g, stat.edge, max_radius, epsilon));
        const double margin = stat.frequency - stat.bound - report.slack;
        report.max_margin = std::max(report.max_margin, margin);
        if (margin > 0.0) ++report.violations;
    }
    if (m == 0) report.max_margin = 0.0;
    report.pass = report.violations == 0;
    return report;
}

ScalingReport scaling_benchmark(const std::string& generator_kind,
                                const std::vector<std::uint64_t>& sizes, MapSolver solver,
                                std::uint32_t max_radius, double epsilon, std::uint64_t seed,
                                unsigned threads, std::uint32_t reps) {
    if (sizes.empty()) throw std::invalid_argument("scaling benchmark needs at least one size");
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sizes must be ascending");
    }

    ScalingReport report;
    for (std::uint64_t n : sizes) {
        Graph g;
        if (generator_kind == "grid") {
            const auto side = static_cast<std::uint32_t>(std::llround(std::sqrt(static_cast<double>(n))));
            g = generate_grid(side, side);
        } else if (generator_kind == "path") {
            g = generate_path(static_cast<std::uint32_t>(n));
        } else {
            throw std::invalid_argument("scaling generator must be grid or path");
        }
        const PairwiseMRF mrf = make_random_mrf(g, 2, seed);

        PartitionParams params;
        params.max_radius = max_radius;
        params.epsilon = epsilon;
        params.seed = seed;

        ScalingPoint point;
        point.n = g.vertex_count();
        point.total_ms = std::numeric_limits<double>::infinity();
        for (std::uint32_t rep = 0; rep < std::max(1u, reps); ++rep) {
            PhaseTimings timings;
            const MapBlockSolver block_solver =
                solver == MapSolver::Exact
                    ? MapBlockSolver([](const PairwiseMRF& block, std::size_t, std::uint64_t) {
                          return exact_map(block);
                      })
                    : MapBlockSolver(
                          [](const PairwiseMRF& block, std::size_t, std::uint64_t block_seed) {
                              auto rng = make_engine(block_seed);
                              return icm(block, greedy_unary_init(block), 100, rng);
                          });
            const auto start = std::chrono::steady_clock::now();
            const PmMapResult result =
                pm_map_with_solver(mrf, params, block_solver,
                                   solver == MapSolver::Exact ? 1.0 : kNan, threads, MapOptions{},
                                   &timings);
            const double total =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
            point.objective = result.certificate.h_hat;
            if (total < point.total_ms) {
                point.total_ms = total;
                point.partition_ms = timings.partition_ms;
            }
        }
        report.points.push_back(point);
    }

    // Least-squares slope in log-log space.
    const std::size_t count = report.points.size();
    if (count >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const ScalingPoint& p : report.points) {
            const double x = std::log(static_cast<double>(p.n));
            const double y = std::log(std::max(p.total_ms, 1e-6));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = static_cast<double>(count) * sxx - sx * sx;
        report.fitted_exponent = (static_cast<double>(count) * sxy - sx * sy) / denom;
    }
    return report;
}

}  // namespace pm
