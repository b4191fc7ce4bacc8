#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pm/pipeline.hpp"
#include "pm/serialize.hpp"

namespace pm {

// Graph sources: a file path, or a generator spec
//   grid:<width>,<height>     4-neighbor lattice
//   path:<n>                  path graph
//   geom:<n>,<radius>,<box>,<seed>   random geometric graph
Graph resolve_graph_source(const std::string& source);

// Synthetic MRF on a graph: node and edge log-potentials i.i.d. uniform in
// [lo, hi), fully determined by the seed.
PairwiseMRF make_random_mrf(const Graph& g, std::uint32_t q, std::uint64_t seed, double lo = 0.0,
                            double hi = 1.0);

struct ExperimentConfig {
    std::string task;          // "map" or "cluster"
    std::string graph_source;  // file path or generator spec
    std::string mrf_source;    // map task: file path, or empty to synthesize
    std::uint32_t mrf_q = 2;   // alphabet when synthesizing
    std::string solver;        // map: exact|icm; cluster: exact|greedy
    std::vector<std::uint32_t> k_values;
    std::vector<double> eps_values;
    std::optional<double> delta;  // when set, growth estimation + parameter selection
    std::uint32_t seed_count = 1;
    std::uint64_t base_seed = 0;
    unsigned threads = 1;
    bool with_baseline = true;  // centralized run of the same solver
    bool with_oracle = true;    // exhaustive optimum, when small enough
    std::string output_path;    // CSV; config echo sidecar at <path>.json
};

struct ReportRow {
    std::string instance;
    std::uint32_t max_radius = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    double objective = 0.0;
    double baseline = 0.0;  // NaN when not computed
    double oracle = 0.0;    // NaN when not computed
    double penalty = 0.0;
    double implied_opt_upper = 0.0;
    std::uint64_t boundary_size = 0;
    double cut_fraction = 0.0;
    std::uint64_t block_count = 0;
    std::uint64_t max_block = 0;
    double t_partition_ms = 0.0;
    double t_solve_ms = 0.0;
    double t_merge_ms = 0.0;
};

struct Report {
    std::vector<ReportRow> rows;
    std::size_t best_row = 0;  // max objective, first on ties
    Json config_echo;
};

// Cartesian sweep over (K, eps, seed): row order is the sweep order, results
// per row are deterministic, timing columns are not part of that contract.
Report run_experiment(const ExperimentConfig& config);

// Fixed column order; bump the version when it changes.
extern const char* const kReportCsvHeader;
std::string report_to_csv(const Report& report);
void write_report(const Report& report, const std::string& csv_path);

// Row equality ignoring the timing columns.
bool rows_equivalent(const ReportRow& a, const ReportRow& b);

struct CutprobEdgeStat {
    Edge edge;
    double frequency = 0.0;
    double bound = 0.0;  // min(1, analytic bound)
};

struct CutprobReport {
    std::uint32_t trials = 0;
    double slack = 0.0;  // 3 * sqrt(0.25 / trials)
    std::vector<CutprobEdgeStat> edges;
    std::uint64_t violations = 0;
    double max_margin = 0.0;  // max over edges of frequency - bound - slack
    bool pass = false;
};

// Empirical per-edge cut frequency over independently seeded carvings,
// checked against the analytic cut-probability bound plus binomial slack.
CutprobReport cutprob_campaign(const Graph& g, std::uint32_t max_radius, double epsilon,
                               std::uint32_t trials, std::uint64_t base_seed, unsigned threads);

struct ScalingPoint {
    std::uint64_t n = 0;
    double total_ms = 0.0;
    double partition_ms = 0.0;
    double objective = 0.0;
};

struct ScalingReport {
    std::vector<ScalingPoint> points;
    double fitted_exponent = 0.0;  // log-log least squares slope of total time vs n
};

// Times the full map pipeline (ICM blocks by default) across instance sizes
// built from the generator kind ("grid" or "path"); best of `reps` runs per
// size.
ScalingReport scaling_benchmark(const std::string& generator_kind,
                                const std::vector<std::uint64_t>& sizes, MapSolver solver,
                                std::uint32_t max_radius, double epsilon, std::uint64_t seed,
                                unsigned threads, std::uint32_t reps = 3);

}  // namespace pm
