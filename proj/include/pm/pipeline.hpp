#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "pm/modularity.hpp"
#include "pm/mrf.hpp"
#include "pm/partitioner.hpp"

namespace pm {

// Known polynomial-growth parameters of the input; lets certificates carry
// the analytic block-size bound C * K^rho next to the measured one.
struct GrowthInput {
    std::uint32_t rho = 1;
    std::uint64_t growth_c = 1;
};

struct PhaseTimings {
    double partition_ms = 0.0;
    double solve_ms = 0.0;
    double merge_ms = 0.0;
};

// Per-run error certificate for the stitched assignment. With exact block
// solving (alpha = 1) the unknown optimum satisfies
//   H* <= h_hat + boundary_penalty;
// with a declared alpha-approximate block solver,
//   H* <= alpha * h_hat + boundary_penalty.
// Solvers without a certified ratio leave alpha and the implied bound NaN.
struct MapCertificate {
    double h_hat = 0.0;
    double boundary_penalty = 0.0;
    double alpha_used = 1.0;
    std::uint64_t k_tilde_hop = 0;
    double k_tilde_analytic = 0.0;  // NaN when growth parameters unknown
    double implied_opt_upper = 0.0;
};

// penalty reports the nominal boundary share |B| / 2m. Under the ordered-pair
// modularity sum used here, a boundary edge with like-colored endpoints enters
// the optimum's cross-block loss through both orientations, so the bound that
// actually holds with exact block solving is
//   M* <= m_hat + 2 * penalty,
// and implied_opt_upper carries that valid form (alpha-scaled).
struct ModCertificate {
    double m_hat = 0.0;
    double penalty = 0.0;  // |B| / 2m
    double alpha_used = 1.0;
    std::uint64_t k_tilde_hop = 0;
    double k_tilde_analytic = 0.0;
    double implied_opt_upper = 0.0;
};

enum class MapSolver { Exact, Icm };
enum class ClusterSolver { Exact, Greedy };

struct MapOptions {
    std::uint64_t enumeration_limit = kDefaultEnumerationLimit;
    std::uint32_t max_sweeps = 100;
    std::optional<GrowthInput> growth;
};

struct ClusterOptions {
    std::uint64_t bell_limit = kDefaultBellLimit;
    std::optional<GrowthInput> growth;
};

struct PmMapResult {
    Assignment assignment;
    MapCertificate certificate;
    Partition partition;
};

struct PmClusterResult {
    Clustering clustering;
    ModCertificate certificate;
    Partition partition;
};

// Carve, solve every restricted block MRF independently (worker pool of the
// given width), stitch through the back-maps. Output is identical for every
// parallelism width >= 1.
PmMapResult pm_map(const PairwiseMRF& mrf, const PartitionParams& params, MapSolver solver,
                   unsigned threads, const MapOptions& options = {});

// Generalized form used by pm_map and by tests: block_solver receives the
// restricted MRF, the block index, and a per-block seed derived from
// (params.seed, block index). declared_alpha is the solver's certified
// approximation ratio (1 for exact, NaN for none).
using MapBlockSolver =
    std::function<Assignment(const PairwiseMRF&, std::size_t, std::uint64_t)>;
PmMapResult pm_map_with_solver(const PairwiseMRF& mrf, const PartitionParams& params,
                               const MapBlockSolver& block_solver, double declared_alpha,
                               unsigned threads, const MapOptions& options = {},
                               PhaseTimings* timings = nullptr);

// Modularity counterpart. Block problems keep the host graph's degrees and
// 2m, so each solved block maximizes its contribution to the host modularity.
PmClusterResult pm_cluster(const Graph& g, const PartitionParams& params, ClusterSolver solver,
                           unsigned threads, const ClusterOptions& options = {});

using ClusterBlockSolver =
    std::function<Clustering(const BlockModularityProblem&, std::size_t, std::uint64_t)>;
PmClusterResult pm_cluster_with_solver(const Graph& g, const PartitionParams& params,
                                       const ClusterBlockSolver& block_solver,
                                       double declared_alpha, unsigned threads,
                                       const ClusterOptions& options = {},
                                       PhaseTimings* timings = nullptr);

}  // namespace pm
