#include "pm/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pm/parallel.hpp"
#include "pm/rng.hpp"

namespace pm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double analytic_block_bound(const std::optional<GrowthInput>& growth, std::uint64_t k) {
    if (!growth) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(growth->growth_c) *
           std::pow(static_cast<double>(k), static_cast<double>(growth->rho));
}

}  // namespace

PmMapResult pm_map_with_solver(const PairwiseMRF& mrf, const PartitionParams& params,
                               const MapBlockSolver& block_solver, double declared_alpha,
                               unsigned threads, const MapOptions& options,
                               PhaseTimings* timings) {
    const Graph& g = mrf.graph();

    auto t0 = Clock::now();
    Partition partition = carve_partition(g, params);
    if (timings) timings->partition_ms = ms_since(t0);

    t0 = Clock::now();
    const std::size_t p = partition.block_count();
    std::vector<Assignment> block_solutions(p);
    std::vector<std::vector<Vertex>> back_maps(p);
    parallel_for_index(p, threads, [&](std::size_t k) {
        RestrictedMRF restricted = restrict_mrf(mrf, partition.blocks[k]);
        const std::uint64_t block_seed = derive_seed(params.seed, Stream::BlockSolve, k);
        block_solutions[k] = block_solver(restricted.mrf, k, block_seed);
        if (block_solutions[k].size() != restricted.back_map.size()) {
            throw std::logic_error("block solver returned a wrong-sized assignment");
        }
        back_maps[k] = std::move(restricted.back_map);
    });
    if (timings) timings->solve_ms = ms_since(t0);

    t0 = Clock::now();
    Assignment stitched(g.vertex_count(), 0);
    for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t i = 0; i < back_maps[k].size(); ++i) {
            stitched[back_maps[k][i]] = block_solutions[k][i];
        }
    }

    MapCertificate cert;
    cert.h_hat = evaluate_H(mrf, stitched);
    cert.boundary_penalty = 0.0;
    const auto& edges = g.edges();
    for (std::uint32_t id = 0; id < edges.size(); ++id) {
        if (partition.block_of[edges[id].u] != partition.block_of[edges[id].v]) {
            const PsiGap gap = psi_gap_by_id(mrf, id);
            cert.boundary_penalty += gap.upper - gap.lower;
        }
    }
    cert.alpha_used = declared_alpha;
    cert.k_tilde_hop = hop_ball_bound(g, params.max_radius);
    cert.k_tilde_analytic = analytic_block_bound(options.growth, params.max_radius);
    cert.implied_opt_upper = declared_alpha * cert.h_hat + cert.boundary_penalty;
    if (timings) timings->merge_ms = ms_since(t0);

    return PmMapResult{std::move(stitched), cert, std::move(partition)};
}

PmMapResult pm_map(const PairwiseMRF& mrf, const PartitionParams& params, MapSolver solver,
                   unsigned threads, const MapOptions& options) {
    if (solver == MapSolver::Exact) {
        const auto limit = options.enumeration_limit;
        MapBlockSolver exact = [limit](const PairwiseMRF& block, std::size_t k, std::uint64_t) {
            try {
                return exact_map(block, limit);
            } catch (const std::runtime_error& err) {
                throw std::runtime_error("block " + std::to_string(k) + ": " + err.what());
            }
        };
        return pm_map_with_solver(mrf, params, exact, 1.0, threads, options);
    }
    const auto sweeps = options.max_sweeps;
    MapBlockSolver icm_solver = [sweeps](const PairwiseMRF& block, std::size_t,
                                         std::uint64_t block_seed) {
        auto rng = make_engine(block_seed);
        return icm(block, greedy_unary_init(block), sweeps, rng);
    };
    return pm_map_with_solver(mrf, params, icm_solver,
                              std::numeric_limits<double>::quiet_NaN(), threads, options);
}

PmClusterResult pm_cluster_with_solver(const Graph& g, const PartitionParams& params,
                                       const ClusterBlockSolver& block_solver,
                                       double declared_alpha, unsigned threads,
                                       const ClusterOptions& options, PhaseTimings* timings) {
    if (g.edge_count() == 0) throw std::invalid_argument("modularity undefined for edgeless graph");
    const double two_m = 2.0 * static_cast<double>(g.edge_count());

    auto t0 = Clock::now();
    Partition partition = carve_partition(g, params);
    if (timings) timings->partition_ms = ms_since(t0);

    t0 = Clock::now();
    const std::size_t p = partition.block_count();
    std::vector<Clustering> block_labels(p);
    parallel_for_index(p, threads, [&](std::size_t k) {
        const std::vector<Vertex>& block = partition.blocks[k];  // sorted
        const auto rank_of = [&block](Vertex v) {
            return static_cast<Vertex>(
                std::lower_bound(block.begin(), block.end(), v) - block.begin());
        };
        std::vector<std::pair<Vertex, Vertex>> local_edges;
        for (Vertex v : block) {
            for (Vertex w : g.neighbors(v)) {
                if (v < w && partition.block_of[w] == k) {
                    local_edges.emplace_back(rank_of(v), rank_of(w));
                }
            }
        }
        BlockModularityProblem problem;
        problem.subgraph = Graph(static_cast<std::uint32_t>(block.size()), std::move(local_edges));
        problem.two_m = two_m;
        problem.strength.resize(block.size());
        for (std::uint32_t i = 0; i < block.size(); ++i) {
            problem.strength[i] = g.degree(block[i]);
        }
        const std::uint64_t block_seed = derive_seed(params.seed, Stream::BlockSolve, k);
        block_labels[k] = block_solver(problem, k, block_seed);
        if (block_labels[k].size() != block.size()) {
            throw std::logic_error("block solver returned a wrong-sized clustering");
        }
    });
    if (timings) timings->solve_ms = ms_since(t0);

    t0 = Clock::now();
    Clustering stitched = merge_clusterings(block_labels, partition.blocks);

    ModCertificate cert;
    cert.m_hat = modularity(g, stitched);
    cert.penalty = static_cast<double>(partition.boundary.size()) / two_m;
    cert.alpha_used = declared_alpha;
    cert.k_tilde_hop = hop_ball_bound(g, params.max_radius);
    cert.k_tilde_analytic = analytic_block_bound(options.growth, params.max_radius);
    // Doubled penalty: see the ModCertificate note.
    cert.implied_opt_upper = declared_alpha * cert.m_hat + 2.0 * cert.penalty;
    if (timings) timings->merge_ms = ms_since(t0);

    return PmClusterResult{std::move(stitched), cert, std::move(partition)};
}

PmClusterResult pm_cluster(const Graph& g, const PartitionParams& params, ClusterSolver solver,
                           unsigned threads, const ClusterOptions& options) {
    if (solver == ClusterSolver::Exact) {
        const auto limit = options.bell_limit;
        ClusterBlockSolver exact = [limit](const BlockModularityProblem& problem, std::size_t k,
                                           std::uint64_t) {
            try {
                return exact_block_clustering(problem, limit);
            } catch (const std::runtime_error& err) {
                throw std::runtime_error("block " + std::to_string(k) + ": " + err.what());
            }
        };
        return pm_cluster_with_solver(g, params, exact, 1.0, threads, options);
    }
    ClusterBlockSolver greedy = [](const BlockModularityProblem& problem, std::size_t,
                                   std::uint64_t) { return greedy_block_clustering(problem); };
    return pm_cluster_with_solver(g, params, greedy,
                                  std::numeric_limits<double>::quiet_NaN(), threads, options);
}

}  // namespace pm
