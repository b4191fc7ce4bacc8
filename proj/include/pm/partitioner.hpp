#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pm/graph.hpp"

namespace pm {

enum class OrderPolicy { SeededPermutation, ExplicitOrder };
enum class ProblemKind { Map, Modularity };

struct PartitionParams {
    std::uint32_t max_radius = 1;  // K, in hops
    double epsilon = 0.5;          // in (0, 1)
    std::uint64_t seed = 0;
    OrderPolicy order_policy = OrderPolicy::SeededPermutation;
    std::vector<Vertex> explicit_order;  // used when order_policy == ExplicitOrder
};

void validate_params(const PartitionParams& params);

// Result of iterative ball carving. Blocks are listed in carving order with
// vertices sorted ascending; every vertex of block k is within radii[k] hops
// (in the original graph) of pivots[k].
struct Partition {
    PartitionParams params;
    std::vector<std::vector<Vertex>> blocks;
    std::vector<Vertex> pivots;
    std::vector<std::uint32_t> radii;
    std::vector<Edge> boundary;        // edges with endpoints in distinct blocks
    double cut_fraction = 0.0;         // |boundary| / m, 0 for edgeless graphs
    std::vector<std::uint32_t> block_of;  // vertex -> block index

    std::size_t block_count() const { return blocks.size(); }
};

// Truncated geometric radius on {1..K}:
//   Pr(R = l) = eps * (1 - eps)^(l-1)   for 1 <= l < K
//   Pr(R = K) = (1 - eps)^(K-1)
// Inverse CDF on a single uniform draw.
std::uint32_t sample_radius(std::uint32_t max_radius, double epsilon, std::mt19937_64& rng);

// Iterative randomized ball carving. Pivots are visited in a seeded random
// permutation (or the explicit order); an unclaimed pivot claims every still
// unclaimed vertex within its sampled radius, with distances measured in the
// full original graph. Deterministic given (graph, params).
Partition carve_partition(const Graph& g, const PartitionParams& params);

// Edges whose endpoints lie in different blocks. blocks must partition V.
std::vector<Edge> boundary_edges(const Graph& g, const std::vector<std::vector<Vertex>>& blocks);

// Max over vertices of the closed K-hop neighborhood size (self included).
std::uint64_t hop_ball_bound(const Graph& g, std::uint32_t max_radius);

// Per-edge cut probability bound: eps + (1-eps)^(K-1) * |B(u,K) union B(v,K)|
// with the strict-< balls. Often vacuous (> 1) for small K.
double edge_cut_bound(const Graph& g, Edge e, std::uint32_t max_radius, double epsilon);

struct ParamRecommendation {
    ProblemKind problem = ProblemKind::Map;
    std::uint32_t rho = 1;
    std::uint64_t growth_c = 1;
    double delta = 0.0;
    double epsilon = 0.0;
    std::uint64_t max_radius = 0;    // K
    double k_tilde_analytic = 0.0;   // C * K^rho, as a double (can be astronomically large)
};

// Parameter selection for a target failure budget delta:
//   eps = delta / (2 C 2^rho)      (MAP)
//   eps = delta / (4 (2C - 1))     (modularity)
//   K   = ceil( (8 rho/eps) ln(8 rho/eps) + (4/eps) ln C + (4/eps) ln(1/eps) + 2 )
// The defining inequality C (1-eps)^(K-1) K^rho <= eps is re-checked in
// extended precision and asserted.
ParamRecommendation select_params(std::uint32_t rho, std::uint64_t growth_c, double delta,
                                  ProblemKind problem);

}  // namespace pm
