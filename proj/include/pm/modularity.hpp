#pragma once

#include <cstdint>
#include <vector>

#include "pm/graph.hpp"

namespace pm {

// A clustering is a coloring: two vertices share a cluster iff their labels
// are equal. Label values themselves carry no meaning.
using Clustering = std::vector<std::uint32_t>;

// Whether the i == j terms enter the ordered-pair modularity sum. Include is
// the convention used throughout (it makes the one-cluster modularity exactly
// zero); Exclude exists for sensitivity checks only.
enum class DiagonalConvention { Include, Exclude };

// M(chi) = (1/2m) * sum over ordered pairs (i,j), including i=j, of
// 1{chi(i)=chi(j)} (A_ij - d_i d_j / 2m). Throws on edgeless graphs.
double modularity(const Graph& g, const Clustering& chi,
                  DiagonalConvention diag = DiagonalConvention::Include);

// A block clustering problem: maximize the block's contribution to a host
// graph's modularity. For a standalone graph the strengths are its own
// degrees and two_m is twice its edge count; inside the partition-merge
// pipeline the strengths stay those of the host graph.
struct BlockModularityProblem {
    Graph subgraph;
    std::vector<double> strength;  // per local vertex
    double two_m = 0.0;            // host normalization
};

BlockModularityProblem whole_graph_problem(const Graph& g);

// Unnormalized contribution: sum over ordered local pairs, including i=j, of
// 1{labels equal} (A_ij - s_i s_j / two_m). Dividing by two_m gives the
// block's share of the host modularity.
double block_modularity_sum(const BlockModularityProblem& problem, const Clustering& labels);

constexpr std::uint64_t kDefaultBellLimit = 4213597;  // Bell(12)

std::uint64_t bell_number(std::uint32_t n);

// Exhaustive maximization over all set partitions, enumerated as
// restricted-growth strings; ties resolve to the lexicographically smallest
// string. Throws when Bell(n) exceeds the limit.
Clustering exact_block_clustering(const BlockModularityProblem& problem,
                                  std::uint64_t bell_limit = kDefaultBellLimit);
Clustering exact_modularity(const Graph& g, std::uint64_t bell_limit = kDefaultBellLimit);

// Agglomerative merging from singletons: repeatedly joins the cluster pair
// with the largest positive gain, ties to the smallest id pair.
Clustering greedy_block_clustering(const BlockModularityProblem& problem);
Clustering greedy_modularity(const Graph& g);

// Analytic floor on the optimal modularity for graphs with max degree <= C:
//   (1 / (2(2C-1))) * (1 - C^2 / 2m).
// Can exceed the true optimum on very small m; intended for m >= 2 C^2.
double modularity_lower_bound(std::uint64_t degree_bound_c, std::uint64_t edge_count_m);

// Stitches per-block labelings into one clustering with disjoint label
// ranges per block. back_maps must jointly partition 0..n-1.
Clustering merge_clusterings(const std::vector<Clustering>& block_labels,
                             const std::vector<std::vector<Vertex>>& back_maps);

}  // namespace pm
