#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pm/graph.hpp"

namespace pm {

using Symbol = std::uint32_t;
using Assignment = std::vector<Symbol>;

// Pairwise Markov random field over a finite alphabet, potentials stored in
// log domain. The objective of an assignment x is
//   H(x) = sum_i theta_i(x_i) + sum_{(i,j) in E} theta_ij(x_i, x_j)
// with each undirected edge counted once.
class PairwiseMRF {
public:
    // node_logpot: n*q values, vertex-major. edge_logpot: m*q*q values aligned
    // with graph.edges(); table entry a*q+b is theta_uv(a, b) for the canonical
    // edge (u, v), u < v. All values must be finite.
    PairwiseMRF(Graph graph, std::uint32_t alphabet_size, std::vector<double> node_logpot,
                std::vector<double> edge_logpot);

    const Graph& graph() const { return graph_; }
    std::uint32_t alphabet_size() const { return q_; }

    double node_logpot(Vertex i, Symbol a) const {
        return node_logpot_[static_cast<std::size_t>(i) * q_ + a];
    }
    double edge_logpot_by_id(std::uint32_t edge_id, Symbol a, Symbol b) const {
        return edge_logpot_[(static_cast<std::size_t>(edge_id) * q_ + a) * q_ + b];
    }
    // Orientation-free access: theta_ij(a, b) == theta_ji(b, a).
    double edge_logpot(Vertex i, Vertex j, Symbol a, Symbol b) const;

    // True iff every log-potential is >= 0; gates the multiplicative bounds.
    bool nonnegative() const { return nonnegative_; }

    const std::vector<double>& node_table() const { return node_logpot_; }
    const std::vector<double>& edge_table() const { return edge_logpot_; }

private:
    Graph graph_;
    std::uint32_t q_;
    std::vector<double> node_logpot_;
    std::vector<double> edge_logpot_;
    bool nonnegative_ = false;
};

double evaluate_H(const PairwiseMRF& mrf, const Assignment& x);

constexpr std::uint64_t kDefaultEnumerationLimit = 1ull << 24;

// Exhaustive maximization over all q^n assignments; among ties returns the
// lexicographically smallest. Throws if q^n exceeds the limit.
Assignment exact_map(const PairwiseMRF& mrf, std::uint64_t enumeration_limit = kDefaultEnumerationLimit);

struct IcmStats {
    std::uint32_t sweeps = 0;
    bool converged = false;
    std::vector<double> h_after_update;  // objective after each accepted update
};

// Iterated conditional modes: full sweeps in seeded-random vertex order, each
// update moves a vertex to its conditional argmax (ties -> smallest symbol).
// Stops after a sweep with no changes or at max_sweeps. stats is optional and
// records the objective trace (slow; meant for tests).
Assignment icm(const PairwiseMRF& mrf, Assignment init, std::uint32_t max_sweeps,
               std::mt19937_64& rng, IcmStats* stats = nullptr);

// Per-vertex argmax of the node potentials, the default ICM start.
Assignment greedy_unary_init(const PairwiseMRF& mrf);

struct RestrictedMRF {
    PairwiseMRF mrf;
    std::vector<Vertex> back_map;  // local index -> original vertex
};

// Induced sub-MRF on a vertex subset: node potentials copied, only edges with
// both endpoints inside kept, ids relabeled densely (ascending order).
RestrictedMRF restrict_mrf(const PairwiseMRF& mrf, const std::vector<Vertex>& block);

struct PsiGap {
    double upper = 0.0;
    double lower = 0.0;
};

// Max and min entry of an edge's q x q log-potential table.
PsiGap psi_gap(const PairwiseMRF& mrf, Edge e);
PsiGap psi_gap_by_id(const PairwiseMRF& mrf, std::uint32_t edge_id);

// Certified lower bound on the optimum: sum of edge gaps over (d* + 1).
// Requires nonnegative potentials.
double map_lower_bound(const PairwiseMRF& mrf);

}  // namespace pm
