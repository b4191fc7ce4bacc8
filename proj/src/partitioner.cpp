#include "pm/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "pm/rng.hpp"

namespace pm {

void validate_params(const PartitionParams& params) {
    if (params.max_radius < 1) throw std::invalid_argument("K must be >= 1");
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    if (params.order_policy == OrderPolicy::ExplicitOrder &&
        params.explicit_order.empty()) {
        throw std::invalid_argument("explicit order policy needs a nonempty order");
    }
}

std::uint32_t sample_radius(std::uint32_t max_radius, double epsilon, std::mt19937_64& rng) {
    const double u = uniform_unit(rng);
    if (max_radius == 1) return 1;
    // Smallest l with u < CDF(l) = 1 - (1-eps)^l, i.e.
    // l = floor(ln(1-u) / ln(1-eps)) + 1, truncated at K.
    const double steps = std::log1p(-u) / std::log1p(-epsilon);
    if (steps >= static_cast<double>(max_radius) - 1.0) return max_radius;
    return static_cast<std::uint32_t>(steps) + 1;
}

Partition carve_partition(const Graph& g, const PartitionParams& params) {
    validate_params(params);
    const std::uint32_t n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("cannot partition the empty graph");

    std::vector<Vertex> order;
    if (params.order_policy == OrderPolicy::SeededPermutation) {
        auto perm_rng = make_engine(derive_seed(params.seed, Stream::PivotOrder));
        order = random_permutation(n, perm_rng);
    } else {
        order = params.explicit_order;
        std::vector<bool> seen(n, false);
        if (order.size() != n) throw std::invalid_argument("explicit order must list every vertex once");
        for (Vertex v : order) {
            if (v >= n || seen[v]) throw std::invalid_argument("explicit order is not a permutation");
            seen[v] = true;
        }
    }

    auto radius_rng = make_engine(derive_seed(params.seed, Stream::Radius));

    Partition part;
    part.params = params;
    part.block_of.assign(n, UINT32_MAX);

    // Bounded BFS from each unclaimed pivot. Claimed vertices are still
    // traversed: the metric stays that of the original graph.
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<std::uint32_t> depth(n, 0);
    std::uint32_t epoch = 0;
    std::deque<Vertex> queue;

    for (Vertex pivot : order) {
        if (part.block_of[pivot] != UINT32_MAX) continue;
        const std::uint32_t radius = sample_radius(params.max_radius, params.epsilon, radius_rng);
        const auto block_index = static_cast<std::uint32_t>(part.blocks.size());

        ++epoch;
        queue.clear();
        queue.push_back(pivot);
        stamp[pivot] = epoch;
        depth[pivot] = 0;
        std::vector<Vertex> claimed;
        while (!queue.empty()) {
            const Vertex v = queue.front();
            queue.pop_front();
            if (part.block_of[v] == UINT32_MAX) {
                part.block_of[v] = block_index;
                claimed.push_back(v);
            }
            if (depth[v] == radius) continue;
            for (Vertex w : g.neighbors(v)) {
                if (stamp[w] != epoch) {
                    stamp[w] = epoch;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        std::sort(claimed.begin(), claimed.end());
        part.blocks.push_back(std::move(claimed));
        part.pivots.push_back(pivot);
        part.radii.push_back(radius);
    }

    for (const Edge& e : g.edges()) {
        if (part.block_of[e.u] != part.block_of[e.v]) part.boundary.push_back(e);
    }
    part.cut_fraction =
        g.edge_count() == 0
            ? 0.0
            : static_cast<double>(part.boundary.size()) / static_cast<double>(g.edge_count());
    return part;
}

std::vector<Edge> boundary_edges(const Graph& g, const std::vector<std::vector<Vertex>>& blocks) {
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint32_t> block_of(n, UINT32_MAX);
    std::uint64_t covered = 0;
    for (std::uint32_t k = 0; k < blocks.size(); ++k) {
        for (Vertex v : blocks[k]) {
            if (v >= n || block_of[v] != UINT32_MAX) {
                throw std::invalid_argument("blocks do not form a partition of V");
            }
            block_of[v] = k;
            ++covered;
        }
    }
    if (covered != n) throw std::invalid_argument("blocks do not cover V");

    std::vector<Edge> result;
    for (const Edge& e : g.edges()) {
        if (block_of[e.u] != block_of[e.v]) result.push_back(e);
    }
    return result;
}

std::uint64_t hop_ball_bound(const Graph& g, std::uint32_t max_radius) {
    if (max_radius < 1) throw std::invalid_argument("K must be >= 1");
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint32_t> stamp(n, 0), depth(n, 0);
    std::uint32_t epoch = 0;
    std::deque<Vertex> queue;
    std::uint64_t best = 0;
    for (Vertex i = 0; i < n; ++i) {
        ++epoch;
        queue.assign(1, i);
        stamp[i] = epoch;
        depth[i] = 0;
        std::uint64_t count = 0;
        while (!queue.empty()) {
            const Vertex v = queue.front();
            queue.pop_front();
            ++count;
            if (depth[v] == max_radius) continue;
            for (Vertex w : g.neighbors(v)) {
                if (stamp[w] != epoch) {
                    stamp[w] = epoch;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        best = std::max(best, count);
    }
    return best;
}

double edge_cut_bound(const Graph& g, Edge e, std::uint32_t max_radius, double epsilon) {
    if (!g.has_edge(e.u, e.v)) throw std::invalid_argument("edge_cut_bound needs an edge of g");
    const auto ball_u = ball(g, e.u, max_radius);
    const auto ball_v = ball(g, e.v, max_radius);
    std::vector<Vertex> merged;
    merged.reserve(ball_u.size() + ball_v.size());
    std::set_union(ball_u.begin(), ball_u.end(), ball_v.begin(), ball_v.end(),
                   std::back_inserter(merged));
    const double p_k = std::pow(1.0 - epsilon, static_cast<double>(max_radius) - 1.0);
    return epsilon + p_k * static_cast<double>(merged.size());
}

ParamRecommendation select_params(std::uint32_t rho, std::uint64_t growth_c, double delta,
                                  ProblemKind problem) {
    if (rho < 1) throw std::invalid_argument("rho must be >= 1");
    if (growth_c < 1) throw std::invalid_argument("growth constant must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");

    const double c = static_cast<double>(growth_c);
    const double eps = problem == ProblemKind::Map
                           ? delta / (2.0 * c * std::pow(2.0, static_cast<double>(rho)))
                           : delta / (4.0 * (2.0 * c - 1.0));

    const double lead = 8.0 * static_cast<double>(rho) / eps;
    const double k_raw =
        lead * std::log(lead) + (4.0 / eps) * std::log(c) + (4.0 / eps) * std::log(1.0 / eps) + 2.0;
    const auto k = static_cast<std::uint64_t>(std::ceil(k_raw));

    // Defining inequality, in extended precision. Larger K only strengthens it.
    const long double lhs = static_cast<long double>(c) *
                            std::pow(1.0L - static_cast<long double>(eps),
                                     static_cast<long double>(k) - 1.0L) *
                            std::pow(static_cast<long double>(k), static_cast<long double>(rho));
    if (lhs > static_cast<long double>(eps)) {
        throw std::logic_error("parameter selection failed its defining inequality");
    }

    ParamRecommendation rec;
    rec.problem = problem;
    rec.rho = rho;
    rec.growth_c = growth_c;
    rec.delta = delta;
    rec.epsilon = eps;
    rec.max_radius = k;
    rec.k_tilde_analytic = c * std::pow(static_cast<double>(k), static_cast<double>(rho));
    return rec;
}

}  // namespace pm
