#include "pm/modularity.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace pm {

namespace {

void check_labels(std::size_t n, const Clustering& chi) {
    if (chi.size() != n) throw std::invalid_argument("clustering length does not match vertex count");
    for (std::uint32_t label : chi) {
        if (label >= n && n > 0) throw std::invalid_argument("cluster label out of range");
    }
}

}  // namespace

BlockModularityProblem whole_graph_problem(const Graph& g) {
    BlockModularityProblem problem;
    problem.strength.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) problem.strength[v] = g.degree(v);
    problem.two_m = 2.0 * static_cast<double>(g.edge_count());
    problem.subgraph = g;
    return problem;
}

double block_modularity_sum(const BlockModularityProblem& problem, const Clustering& labels) {
    const Graph& g = problem.subgraph;
    const std::uint32_t n = g.vertex_count();
    check_labels(n, labels);
    if (problem.two_m <= 0.0) throw std::invalid_argument("host graph must have at least one edge");

    // 2 * (within-cluster edges) - sum_c (cluster strength)^2 / two_m;
    // the diagonal i=j terms are part of the strength-square sum.
    double within_twice = 0.0;
    for (const Edge& e : g.edges()) {
        if (labels[e.u] == labels[e.v]) within_twice += 2.0;
    }
    std::vector<double> cluster_strength(n, 0.0);
    for (Vertex v = 0; v < n; ++v) cluster_strength[labels[v]] += problem.strength[v];
    double strength_sq = 0.0;
    for (double s : cluster_strength) strength_sq += s * s;
    return within_twice - strength_sq / problem.two_m;
}

double modularity(const Graph& g, const Clustering& chi, DiagonalConvention diag) {
    if (g.edge_count() == 0) throw std::invalid_argument("modularity undefined for edgeless graph");
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    double sum = block_modularity_sum(whole_graph_problem(g), chi);
    if (diag == DiagonalConvention::Exclude) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            const double d = g.degree(v);
            sum += d * d / two_m;
        }
    }
    return sum / two_m;
}

std::uint64_t bell_number(std::uint32_t n) {
    // Bell triangle; overflow-checked (Bell(25) already exceeds 2^63).
    std::vector<std::uint64_t> row{1};
    for (std::uint32_t i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> next(i + 1);
        next[0] = row.back();
        for (std::uint32_t j = 0; j < i; ++j) {
            if (next[j] > std::numeric_limits<std::uint64_t>::max() - row[j]) {
                throw std::overflow_error("Bell number overflow");
            }
            next[j + 1] = next[j] + row[j];
        }
        row = std::move(next);
    }
    return row[0];
}

Clustering exact_block_clustering(const BlockModularityProblem& problem,
                                  std::uint64_t bell_limit) {
    const std::uint32_t n = problem.subgraph.vertex_count();
    if (n == 0) throw std::invalid_argument("cannot cluster the empty graph");
    if (problem.two_m <= 0.0) throw std::invalid_argument("host graph must have at least one edge");
    if (bell_number(n) > bell_limit) {
        throw std::runtime_error("set-partition space Bell(" + std::to_string(n) + ") = " +
                                 std::to_string(bell_number(n)) + " exceeds limit " +
                                 std::to_string(bell_limit));
    }

    // Restricted-growth strings in lexicographic order: a[0] = 0 and
    // a[i] <= 1 + max(a[0..i-1]). cap[i] holds that maximum allowed value.
    Clustering a(n, 0);
    std::vector<std::uint32_t> cap(n, 0);
    for (std::size_t j = 1; j < n; ++j) cap[j] = std::max(cap[j - 1], a[j - 1] + 1);
    std::vector<double> cluster_strength(n);
    const auto& edges = problem.subgraph.edges();
    const auto evaluate = [&]() {
        double within_twice = 0.0;
        for (const Edge& e : edges) {
            if (a[e.u] == a[e.v]) within_twice += 2.0;
        }
        std::fill(cluster_strength.begin(), cluster_strength.end(), 0.0);
        for (Vertex v = 0; v < n; ++v) cluster_strength[a[v]] += problem.strength[v];
        double strength_sq = 0.0;
        for (double s : cluster_strength) strength_sq += s * s;
        return within_twice - strength_sq / problem.two_m;
    };

    Clustering best = a;
    double best_sum = evaluate();
    while (true) {
        std::int64_t i = static_cast<std::int64_t>(n) - 1;
        while (i > 0 && a[static_cast<std::size_t>(i)] == cap[static_cast<std::size_t>(i)]) --i;
        if (i <= 0) break;
        ++a[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
            a[j] = 0;
            cap[j] = std::max(cap[j - 1], a[j - 1] + 1);
        }
        const double sum = evaluate();
        if (sum > best_sum) {
            best_sum = sum;
            best = a;
        }
    }
    return best;
}

Clustering exact_modularity(const Graph& g, std::uint64_t bell_limit) {
    if (g.edge_count() == 0) throw std::invalid_argument("modularity undefined for edgeless graph");
    return exact_block_clustering(whole_graph_problem(g), bell_limit);
}

Clustering greedy_block_clustering(const BlockModularityProblem& problem) {
    const Graph& g = problem.subgraph;
    const std::uint32_t n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("cannot cluster the empty graph");
    const double two_m = problem.two_m;
    if (two_m <= 0.0) throw std::invalid_argument("host graph must have at least one edge");

    // Live clusters keep the smallest member id. cross[c] holds edge
    // multiplicities to other live clusters (std::map for deterministic scans).
    std::vector<double> strength = problem.strength;
    std::vector<std::map<std::uint32_t, double>> cross(n);
    std::vector<bool> alive(n, true);
    for (const Edge& e : g.edges()) {
        cross[e.u][e.v] += 1.0;
        cross[e.v][e.u] += 1.0;
    }
    std::vector<std::uint32_t> cluster_of(n);
    for (std::uint32_t v = 0; v < n; ++v) cluster_of[v] = v;

    while (true) {
        // Merging clusters a and b changes the unnormalized sum by
        // 2*E_ab - 2*S_a*S_b/two_m.
        double best_gain = 0.0;
        std::uint32_t best_a = 0, best_b = 0;
        bool found = false;
        for (std::uint32_t a = 0; a < n; ++a) {
            if (!alive[a]) continue;
            for (const auto& [b, weight] : cross[a]) {
                if (b <= a) continue;
                const double gain = 2.0 * weight - 2.0 * strength[a] * strength[b] / two_m;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_a = a;
                    best_b = b;
                    found = true;
                }
            }
        }
        if (!found) break;

        alive[best_b] = false;
        strength[best_a] += strength[best_b];
        for (const auto& [c, weight] : cross[best_b]) {
            if (c == best_a) continue;
            cross[best_a][c] += weight;
            cross[c].erase(best_b);
            cross[c][best_a] += weight;
        }
        cross[best_a].erase(best_b);
        cross[best_b].clear();
        for (std::uint32_t v = 0; v < n; ++v) {
            if (cluster_of[v] == best_b) cluster_of[v] = best_a;
        }
    }
    return cluster_of;
}

Clustering greedy_modularity(const Graph& g) {
    if (g.edge_count() == 0) throw std::invalid_argument("modularity undefined for edgeless graph");
    return greedy_block_clustering(whole_graph_problem(g));
}

double modularity_lower_bound(std::uint64_t degree_bound_c, std::uint64_t edge_count_m) {
    if (degree_bound_c < 1) throw std::invalid_argument("degree bound must be >= 1");
    if (edge_count_m < 1) throw std::invalid_argument("edge count must be >= 1");
    const double c = static_cast<double>(degree_bound_c);
    const double m = static_cast<double>(edge_count_m);
    return (1.0 / (2.0 * (2.0 * c - 1.0))) * (1.0 - c * c / (2.0 * m));
}

Clustering merge_clusterings(const std::vector<Clustering>& block_labels,
                             const std::vector<std::vector<Vertex>>& back_maps) {
    if (block_labels.size() != back_maps.size()) {
        throw std::invalid_argument("block label and back-map counts differ");
    }
    std::uint64_t total = 0;
    for (const auto& bm : back_maps) total += bm.size();
    Clustering merged(total, UINT32_MAX);

    std::uint32_t offset = 0;
    for (std::size_t k = 0; k < block_labels.size(); ++k) {
        const Clustering& labels = block_labels[k];
        const std::vector<Vertex>& back = back_maps[k];
        if (labels.size() != back.size()) {
            throw std::invalid_argument("block labeling does not match its back-map");
        }
        // Normalize block labels to dense first-appearance order, then offset.
        std::vector<std::uint32_t> dense(labels.size(), UINT32_MAX);
        std::uint32_t next = 0;
        std::unordered_map<std::uint32_t, std::uint32_t> seen;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const auto [it, inserted] = seen.emplace(labels[i], next);
            if (inserted) ++next;
            dense[i] = it->second;
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const Vertex v = back[i];
            if (v >= total || merged[v] != UINT32_MAX) {
                throw std::invalid_argument("back-maps do not partition the vertex set");
            }
            merged[v] = offset + dense[i];
        }
        offset += next;
    }
    for (std::uint32_t label : merged) {
        if (label == UINT32_MAX) throw std::invalid_argument("back-maps do not cover the vertex set");
    }
    return merged;
}

}  // namespace pm
