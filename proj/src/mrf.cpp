#include "pm/mrf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pm/rng.hpp"

namespace pm {

PairwiseMRF::PairwiseMRF(Graph graph, std::uint32_t alphabet_size,
                         std::vector<double> node_logpot, std::vector<double> edge_logpot)
    : graph_(std::move(graph)),
      q_(alphabet_size),
      node_logpot_(std::move(node_logpot)),
      edge_logpot_(std::move(edge_logpot)) {
    if (q_ < 2) throw std::invalid_argument("alphabet size must be >= 2");
    const std::size_t n = graph_.vertex_count();
    const std::size_t m = graph_.edges().size();
    if (node_logpot_.size() != n * q_) {
        throw std::invalid_argument("node potential table has wrong size");
    }
    if (edge_logpot_.size() != m * q_ * q_) {
        throw std::invalid_argument("edge potential table has wrong size");
    }
    nonnegative_ = true;
    for (double v : node_logpot_) {
        if (!std::isfinite(v)) throw std::invalid_argument("node log-potentials must be finite");
        if (v < 0.0) nonnegative_ = false;
    }
    for (double v : edge_logpot_) {
        if (!std::isfinite(v)) throw std::invalid_argument("edge log-potentials must be finite");
        if (v < 0.0) nonnegative_ = false;
    }
}

double PairwiseMRF::edge_logpot(Vertex i, Vertex j, Symbol a, Symbol b) const {
    if (i > j) {
        std::swap(i, j);
        std::swap(a, b);
    }
    const auto nb = graph_.neighbors(i);
    const auto ids = graph_.incident_edge_ids(i);
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) {
        throw std::invalid_argument("no edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    return edge_logpot_by_id(ids[static_cast<std::size_t>(it - nb.begin())], a, b);
}

namespace {

void check_assignment(const PairwiseMRF& mrf, const Assignment& x) {
    if (x.size() != mrf.graph().vertex_count()) {
        throw std::invalid_argument("assignment length does not match vertex count");
    }
    for (Symbol s : x) {
        if (s >= mrf.alphabet_size()) throw std::invalid_argument("assignment symbol out of range");
    }
}

}  // namespace

double evaluate_H(const PairwiseMRF& mrf, const Assignment& x) {
    check_assignment(mrf, x);
    double h = 0.0;
    for (Vertex i = 0; i < mrf.graph().vertex_count(); ++i) h += mrf.node_logpot(i, x[i]);
    const auto& edges = mrf.graph().edges();
    for (std::uint32_t id = 0; id < edges.size(); ++id) {
        h += mrf.edge_logpot_by_id(id, x[edges[id].u], x[edges[id].v]);
    }
    return h;
}

Assignment exact_map(const PairwiseMRF& mrf, std::uint64_t enumeration_limit) {
    const std::uint32_t n = mrf.graph().vertex_count();
    const std::uint32_t q = mrf.alphabet_size();

    long double space = 1.0L;
    for (std::uint32_t i = 0; i < n; ++i) space *= q;
    if (space > static_cast<long double>(enumeration_limit)) {
        throw std::runtime_error("exhaustive search space q^n = " + std::to_string(q) + "^" +
                                 std::to_string(n) + " exceeds limit " +
                                 std::to_string(enumeration_limit));
    }

    Assignment current(n, 0);
    Assignment best = current;
    double best_h = evaluate_H(mrf, current);
    // Odometer with the last position least significant enumerates assignments
    // in lexicographic order; keeping the first strict maximum yields the
    // lexicographically smallest maximizer.
    while (true) {
        std::int64_t pos = static_cast<std::int64_t>(n) - 1;
        while (pos >= 0 && current[static_cast<std::size_t>(pos)] == q - 1) {
            current[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++current[static_cast<std::size_t>(pos)];
        const double h = evaluate_H(mrf, current);
        if (h > best_h) {
            best_h = h;
            best = current;
        }
    }
    return best;
}

Assignment greedy_unary_init(const PairwiseMRF& mrf) {
    const std::uint32_t n = mrf.graph().vertex_count();
    const std::uint32_t q = mrf.alphabet_size();
    Assignment x(n, 0);
    for (Vertex i = 0; i < n; ++i) {
        Symbol arg = 0;
        double best = mrf.node_logpot(i, 0);
        for (Symbol a = 1; a < q; ++a) {
            const double v = mrf.node_logpot(i, a);
            if (v > best) {
                best = v;
                arg = a;
            }
        }
        x[i] = arg;
    }
    return x;
}

Assignment icm(const PairwiseMRF& mrf, Assignment init, std::uint32_t max_sweeps,
               std::mt19937_64& rng, IcmStats* stats) {
    check_assignment(mrf, init);
    if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
    const Graph& g = mrf.graph();
    const std::uint32_t n = g.vertex_count();
    const std::uint32_t q = mrf.alphabet_size();
    const auto& edges = g.edges();

    Assignment x = std::move(init);
    if (stats) *stats = IcmStats{};

    std::vector<double> score(q);
    for (std::uint32_t sweep = 0; sweep < max_sweeps; ++sweep) {
        const auto order = random_permutation(n, rng);
        std::uint64_t changes = 0;
        for (Vertex i : order) {
            for (Symbol a = 0; a < q; ++a) score[a] = mrf.node_logpot(i, a);
            const auto nb = g.neighbors(i);
            const auto ids = g.incident_edge_ids(i);
            for (std::size_t k = 0; k < nb.size(); ++k) {
                const Vertex j = nb[k];
                const std::uint32_t id = ids[k];
                const bool i_first = edges[id].u == i;
                for (Symbol a = 0; a < q; ++a) {
                    score[a] += i_first ? mrf.edge_logpot_by_id(id, a, x[j])
                                        : mrf.edge_logpot_by_id(id, x[j], a);
                }
            }
            Symbol arg = 0;
            for (Symbol a = 1; a < q; ++a) {
                if (score[a] > score[arg]) arg = a;
            }
            if (arg != x[i]) {
                x[i] = arg;
                ++changes;
                if (stats) stats->h_after_update.push_back(evaluate_H(mrf, x));
            }
        }
        if (stats) stats->sweeps = sweep + 1;
        if (changes == 0) {
            if (stats) stats->converged = true;
            break;
        }
    }
    return x;
}

RestrictedMRF restrict_mrf(const PairwiseMRF& mrf, const std::vector<Vertex>& block) {
    const Graph& g = mrf.graph();
    const std::uint32_t q = mrf.alphabet_size();

    std::vector<Vertex> back_map = block;
    std::sort(back_map.begin(), back_map.end());
    back_map.erase(std::unique(back_map.begin(), back_map.end()), back_map.end());
    for (Vertex v : back_map) {
        if (v >= g.vertex_count()) throw std::invalid_argument("block vertex out of range");
    }
    const auto local_n = static_cast<std::uint32_t>(back_map.size());
    auto local_index = [&back_map](Vertex v) -> std::int64_t {
        const auto it = std::lower_bound(back_map.begin(), back_map.end(), v);
        if (it == back_map.end() || *it != v) return -1;
        return it - back_map.begin();
    };

    std::vector<double> nodes(static_cast<std::size_t>(local_n) * q);
    for (std::uint32_t li = 0; li < local_n; ++li) {
        for (Symbol a = 0; a < q; ++a) nodes[static_cast<std::size_t>(li) * q + a] = mrf.node_logpot(back_map[li], a);
    }

    // The dense relabel is monotone, so kept edges arrive already in the
    // subgraph's canonical order and tables can be copied positionally.
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<double> tables;
    for (std::uint32_t lu = 0; lu < local_n; ++lu) {
        const Vertex u = back_map[lu];
        const auto nb = g.neighbors(u);
        const auto ids = g.incident_edge_ids(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (nb[k] <= u) continue;
            const std::int64_t lv = local_index(nb[k]);
            if (lv < 0) continue;
            pairs.emplace_back(lu, static_cast<Vertex>(lv));
            const std::uint32_t id = ids[k];
            for (Symbol a = 0; a < q; ++a) {
                for (Symbol b = 0; b < q; ++b) {
                    tables.push_back(mrf.edge_logpot_by_id(id, a, b));
                }
            }
        }
    }

    Graph sub(local_n, std::move(pairs));
    return RestrictedMRF{PairwiseMRF(std::move(sub), q, std::move(nodes), std::move(tables)),
                         std::move(back_map)};
}

PsiGap psi_gap_by_id(const PairwiseMRF& mrf, std::uint32_t edge_id) {
    const std::uint32_t q = mrf.alphabet_size();
    PsiGap gap{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (Symbol a = 0; a < q; ++a) {
        for (Symbol b = 0; b < q; ++b) {
            const double v = mrf.edge_logpot_by_id(edge_id, a, b);
            gap.upper = std::max(gap.upper, v);
            gap.lower = std::min(gap.lower, v);
        }
    }
    return gap;
}

PsiGap psi_gap(const PairwiseMRF& mrf, Edge e) {
    if (e.u > e.v) std::swap(e.u, e.v);
    const auto& edges = mrf.graph().edges();
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || !(*it == e)) {
        throw std::invalid_argument("psi_gap: edge not in graph");
    }
    return psi_gap_by_id(mrf, static_cast<std::uint32_t>(it - edges.begin()));
}

double map_lower_bound(const PairwiseMRF& mrf) {
    if (!mrf.nonnegative()) {
        throw std::invalid_argument("map_lower_bound requires nonnegative log-potentials");
    }
    double gap_sum = 0.0;
    for (std::uint32_t id = 0; id < mrf.graph().edges().size(); ++id) {
        const PsiGap gap = psi_gap_by_id(mrf, id);
        gap_sum += gap.upper - gap.lower;
    }
    return gap_sum / (static_cast<double>(max_degree(mrf.graph())) + 1.0);
}

}  // namespace pm
