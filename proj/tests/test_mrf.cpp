#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "pm/harness.hpp"
#include "pm/mrf.hpp"
#include "pm/rng.hpp"
#include "support/oracles.hpp"

using namespace pm;

namespace {

PairwiseMRF single_node_mrf() {
    return PairwiseMRF(Graph(1, {}), 2, {0.0, 1.0}, {});
}

// Two nodes, flat unaries, edge table rewarding equal symbols.
PairwiseMRF attractive_pair() {
    return PairwiseMRF(Graph(2, {{0, 1}}), 2, {0.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 1.0});
}

}  // namespace

TEST_CASE("objective evaluation") {
    SUBCASE("single node") {
        CHECK(evaluate_H(single_node_mrf(), {1}) == doctest::Approx(1.0));
    }
    SUBCASE("equality-attractive pair") {
        CHECK(evaluate_H(attractive_pair(), {0, 0}) == doctest::Approx(1.0));
        CHECK(evaluate_H(attractive_pair(), {0, 1}) == doctest::Approx(0.0));
    }
    SUBCASE("edgeless graph sums node terms only") {
        const PairwiseMRF mrf(Graph(3, {}), 2, {0.0, 1.0, 0.5, 0.0, 2.0, 0.0}, {});
        CHECK(evaluate_H(mrf, {1, 0, 0}) == doctest::Approx(1.0 + 0.5 + 2.0));
    }
    SUBCASE("matches the adjacency-route oracle on random instances") {
        auto rng = make_engine(23);
        for (int trial = 0; trial < 20; ++trial) {
            const Graph g = testing::random_connected_graph(10, 6, rng);
            const PairwiseMRF mrf = make_random_mrf(g, 3, rng());
            Assignment x(g.vertex_count());
            for (auto& s : x) s = static_cast<Symbol>(uniform_below(rng, 3));
            CHECK(evaluate_H(mrf, x) ==
                  doctest::Approx(testing::oracle_evaluate_h(mrf, x)).epsilon(1e-12));
        }
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(evaluate_H(single_node_mrf(), {0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(evaluate_H(single_node_mrf(), {7}), std::invalid_argument);
    }
}

TEST_CASE("exhaustive maximization") {
    SUBCASE("single node argmax") {
        CHECK(exact_map(single_node_mrf()) == Assignment{1});
    }
    SUBCASE("ties go to the lexicographically smallest assignment") {
        CHECK(exact_map(attractive_pair()) == Assignment{0, 0});
    }
    SUBCASE("matches the independent oracle on random instances") {
        auto rng = make_engine(31);
        for (int trial = 0; trial < 25; ++trial) {
            const Graph g = testing::random_connected_graph(8, 5, rng);
            const PairwiseMRF mrf = make_random_mrf(g, 2, rng(), -1.0, 1.0);
            const Assignment x = exact_map(mrf);
            const auto oracle = testing::oracle_exact_map(mrf);
            CHECK(evaluate_H(mrf, x) == doctest::Approx(oracle.value).epsilon(1e-12));
            CHECK(x == oracle.assignment);
        }
    }
    SUBCASE("size guard names the search space") {
        const Graph g = generate_path(40);
        const PairwiseMRF mrf = make_random_mrf(g, 2, 1);
        CHECK_THROWS_WITH_AS(exact_map(mrf), doctest::Contains("2^40"), std::runtime_error);
    }
    SUBCASE("relabeling permutes the solution") {
        auto rng = make_engine(37);
        const Graph g = testing::random_connected_graph(7, 4, rng);
        const PairwiseMRF mrf = make_random_mrf(g, 2, 77, -1.0, 1.0);
        const std::uint32_t n = g.vertex_count();
        const std::uint32_t q = mrf.alphabet_size();
        const auto perm = random_permutation(n, rng);

        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (const Edge& e : g.edges()) pairs.emplace_back(perm[e.u], perm[e.v]);
        Graph permuted_graph(n, pairs);
        std::vector<double> nodes(static_cast<std::size_t>(n) * q);
        for (Vertex v = 0; v < n; ++v) {
            for (Symbol a = 0; a < q; ++a) {
                nodes[static_cast<std::size_t>(perm[v]) * q + a] = mrf.node_logpot(v, a);
            }
        }
        std::vector<double> tables(mrf.edge_table().size());
        const auto& new_edges = permuted_graph.edges();
        for (const Edge& e : g.edges()) {
            const Edge target{std::min(perm[e.u], perm[e.v]), std::max(perm[e.u], perm[e.v])};
            const auto it = std::lower_bound(new_edges.begin(), new_edges.end(), target);
            const auto id = static_cast<std::size_t>(it - new_edges.begin());
            const bool flipped = perm[e.u] > perm[e.v];
            for (Symbol a = 0; a < q; ++a) {
                for (Symbol b = 0; b < q; ++b) {
                    const double v = mrf.edge_logpot(e.u, e.v, a, b);
                    if (flipped) {
                        tables[(id * q + b) * q + a] = v;
                    } else {
                        tables[(id * q + a) * q + b] = v;
                    }
                }
            }
        }
        const PairwiseMRF permuted(std::move(permuted_graph), q, std::move(nodes),
                                   std::move(tables));

        const Assignment x = exact_map(mrf);
        const Assignment y = exact_map(permuted);
        for (Vertex v = 0; v < n; ++v) CHECK(y[perm[v]] == x[v]);
    }
}

TEST_CASE("iterated conditional modes") {
    SUBCASE("a global maximizer is a fixed point") {
        const PairwiseMRF mrf = attractive_pair();
        auto rng = make_engine(5);
        IcmStats stats;
        const Assignment out = icm(mrf, {0, 0}, 10, rng, &stats);
        CHECK(out == Assignment{0, 0});
        CHECK(stats.converged);
    }
    SUBCASE("attractive pair converges to a constant assignment") {
        auto rng = make_engine(6);
        const Assignment out = icm(attractive_pair(), {0, 1}, 10, rng);
        CHECK(out[0] == out[1]);
    }
    SUBCASE("objective never decreases along the update trace") {
        auto rng = make_engine(41);
        for (int trial = 0; trial < 15; ++trial) {
            const Graph g = testing::random_connected_graph(12, 8, rng);
            const PairwiseMRF mrf = make_random_mrf(g, 3, rng(), -2.0, 2.0);
            auto icm_rng = make_engine(rng());
            IcmStats stats;
            const Assignment init = greedy_unary_init(mrf);
            const double h0 = evaluate_H(mrf, init);
            const Assignment out = icm(mrf, init, 50, icm_rng, &stats);
            CHECK(evaluate_H(mrf, out) >= h0 - 1e-12);
            double prev = h0;
            for (double h : stats.h_after_update) {
                CHECK(h >= prev - 1e-12);
                prev = h;
            }
            CHECK((stats.converged || stats.sweeps == 50));
        }
    }
}

TEST_CASE("restriction to a block") {
    auto rng = make_engine(53);
    const Graph g = testing::random_connected_graph(9, 6, rng);
    const PairwiseMRF mrf = make_random_mrf(g, 2, 3);

    SUBCASE("whole vertex set gives the identical model") {
        std::vector<Vertex> all(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) all[v] = v;
        const RestrictedMRF r = restrict_mrf(mrf, all);
        CHECK(r.mrf.node_table() == mrf.node_table());
        CHECK(r.mrf.edge_table() == mrf.edge_table());
        CHECK(r.back_map == all);
    }
    SUBCASE("single vertex keeps no edges") {
        const RestrictedMRF r = restrict_mrf(mrf, {4});
        CHECK(r.mrf.graph().vertex_count() == 1);
        CHECK(r.mrf.graph().edge_count() == 0);
        CHECK(r.mrf.node_logpot(0, 1) == mrf.node_logpot(4, 1));
    }
    SUBCASE("path block keeps the inside edge") {
        const PairwiseMRF path = make_random_mrf(generate_path(3), 2, 9);
        const RestrictedMRF r = restrict_mrf(path, {0, 1});
        CHECK(r.mrf.graph().edge_count() == 1);
        CHECK(r.mrf.edge_logpot_by_id(0, 0, 1) == path.edge_logpot_by_id(0, 0, 1));
    }
    SUBCASE("restrict-then-evaluate identity") {
        for (int trial = 0; trial < 10; ++trial) {
            const Graph h = testing::random_connected_graph(10, 7, rng);
            const PairwiseMRF model = make_random_mrf(h, 2, rng(), -1.0, 1.0);
            const auto blocks = testing::random_vertex_partition(h.vertex_count(), 3, rng);
            Assignment x(h.vertex_count());
            for (auto& s : x) s = static_cast<Symbol>(uniform_below(rng, 2));

            double total = 0.0;
            for (const auto& block : blocks) {
                const RestrictedMRF r = restrict_mrf(model, block);
                Assignment local(r.back_map.size());
                for (std::size_t i = 0; i < r.back_map.size(); ++i) local[i] = x[r.back_map[i]];
                total += evaluate_H(r.mrf, local);
            }
            for (const Edge& e : boundary_edges(h, blocks)) {
                total += model.edge_logpot(e.u, e.v, x[e.u], x[e.v]);
            }
            CHECK(total == doctest::Approx(evaluate_H(model, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("edge potential gaps") {
    const PairwiseMRF eq = attractive_pair();
    const PsiGap g1 = psi_gap(eq, {0, 1});
    CHECK(g1.upper == 1.0);
    CHECK(g1.lower == 0.0);

    const PairwiseMRF flat(Graph(2, {{0, 1}}), 2, {0, 0, 0, 0}, {0.7, 0.7, 0.7, 0.7});
    const PsiGap g2 = psi_gap(flat, {0, 1});
    CHECK(g2.upper - g2.lower == 0.0);

    const PairwiseMRF mixed(Graph(2, {{0, 1}}), 2, {0, 0, 0, 0}, {0.5, 2.5, -1.0, 0.0});
    const PsiGap g3 = psi_gap(mixed, {0, 1});
    CHECK(g3.upper == 2.5);
    CHECK(g3.lower == -1.0);

    CHECK_THROWS_AS(psi_gap(eq, {0, 5}), std::invalid_argument);
}

TEST_CASE("degree-based lower bound on the optimum") {
    SUBCASE("single edge") {
        const PairwiseMRF mrf = attractive_pair();
        CHECK(map_lower_bound(mrf) == doctest::Approx(0.5));
        CHECK(testing::oracle_exact_map(mrf).value >= 0.5);
    }
    SUBCASE("edgeless graph gives zero") {
        const PairwiseMRF mrf(Graph(3, {}), 2, {0, 1, 0, 1, 0, 1}, {});
        CHECK(map_lower_bound(mrf) == 0.0);
    }
    SUBCASE("bound never exceeds the exhaustive optimum") {
        auto rng = make_engine(61);
        for (int trial = 0; trial < 20; ++trial) {
            const Graph g = testing::random_connected_graph(9, 5, rng);
            const PairwiseMRF mrf = make_random_mrf(g, 2, rng(), 0.0, 1.0);
            REQUIRE(mrf.nonnegative());
            CHECK(map_lower_bound(mrf) <= testing::oracle_exact_map(mrf).value + 1e-12);
        }
    }
    SUBCASE("requires the nonnegativity flag") {
        const PairwiseMRF mrf(Graph(2, {{0, 1}}), 2, {0, 0, 0, 0}, {0.5, -0.1, 0.0, 0.2});
        CHECK_FALSE(mrf.nonnegative());
        CHECK_THROWS_AS(map_lower_bound(mrf), std::invalid_argument);
    }
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(PairwiseMRF(Graph(1, {}), 1, {0.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(PairwiseMRF(Graph(1, {}), 2, {0.0}, {}), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(PairwiseMRF(Graph(1, {}), 2, {0.0, inf}, {}), std::invalid_argument);
    SUBCASE("symmetric access through both orientations") {
        const PairwiseMRF mixed(Graph(2, {{0, 1}}), 2, {0, 0, 0, 0}, {0.5, 2.5, -1.0, 0.0});
        CHECK(mixed.edge_logpot(0, 1, 0, 1) == 2.5);
        CHECK(mixed.edge_logpot(1, 0, 1, 0) == 2.5);
    }
}
