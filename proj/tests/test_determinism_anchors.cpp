#include <doctest.h>

#include "pm/graph.hpp"
#include "pm/partitioner.hpp"
#include "pm/rng.hpp"

using namespace pm;

// Frozen outputs for fixed seeds. These pin the stream-derivation scheme,
// the engine choice, and the carving loop: any change to them silently breaks
// reproducibility of previously published runs, so a failure here means the
// seed contract changed, not that the new values are wrong.

TEST_CASE("seed derivation is stable") {
    CHECK(derive_seed(42, Stream::Radius) == 2139811525164838579ull);
    CHECK(derive_seed(42, Stream::PivotOrder) == 9129838320742759465ull);
    CHECK(derive_seed(42, Stream::Radius) != derive_seed(43, Stream::Radius));
}

TEST_CASE("radius draws for a fixed seed are stable") {
    auto rng = make_engine(derive_seed(42, Stream::Radius));
    const std::uint32_t expected[] = {4, 4, 4, 2, 4, 1, 4, 1};
    for (std::uint32_t want : expected) CHECK(sample_radius(4, 0.3, rng) == want);
}

TEST_CASE("permutation for a fixed seed is stable") {
    auto rng = make_engine(derive_seed(42, Stream::PivotOrder));
    CHECK(random_permutation(8, rng) == std::vector<std::uint32_t>{0, 4, 7, 5, 6, 2, 3, 1});
}

TEST_CASE("carving a 4x4 grid with seed 42 is stable") {
    const Graph g = generate_grid(4, 4);
    PartitionParams params;
    params.max_radius = 2;
    params.epsilon = 0.4;
    params.seed = 42;
    const Partition part = carve_partition(g, params);
    REQUIRE(part.block_count() == 3);
    CHECK(part.blocks[0] == std::vector<Vertex>{1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 14});
    CHECK(part.blocks[1] == std::vector<Vertex>{0, 8, 12, 13});
    CHECK(part.blocks[2] == std::vector<Vertex>{15});
    CHECK(part.pivots == std::vector<Vertex>{6, 8, 15});
    CHECK(part.radii == std::vector<std::uint32_t>{2, 2, 2});
    CHECK(part.boundary.size() == 8);
    CHECK(part.cut_fraction == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("geometric generator for a fixed seed is stable") {
    const Graph g = generate_geometric(12, 0.35, 1.0, 99);
    const std::vector<Edge> expected = {{0, 3}, {0, 5}, {0, 8},  {0, 10}, {1, 2},  {1, 11},
                                        {2, 6}, {2, 11}, {3, 4}, {3, 5},  {3, 8},  {3, 10},
                                        {4, 8}, {5, 8},  {5, 10}, {6, 9}, {7, 11}, {8, 10}};
    CHECK(g.edges() == expected);
}
