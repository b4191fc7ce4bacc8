#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pm {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;  // canonical orientation u < v
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr std::int32_t kUnreachable = -1;

// Undirected simple graph, immutable after construction. Adjacency is CSR
// with sorted neighbor lists; each directed arc carries the index of its
// undirected edge in edges().
class Graph {
public:
    Graph() = default;

    // Duplicate edges (in either orientation) collapse to one; self-loops and
    // out-of-range endpoints throw.
    Graph(std::uint32_t n, std::vector<std::pair<Vertex, Vertex>> edge_pairs);

    std::uint32_t vertex_count() const { return n_; }
    std::uint64_t edge_count() const { return static_cast<std::uint64_t>(edges_.size()); }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    // Undirected edge indices aligned with neighbors(v).
    std::span<const std::uint32_t> incident_edge_ids(Vertex v) const {
        return {arc_edge_ids_.data() + offsets_[v], arc_edge_ids_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    // Edges sorted by (u, v); index in this list is the edge id.
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(Vertex u, Vertex v) const;

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> adjacency_;
    std::vector<std::uint32_t> arc_edge_ids_;
    std::vector<Edge> edges_;
};

// Edge-list text format: one "u v" pair per line, '#' starts a comment,
// optional first data line "n <count>" declares isolated trailing vertices.
Graph load_edge_list(std::string_view text);
Graph load_edge_list_file(const std::string& path);

// BFS hop distances from source; kUnreachable marks other components.
std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source);

// Vertices at distance strictly less than r from i, sorted ascending.
// Always contains i itself.
std::vector<Vertex> ball(const Graph& g, Vertex i, std::uint32_t r);

std::uint32_t max_degree(const Graph& g);

// 4-neighbor lattice, vertex (x, y) -> y * width + x.
Graph generate_grid(std::uint32_t width, std::uint32_t height);

// Points uniform in [0, box_side]^2; edge iff Euclidean distance <= connect_radius.
Graph generate_geometric(std::uint32_t n, double connect_radius, double box_side,
                         std::uint64_t seed);

Graph generate_path(std::uint32_t n);

}  // namespace pm
