#include "pm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pm/rng.hpp"

namespace pm {

Graph::Graph(std::uint32_t n, std::vector<std::pair<Vertex, Vertex>> edge_pairs) : n_(n) {
    edges_.reserve(edge_pairs.size());
    for (auto [u, v] : edge_pairs) {
        if (u == v) {
            throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        }
        if (u >= n_ || v >= n_) {
            throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                        ") out of range for n=" + std::to_string(n_));
        }
        if (u > v) std::swap(u, v);
        edges_.push_back({u, v});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::uint32_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];

    adjacency_.resize(offsets_[n_]);
    arc_edge_ids_.resize(offsets_[n_]);
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        adjacency_[fill[e.u]] = e.v;
        arc_edge_ids_[fill[e.u]++] = id;
        adjacency_[fill[e.v]] = e.u;
        arc_edge_ids_[fill[e.v]++] = id;
    }
    // Neighbor lists come out sorted because edges_ is sorted and arcs are
    // appended in (u, v) order for u-side and v-side alike.
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_ || u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph load_edge_list(std::string_view text) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::uint64_t declared_n = 0;
    bool have_declared = false;
    std::uint64_t max_id = 0;
    bool any_vertex = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool first_data_line = true;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::istringstream ss{std::string(line)};
        std::string tok_a, tok_b, tok_rest;
        if (!(ss >> tok_a)) continue;  // blank or comment-only line

        if (first_data_line && tok_a == "n") {
            if (!(ss >> tok_b) || (ss >> tok_rest)) {
                throw std::runtime_error("line " + std::to_string(line_no) + ": malformed header");
            }
            const auto res = std::from_chars(tok_b.data(), tok_b.data() + tok_b.size(), declared_n);
            if (res.ec != std::errc{} || res.ptr != tok_b.data() + tok_b.size()) {
                throw std::runtime_error("line " + std::to_string(line_no) + ": malformed header count");
            }
            have_declared = true;
            first_data_line = false;
            continue;
        }
        first_data_line = false;

        std::uint64_t u = 0, v = 0;
        auto parse = [&](const std::string& tok, std::uint64_t& out) {
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
            return res.ec == std::errc{} && res.ptr == tok.data() + tok.size();
        };
        if (!(ss >> tok_b) || (ss >> tok_rest) || !parse(tok_a, u) || !parse(tok_b, v)) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected two nonnegative integers");
        }
        if (u == v) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": self-loop at vertex " +
                                     std::to_string(u));
        }
        max_id = std::max({max_id, u, v});
        any_vertex = true;
        pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }

    std::uint64_t n = any_vertex ? max_id + 1 : 0;
    if (have_declared) n = std::max(n, declared_n);
    if (n > UINT32_MAX) throw std::runtime_error("vertex count exceeds supported range");
    return Graph(static_cast<std::uint32_t>(n), std::move(pairs));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_edge_list(buf.str());
}

std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source) {
    if (source >= g.vertex_count()) {
        throw std::invalid_argument("bfs source " + std::to_string(source) + " out of range");
    }
    std::vector<std::int32_t> dist(g.vertex_count(), kUnreachable);
    std::deque<Vertex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<Vertex> ball(const Graph& g, Vertex i, std::uint32_t r) {
    if (i >= g.vertex_count()) {
        throw std::invalid_argument("ball center " + std::to_string(i) + " out of range");
    }
    if (r == 0) throw std::invalid_argument("ball radius must be >= 1");
    // d < r means BFS depth at most r - 1.
    std::vector<Vertex> members{i};
    std::vector<std::int32_t> dist(g.vertex_count(), kUnreachable);
    dist[i] = 0;
    std::deque<Vertex> queue{i};
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        if (static_cast<std::uint32_t>(dist[v]) + 1 >= r) continue;
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                members.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::uint32_t max_degree(const Graph& g) {
    std::uint32_t best = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
    return best;
}

Graph generate_grid(std::uint32_t width, std::uint32_t height) {
    if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be >= 1");
    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(static_cast<std::size_t>(width) * height * 2);
    auto id = [width](std::uint32_t x, std::uint32_t y) { return y * width + x; };
    for (std::uint32_t y = 0; y < height; ++y) {
        for (std::uint32_t x = 0; x < width; ++x) {
            if (x + 1 < width) pairs.emplace_back(id(x, y), id(x + 1, y));
            if (y + 1 < height) pairs.emplace_back(id(x, y), id(x, y + 1));
        }
    }
    return Graph(width * height, std::move(pairs));
}

Graph generate_geometric(std::uint32_t n, double connect_radius, double box_side,
                         std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("geometric graph needs n >= 1");
    auto rng = make_engine(derive_seed(seed, Stream::Points));
    std::vector<double> xs(n), ys(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        xs[i] = uniform_unit(rng) * box_side;
        ys[i] = uniform_unit(rng) * box_side;
    }
    const double r2 = connect_radius * connect_radius;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double dx = xs[i] - xs[j];
            const double dy = ys[i] - ys[j];
            if (dx * dx + dy * dy <= r2) pairs.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(pairs));
}

Graph generate_path(std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::uint32_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    return Graph(n, std::move(pairs));
}

}  // namespace pm
