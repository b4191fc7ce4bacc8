#include "pm/growth.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pm {

namespace {

// r^rho, saturating instead of overflowing. Once the power exceeds the ball
// size the ceil-quotient is 1 anyway.
std::uint64_t saturating_pow(std::uint64_t r, std::uint32_t rho) {
    std::uint64_t result = 1;
    for (std::uint32_t i = 0; i < rho; ++i) {
        if (result > std::numeric_limits<std::uint64_t>::max() / r) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result *= r;
    }
    return result;
}

}  // namespace

GrowthProfile estimate_growth(const Graph& g, std::uint32_t rho_max) {
    const std::uint32_t n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("growth estimation needs a nonempty graph");
    if (rho_max < 1) throw std::invalid_argument("rho_max must be >= 1");

    GrowthProfile profile;
    profile.per_rho_min_c.assign(rho_max, 1);

    std::vector<std::uint32_t> dist_histogram;
    for (Vertex i = 0; i < n; ++i) {
        const auto dist = bfs_distances(g, i);
        std::int32_t ecc = 0;
        for (std::int32_t d : dist) ecc = std::max(ecc, d);
        dist_histogram.assign(static_cast<std::size_t>(ecc) + 1, 0);
        for (std::int32_t d : dist) {
            if (d != kUnreachable) ++dist_histogram[static_cast<std::size_t>(d)];
        }
        // |B(i, r)| = number of vertices at distance < r; saturates at
        // r = ecc + 1, beyond which the constraint only gets weaker.
        std::uint64_t ball_size = 0;
        for (std::uint64_t r = 1; r <= static_cast<std::uint64_t>(ecc) + 1; ++r) {
            ball_size += dist_histogram[static_cast<std::size_t>(r - 1)];
            for (std::uint32_t rho = 1; rho <= rho_max; ++rho) {
                const std::uint64_t denom = saturating_pow(r, rho);
                const std::uint64_t c_needed = (ball_size + denom - 1) / denom;
                profile.per_rho_min_c[rho - 1] =
                    std::max(profile.per_rho_min_c[rho - 1], c_needed);
            }
        }
    }

    std::uint64_t best_score = std::numeric_limits<std::uint64_t>::max();
    for (std::uint32_t rho = 1; rho <= rho_max; ++rho) {
        const std::uint64_t c = profile.per_rho_min_c[rho - 1];
        const std::uint64_t weight = saturating_pow(2, rho);
        const std::uint64_t score =
            (c > std::numeric_limits<std::uint64_t>::max() / weight)
                ? std::numeric_limits<std::uint64_t>::max()
                : c * weight;
        if (score < best_score) {
            best_score = score;
            profile.chosen_rho = rho;
            profile.chosen_c = c;
        }
    }
    return profile;
}

}  // namespace pm
