#pragma once

#include <cstdint>
#include <vector>

#include "pm/graph.hpp"

namespace pm {

// Growth profile of a graph: for each candidate degree rho, the smallest
// integer C such that every ball of radius r holds at most C * r^rho
// vertices (balls use strict distance < r; unreachable vertices are outside
// every ball).
struct GrowthProfile {
    std::vector<std::uint64_t> per_rho_min_c;  // index 0 <-> rho = 1
    std::uint32_t chosen_rho = 0;
    std::uint64_t chosen_c = 0;

    std::uint64_t min_c_for(std::uint32_t rho) const { return per_rho_min_c.at(rho - 1); }
};

// Scans every (vertex, radius) pair; O(n * m). The chosen pair minimizes
// C * 2^rho, ties to the smaller rho.
GrowthProfile estimate_growth(const Graph& g, std::uint32_t rho_max);

}  // namespace pm
