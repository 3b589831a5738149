#pragma once

#include <utility>
#include <vector>

#include "bgg/game.hpp"

namespace bgg {

// Components are listed in topological order of the condensation, so every
// condensation edge goes from a lower component index to a higher one and a
// bottom component has no outgoing condensation edges.
struct SccDecomposition {
    std::vector<std::vector<int>> components; // each sorted by vertex index
    std::vector<bool> is_bottom;
    std::vector<std::pair<int, int>> condensation_edges; // sorted, deduplicated
    std::vector<int> comp_of;

    std::size_t size() const { return components.size(); }
};

SccDecomposition scc_decompose(const GameGraph& g);

// Same algorithm on a bare adjacency structure (used for policy graphs).
SccDecomposition scc_of_adjacency(const std::vector<std::vector<int>>& adj);

bool strongly_connected(const GameGraph& g);

} // namespace bgg
