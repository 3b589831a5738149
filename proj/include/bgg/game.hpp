#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bgg/rational.hpp"

namespace bgg {

// Arena for every solver and the simulator: weighted directed graph with
// optional parity indices and optional reachability targets. Immutable after
// construction; plays are infinite, so every vertex keeps at least one
// outgoing edge.
struct GameGraph {
    std::vector<std::string> ids;                  // index -> id, declaration order
    std::unordered_map<std::string, int> index;    // id -> index
    std::vector<Rat> weight;                       // w(v)
    std::vector<int> parity;                       // 0 = unlabeled
    std::vector<std::vector<int>> adj;             // sorted, deduplicated
    std::vector<std::pair<int, int>> edge_list;    // sorted, deduplicated
    std::vector<int> targets;                      // sorted; may be empty

    int n() const { return static_cast<int>(ids.size()); }
    const std::vector<int>& out(int v) const { return adj[static_cast<std::size_t>(v)]; }
    bool is_target(int v) const;
    bool parity_complete() const;
    bool has_edge(int from, int to) const;

    int vertex(const std::string& id) const; // -1 when unknown
    int require_vertex(const std::string& id) const;
};

struct VertexSpec {
    std::string id;
    Rat weight;
    std::optional<int> parity;
};

// Shared validation path for files and programmatic construction; throws
// ValidationError naming the violated invariant.
GameGraph build_game(const std::vector<VertexSpec>& vertices,
                     const std::vector<std::pair<std::string, std::string>>& edges,
                     const std::vector<std::string>& targets = {});

// Parses the JSON game document (see README for the schema). Syntax errors
// carry line/column; invariant violations name the vertex or edge.
GameGraph parse_game(const std::string& text);

GameGraph negate_weights(const GameGraph& g);

// Induced subgame on `keep` (indices into g). old_to_new maps dropped
// vertices to -1. Validates that the restriction leaves no sink.
GameGraph induced_subgame(const GameGraph& g, const std::vector<int>& keep,
                          std::vector<int>* old_to_new = nullptr);

// BFS distance to the nearest vertex of `set` following edges forward;
// -1 when unreachable.
std::vector<int> bfs_dist_to(const GameGraph& g, const std::vector<int>& set);

} // namespace bgg
