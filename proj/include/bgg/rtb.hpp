#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgg/game.hpp"

namespace bgg {

// Explicit tripartite random-turn game: every base vertex v splits into
// v_1 (max), v_2 (min) and v_N (nature), nature moving to v_1 with
// probability p. Kept for export/inspection and cross-checks; the solvers
// below work on the base graph with the p-mixed operator directly.
struct RtbGame {
    GameGraph base;
    double p = 0.5;

    enum class Owner { max_player, min_player, nature };

    int n_vertices() const { return 3 * base.n(); }
    static int vertex_of(int base_vertex, Owner o) {
        return 3 * base_vertex + (o == Owner::max_player ? 0 : o == Owner::min_player ? 1 : 2);
    }
    static Owner owner(int v) {
        switch (v % 3) {
            case 0: return Owner::max_player;
            case 1: return Owner::min_player;
            default: return Owner::nature;
        }
    }
    static int base_vertex(int v) { return v / 3; }

    Rat weight(int v) const { return base.weight[static_cast<std::size_t>(base_vertex(v))]; }
    // successors of a player vertex (nature copies of base successors)
    std::vector<int> successors(int v) const;
    // (successor, probability) pairs of a nature vertex
    std::vector<std::pair<int, double>> nature_moves(int v) const;

    nlohmann::json to_json() const;
};

RtbGame build_rtb(const GameGraph& g, double p);

// Values, optimal moves, potentials and strengths of RTB^p(G).
// Potentials are normalized so min_v pot(v) = 0; pot_span = min - max <= 0.
struct RtbSolution {
    double p = 0.5;
    double mp_value = 0;
    std::vector<double> pot;
    std::vector<double> strength;
    std::vector<int> move_max; // v+
    std::vector<int> move_min; // v-
    double pot_span = 0;
    std::optional<std::vector<double>> reach_values;

    nlohmann::json to_json(const GameGraph& g) const;
};

// Value iteration for the reachability value of RTB^p from V0 = 1_targets;
// iterates are monotone nondecreasing. Throws ConvergenceError past
// max_iters.
std::vector<double> solve_reach_value(const GameGraph& g, double p, const std::vector<int>& targets,
                                      double tol, long max_iters);

// Mean-payoff solve on a strongly connected base: policy iteration over
// joint positional strategies, gain/bias evaluation per policy, argmax /
// argmin ties broken by smallest vertex index. p in {0,1} degenerates to a
// one-player problem and is still solved.
RtbSolution solve_mp(const GameGraph& g, double p, double tol);

// Exact-rational evaluation path (small games; used by tests as an oracle
// for the floating-point path).
struct RtbSolutionExact {
    Rat p;
    Rat mp_value;
    std::vector<Rat> pot;
    std::vector<Rat> strength;
    std::vector<int> move_max;
    std::vector<int> move_min;
};

RtbSolutionExact solve_mp_exact(const GameGraph& g, const Rat& p);

} // namespace bgg
