#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgg/game.hpp"

namespace bgg {

enum class Objective { reachability, parity, general_mp };

std::string objective_name(Objective o);

// Per-vertex threshold ratios. residual is the max fixed-point defect of the
// returned values, not a distance to the true fixed point.
struct ThresholdMap {
    std::vector<double> th;
    Objective objective = Objective::reachability;
    Rat tau;
    double residual = 0;

    nlohmann::json to_json(const GameGraph& g) const;
};

// Local threshold update, canonical convention (tau = 1 Richman, tau = 0
// poorman):
//   (th- + th+ - (1-tau) th-) / (2 - (1-tau) (1 + th- - th+))
// The formula is stored once in the flipped parameterization (loser
// receives (1-tau') of the bid; see taxman_update_flipped) and wrapped by
// the substitution tau' = 1 - tau.
Rat taxman_update_flipped(const Rat& th_minus, const Rat& th_plus, const Rat& tau_flipped);
Rat local_taxman_update_exact(const Rat& th_minus, const Rat& th_plus, const Rat& tau);
double local_taxman_update(double th_minus, double th_plus, const Rat& tau);

// Generic monotone fixed point: pinned vertices keep their boundary value,
// interior vertices start at 1 and apply the local update to the min/max of
// their neighbors (Jacobi sweeps, nonincreasing in every coordinate).
std::pair<std::vector<double>, double> solve_threshold_fixed_point(
    const GameGraph& g, const Rat& tau, const std::vector<std::optional<double>>& pinned, double tol,
    long max_iters);

ThresholdMap solve_reachability_thresholds(const GameGraph& g, const Rat& tau, double tol,
                                           long max_iters = 1000000);

// Parity reduces to reachability: a bottom SCC is winning for player 1 iff
// its maximal parity index is odd.
ThresholdMap solve_parity_thresholds(const GameGraph& g, const Rat& tau, double tol,
                                     long max_iters = 1000000);

// Candidate extreme moves per vertex (normally the argmin/argmax of a
// numeric threshold solve).
struct MoveSelection {
    std::vector<int> plus;  // v+ (argmax)
    std::vector<int> minus; // v- (argmin)
};

MoveSelection selection_from_thresholds(const GameGraph& g, const std::vector<double>& th);

// SMT-LIB 2 (QF_NRA) encoding of the threshold constraint system for the
// query Th(v0) >= 1/2, with the move selection supplied explicitly.
std::string export_etr_constraints(const GameGraph& g, const Rat& tau, int v0,
                                   const MoveSelection& selection);

// SMT variable name used for a vertex in the export.
std::string etr_variable_name(const std::string& vertex_id);

} // namespace bgg
