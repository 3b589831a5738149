#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "bgg/game.hpp"
#include "bgg/thresholds.hpp"

namespace bgg {

// F(tau, r) = (r + tau (1-r)) / (1 + tau): the coin bias whose random-turn
// value equals the taxman mean-payoff value. Exact rational core so the
// endpoint identities F(1, r) = 1/2 and F(0, r) = r hold exactly.
Rat bias_exact(const Rat& tau, const Rat& ratio);
double bias(const Rat& tau, double ratio);

// Value of a strongly connected mean-payoff taxman game with parameter tau
// and initial ratio r: MP(RTB^{F(tau,r)}).
double mp_value_taxman(const GameGraph& g, const Rat& tau, double ratio, double tol);

struct CurvePoint {
    Rat tau;
    double value;
};

// One solve per grid point; the grid must be nonempty and sorted.
std::vector<CurvePoint> value_curve(const GameGraph& g, double ratio, const std::vector<Rat>& tau_grid,
                                    double tol);

// CSV with header "tau,value", 12 significant digits.
std::string curve_csv(const std::vector<CurvePoint>& curve);

// Threshold ratio of a strongly connected game: the r with
// MP(RTB^{F(tau,r)}) = 0, found by bisection (value is nondecreasing in r
// for tau < 1). Returns 0 / 1 when the value is positive / negative at every
// ratio. tau = 1 is ratio-independent: degenerate carries the value's sign.
struct SccThreshold {
    bool degenerate = false; // tau = 1
    double r = 0;            // meaningful when not degenerate
    int sign = 0;            // sign of the (ratio-independent) value when degenerate
};

SccThreshold threshold_ratio_scc(const GameGraph& g, const Rat& tau, double tol);

// General games: per-BSCC critical ratios, then the reachability-style fixed
// point on the transient part with the r_i as boundary values.
struct MpThresholdResult {
    bool degenerate = false; // tau = 1
    Rat tau;
    std::vector<std::vector<int>> bscc_vertices;
    std::vector<SccThreshold> bscc_thresholds;
    ThresholdMap map; // thresholds on every vertex (r_i inside the BSCCs)

    nlohmann::json to_json(const GameGraph& g) const;
};

MpThresholdResult solve_general_mp_thresholds(const GameGraph& g, const Rat& tau, double tol);

} // namespace bgg
