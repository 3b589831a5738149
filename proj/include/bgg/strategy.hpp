#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgg/game.hpp"

namespace bgg {

// Lower bound on the normalization constant K:
//   (tau r^2 + r(1-r)) / (tau (1-r)^2 + r(1-r)).
// Exact rational core; equals 1 at tau = 0 and at r = 1/2.
Rat min_K_exact(const Rat& tau, const Rat& ratio);
double min_K(const Rat& tau, double ratio);

struct FitResult {
    double beta = 0.5;
    double gamma = 0.5;
    bool trivial = false; // all strengths zero: every bid is zero
};

// Finds beta, gamma in (0,1) with
//   (1 + beta r s [tau+(1-tau)r])^(-1/(r s)) <= gamma
//                <= (1 - beta r s [1-(1-tau)r])^(1/(K(1-r) s))
// for every strength s, by halving beta until the binding pair (largest s on
// the left, smallest on the right) becomes feasible; gamma is the geometric
// midpoint of the final interval.
FitResult fit_beta_gamma(const std::vector<double>& strengths, const Rat& tau, double ratio,
                         double K);

// Bid-normalization scheme of the mean-payoff strategy: position x >= 1
// carries entitled ratio r_x = gamma^(x-1) + (1-gamma^(x-1)) r and bid factor
// beta_x = beta gamma^(x-1).
struct NormalizationScheme {
    double K = 1;
    double beta = 0.5;
    double gamma = 0.5;
    double ratio = 0.5; // target ratio r
    Rat tau;
    std::vector<double> strengths; // sorted distinct values, rounded
    bool trivial = false;

    double r_at(double x) const;
    double beta_at(double x) const;
    double bid_fraction(double x, double s) const; // r(1-r) beta_x s
};

// Exact solution x0 of r_{x0} = actual_ratio; requires ratio < actual <= 1.
double initial_position(const NormalizationScheme& scheme, double actual_ratio);

// Synthesized mean-payoff bidding strategy. For kind min_mp the scheme was
// fitted on the negated game and the holder plays as player 2.
struct MaxMpStrategy {
    enum class Kind { max_mp, min_mp };
    Kind kind = Kind::max_mp;
    NormalizationScheme scheme;
    std::vector<int> move_max;    // v+ of the bias-p solution
    std::vector<double> strength; // per vertex, rounded to 12 significant digits
    double p = 0.5;               // r / (r + (1-r)K)
    double nu = 0.5;              // walk step down per unit strength (= r)
    double mu = 0.5;              // walk step up per unit strength (= K(1-r))
    std::optional<double> x0;     // null: computed from the actual budgets at play start

    nlohmann::json to_json(const GameGraph& g) const;
    static MaxMpStrategy from_json(const GameGraph& g, const nlohmann::json& j);
};

// Max strategy guaranteeing payoff > MP(RTB^{F(tau,r)}) - epsilon from any
// starting ratio above r.
MaxMpStrategy synth_max_mp_strategy(const GameGraph& g, const Rat& tau, double ratio, double epsilon,
                                    double tol);

// Min-side counterpart: synthesized on the negated game with Min's ratio;
// bounds the payoff of the original game from above by -value + epsilon.
MaxMpStrategy synth_min_mp_strategy(const GameGraph& g, const Rat& tau, double ratio_min,
                                    double epsilon, double tol);

// Geometric bid schedule winning reachability with any positive budget
// (tau > 0): after i consecutive wins bid m r_geo^i and walk a shortest path;
// a lost bidding raises the ratio by at least gain_bound.
struct QualReachStrategy {
    Rat tau;
    Rat epsilon; // budget the schedule was sized for
    Rat m;       // base bid, < epsilon / r_geo^n
    long r_geo = 3;
    int n = 0; // |V| - 1
    int target = 0;
    std::vector<int> move_toward; // shortest-path move map

    // guaranteed ratio-quotient gain per lost bidding, for the ratio held at
    // the start of the current schedule cycle
    Rat gain_bound(const Rat& cycle_start_ratio) const;

    nlohmann::json to_json(const GameGraph& g) const;
    static QualReachStrategy from_json(const GameGraph& g, const nlohmann::json& j);
};

QualReachStrategy synth_qual_reach_strategy(const GameGraph& g, int target, const Rat& tau,
                                            const Rat& epsilon);

} // namespace bgg
